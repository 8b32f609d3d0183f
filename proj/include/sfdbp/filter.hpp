#pragma once

#include <span>

#include "sfdbp/defocus_model.hpp"
#include "sfdbp/image.hpp"

namespace sfdbp {

/// Reflect-101 border index (…2 1 | 0 1 2 … n-1 | n-2 …). Valid for any i when n >= 1.
int reflect101(int i, int n);

/// Separable convolution with a symmetric 1D kernel (odd length) along both axes,
/// reflect-101 borders.
GrayImage convolve_separable(const GrayImage& image, std::span<const double> taps);

/// Gather convolution with gaussian_kernel(spec).
GrayImage gaussian_blur(const GrayImage& image, BlurSpec spec);

/// Mean over a (2r+1)^2 window, reflect-101 borders. Radius 0 returns a copy.
GrayImage box_mean(const GrayImage& image, int radius);

}  // namespace sfdbp
