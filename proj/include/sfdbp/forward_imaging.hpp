#pragma once

#include <cstdint>
#include <vector>

#include "sfdbp/defocus_model.hpp"
#include "sfdbp/image.hpp"

namespace sfdbp {

/// Space-variant defocus. Every source pixel spreads its intensity through the Gaussian
/// PSF of its own depth (renormalized to the in-image part of its support); each output
/// pixel is the weighted average of the overlapping spread contributions.
GrayImage space_variant_blur(const GrayImage& focused, const GroundTruthDepth& depth,
                             const CameraConfig& cam);

/// Equi-focal (gather) rendering: depth is treated as locally constant around each output
/// pixel, i.e. convolution with the PSF of depth(x, y). Reflect-101 borders.
GrayImage equifocal_blur(const GrayImage& focused, const GroundTruthDepth& depth,
                         const CameraConfig& cam);

enum class RenderModel { SpaceVariant, EquiFocal };

struct RenderOptions {
    RenderModel model = RenderModel::SpaceVariant;
    double noise_sigma = 0.0;  ///< additive zero-mean Gaussian noise, clamped to [0, 1] after
    std::uint64_t seed = 0;
};

/// One render per camera. Requires at least two cameras.
std::vector<GrayImage> render_observation_stack(const GrayImage& focused,
                                                const GroundTruthDepth& depth,
                                                const std::vector<CameraConfig>& cams,
                                                const RenderOptions& options = {});

}  // namespace sfdbp
