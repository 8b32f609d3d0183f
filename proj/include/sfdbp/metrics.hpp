#pragma once

#include <cstdint>

#include "sfdbp/bp_engine.hpp"
#include "sfdbp/image.hpp"

namespace sfdbp {

/// Nonzero = pixel counts toward metrics.
using Mask = Raster<std::uint8_t>;

struct EvalReport {
    double rmse_depth = 0.0;  ///< meters
    double mae_depth = 0.0;   ///< meters
    double label_accuracy = 0.0;
    double bad_k = 0.0;  ///< fraction with |label error| > k
    int k = 1;
    std::size_t valid_pixels = 0;
};

/// Nearest label index for a metric depth (lower index on exact midpoints).
int nearest_label(const LabelSet& labels, double depth);

/// Compares the estimate's metric depth against ground truth over `mask` (all pixels when
/// null). Ground-truth labels are the nearest labels of the true depths.
EvalReport evaluate(const DepthMap& estimate, const GroundTruthDepth& truth, const Mask* mask = nullptr,
                    int k = 1);

/// Pixels whose local variance over a (2r+1)^2 window exceeds `threshold`.
Mask texture_mask(const GrayImage& image, int radius, double threshold);

/// Pixels at least `margin` away from every border.
Mask interior_mask(int width, int height, int margin);

/// Pixelwise AND.
Mask mask_and(const Mask& a, const Mask& b);

}  // namespace sfdbp
