#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "sfdbp/defocus_model.hpp"
#include "sfdbp/image.hpp"

namespace sfdbp {

struct LabelEntry {
    int index = 0;
    double depth = 0.0;  ///< meters
    std::vector<BlurSpec> sigmas;  ///< one per observation
    /// relative_sigma(sigmas[i], sigmas[reference]) per observation i; Equal for the reference.
    /// RefIsSharper therefore means observation i is the sharper one and gets blurred.
    std::vector<RelativeBlur> relative;
};

struct LabelSet {
    std::vector<LabelEntry> labels;
    double depth_step = 0.0;
    int reference_index = 0;

    int size() const { return static_cast<int>(labels.size()); }
    double depth(int label) const { return labels.at(static_cast<std::size_t>(label)).depth; }
    std::vector<double> depths() const;
};

/// L uniformly spaced depths over [depth_min, depth_max] (inclusive). Throws
/// AmbiguityError when a camera's focus distance falls strictly inside the range.
LabelSet build_label_set(double depth_min, double depth_max, int count,
                         const std::vector<CameraConfig>& cams, int reference_index);

/// H x W x L data costs, stored pixel-major so each pixel's cost vector is contiguous.
class CostVolume {
public:
    CostVolume() = default;
    CostVolume(int width, int height, int labels, double fill = 0.0);
    CostVolume(int width, int height, int labels, std::vector<double> costs);

    int width() const { return width_; }
    int height() const { return height_; }
    int labels() const { return labels_; }
    std::size_t pixels() const { return static_cast<std::size_t>(width_) * height_; }

    double& at(int x, int y, int l) { return costs_[offset(x, y) + l]; }
    double at(int x, int y, int l) const { return costs_[offset(x, y) + l]; }

    std::span<const double> pixel(std::size_t p) const {
        return {costs_.data() + p * labels_, static_cast<std::size_t>(labels_)};
    }
    std::span<double> pixel(std::size_t p) {
        return {costs_.data() + p * labels_, static_cast<std::size_t>(labels_)};
    }

    GrayImage slice(int l) const;
    void set_slice(int l, const GrayImage& plane);

    const std::vector<double>& data() const { return costs_; }

    /// Throws StructuralError on any negative or non-finite entry.
    void validate() const;

private:
    std::size_t offset(int x, int y) const {
        return (static_cast<std::size_t>(y) * width_ + x) * labels_;
    }

    int width_ = 0;
    int height_ = 0;
    int labels_ = 0;
    std::vector<double> costs_;
};

/// Absolute residual after blurring whichever image is sharper under `rel`
/// (see LabelEntry::relative). Convolution uses reflect-101 borders.
GrayImage data_cost_plane(const GrayImage& g_ref, const GrayImage& g_i, const RelativeBlur& rel);

/// Per label: sum over non-reference views of data_cost_plane, then a box mean of the
/// given radius (0 keeps the pointwise residual).
CostVolume build_cost_volume(const std::vector<GrayImage>& observations, const LabelSet& labels,
                             int reference_index, int aggregation_radius);

/// Per-pixel argmin over labels, smallest index on ties.
LabelMap argmin_labels(const CostVolume& costs);

/// Debug dump: `<prefix>.raw` (little-endian float32, pixel-major) and `<prefix>.json`.
void dump_cost_volume(const std::string& prefix, const CostVolume& costs,
                      const std::vector<double>& label_depths);

}  // namespace sfdbp
