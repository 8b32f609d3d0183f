#include "sfdbp/cost_volume.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <fstream>

#include <json.hpp>

#include "sfdbp/filter.hpp"

namespace sfdbp {

std::vector<double> LabelSet::depths() const {
    std::vector<double> out;
    out.reserve(labels.size());
    for (const LabelEntry& e : labels) out.push_back(e.depth);
    return out;
}

LabelSet build_label_set(double depth_min, double depth_max, int count,
                         const std::vector<CameraConfig>& cams, int reference_index) {
    if (!(depth_min > 0.0) || !(depth_min < depth_max) || !std::isfinite(depth_max))
        throw UsageError("label depth range must satisfy 0 < depth_min < depth_max");
    if (count < 2) throw UsageError("at least two labels are required");
    if (cams.empty()) throw UsageError("no cameras given");
    if (reference_index < 0 || reference_index >= static_cast<int>(cams.size()))
        throw UsageError("reference index out of range");
    for (std::size_t c = 0; c < cams.size(); ++c) {
        const double u = cams[c].focus_distance();
        if (u > depth_min && u < depth_max) {
            throw AmbiguityError("depth range [" + std::to_string(depth_min) + ", " +
                                 std::to_string(depth_max) + "] straddles focus distance " +
                                 std::to_string(u) + " of camera " + std::to_string(c));
        }
    }

    LabelSet set;
    set.reference_index = reference_index;
    set.depth_step = (depth_max - depth_min) / (count - 1);
    const auto ref = static_cast<std::size_t>(reference_index);
    for (int l = 0; l < count; ++l) {
        LabelEntry e;
        e.index = l;
        e.depth = l == count - 1 ? depth_max : depth_min + l * set.depth_step;
        for (const CameraConfig& cam : cams) e.sigmas.push_back(sigma_from_depth(e.depth, cam));
        for (const BlurSpec& s : e.sigmas) e.relative.push_back(relative_sigma(s, e.sigmas[ref]));
        set.labels.push_back(std::move(e));
    }
    return set;
}

CostVolume::CostVolume(int width, int height, int labels, double fill)
    : width_(width),
      height_(height),
      labels_(labels),
      costs_(static_cast<std::size_t>(width) * height * labels, fill) {
    if (width < 0 || height < 0 || labels < 1) throw StructuralError("invalid cost volume shape");
}

CostVolume::CostVolume(int width, int height, int labels, std::vector<double> costs)
    : width_(width), height_(height), labels_(labels), costs_(std::move(costs)) {
    if (width < 0 || height < 0 || labels < 1) throw StructuralError("invalid cost volume shape");
    if (costs_.size() != static_cast<std::size_t>(width) * height * labels)
        throw StructuralError("cost volume data length does not match W*H*L");
}

GrayImage CostVolume::slice(int l) const {
    GrayImage plane(width_, height_);
    for (std::size_t p = 0; p < pixels(); ++p) plane[p] = costs_[p * labels_ + l];
    return plane;
}

void CostVolume::set_slice(int l, const GrayImage& plane) {
    if (plane.width() != width_ || plane.height() != height_)
        throw StructuralError("slice dimensions do not match cost volume");
    for (std::size_t p = 0; p < pixels(); ++p) costs_[p * labels_ + l] = plane[p];
}

void CostVolume::validate() const {
    for (double c : costs_) {
        if (!std::isfinite(c) || c < 0.0)
            throw StructuralError("cost volume entries must be finite and non-negative");
    }
}

GrayImage data_cost_plane(const GrayImage& g_ref, const GrayImage& g_i, const RelativeBlur& rel) {
    if (!g_ref.same_shape(g_i)) throw StructuralError("observation sizes differ");
    const BlurSpec blur{rel.sigma_r};
    GrayImage a = g_ref;
    GrayImage b = g_i;
    switch (rel.direction) {
        case BlurDirection::RefIsSharper: b = gaussian_blur(g_i, blur); break;
        case BlurDirection::RefIsBlurrier: a = gaussian_blur(g_ref, blur); break;
        case BlurDirection::Equal: break;
    }
    GrayImage cost(g_ref.width(), g_ref.height());
    for (std::size_t p = 0; p < cost.size(); ++p) cost[p] = std::abs(a[p] - b[p]);
    return cost;
}

CostVolume build_cost_volume(const std::vector<GrayImage>& observations, const LabelSet& labels,
                             int reference_index, int aggregation_radius) {
    if (observations.size() < 2) throw UsageError("at least two observations are required");
    if (reference_index < 0 || reference_index >= static_cast<int>(observations.size()))
        throw UsageError("reference index " + std::to_string(reference_index) + " out of range");
    if (aggregation_radius < 0) throw UsageError("aggregation radius must be non-negative");
    const GrayImage& ref = observations[static_cast<std::size_t>(reference_index)];
    for (const GrayImage& g : observations) {
        if (!g.same_shape(ref)) throw StructuralError("observation sizes differ");
        require_finite(g, "observation");
    }
    for (const LabelEntry& e : labels.labels) {
        if (e.relative.size() != observations.size())
            throw UsageError("label set was built for a different number of observations");
    }

    CostVolume volume(ref.width(), ref.height(), labels.size());
    for (const LabelEntry& e : labels.labels) {
        GrayImage sum(ref.width(), ref.height(), 0.0);
        for (std::size_t i = 0; i < observations.size(); ++i) {
            if (static_cast<int>(i) == reference_index) continue;
            const GrayImage plane = data_cost_plane(ref, observations[i], e.relative[i]);
            for (std::size_t p = 0; p < sum.size(); ++p) sum[p] += plane[p];
        }
        volume.set_slice(e.index, box_mean(sum, aggregation_radius));
    }
    return volume;
}

LabelMap argmin_labels(const CostVolume& costs) {
    LabelMap labels(costs.width(), costs.height(), 0);
    for (std::size_t p = 0; p < costs.pixels(); ++p) {
        const auto c = costs.pixel(p);
        int best = 0;
        for (int l = 1; l < costs.labels(); ++l)
            if (c[static_cast<std::size_t>(l)] < c[static_cast<std::size_t>(best)]) best = l;
        labels[p] = best;
    }
    return labels;
}

void dump_cost_volume(const std::string& prefix, const CostVolume& costs,
                      const std::vector<double>& label_depths) {
    std::ofstream raw(prefix + ".raw", std::ios::binary);
    if (!raw) throw std::runtime_error("cannot open " + prefix + ".raw for writing");
    for (double c : costs.data()) {
        auto bits = std::bit_cast<std::uint32_t>(static_cast<float>(c));
        const unsigned char bytes[4] = {
            static_cast<unsigned char>(bits), static_cast<unsigned char>(bits >> 8),
            static_cast<unsigned char>(bits >> 16), static_cast<unsigned char>(bits >> 24)};
        raw.write(reinterpret_cast<const char*>(bytes), 4);
    }
    nlohmann::json sidecar = {{"width", costs.width()},
                              {"height", costs.height()},
                              {"L", costs.labels()},
                              {"layout", "pixel-major float32 little-endian"},
                              {"label_depths", label_depths}};
    std::ofstream meta(prefix + ".json");
    if (!meta) throw std::runtime_error("cannot open " + prefix + ".json for writing");
    meta << sidecar.dump(2) << '\n';
}

}  // namespace sfdbp
