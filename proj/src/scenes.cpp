#include "sfdbp/scenes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "sfdbp/filter.hpp"

namespace sfdbp {

SceneShape parse_scene_shape(const std::string& name) {
    if (name == "slanted_plane") return SceneShape::SlantedPlane;
    if (name == "sphere_cap") return SceneShape::SphereCap;
    if (name == "step_edge") return SceneShape::StepEdge;
    if (name == "sinusoid") return SceneShape::Sinusoid;
    throw UsageError("unknown scene '" + name + "' (slanted_plane, sphere_cap, step_edge, sinusoid)");
}

std::string to_string(SceneShape shape) {
    switch (shape) {
        case SceneShape::SlantedPlane: return "slanted_plane";
        case SceneShape::SphereCap: return "sphere_cap";
        case SceneShape::StepEdge: return "step_edge";
        case SceneShape::Sinusoid: return "sinusoid";
    }
    return "unknown";
}

GroundTruthDepth make_depth_map(const SceneParams& params) {
    const int w = params.width;
    const int h = params.height;
    if (w < 2 || h < 2) throw UsageError("scene must be at least 2x2 pixels");
    if (!(params.depth_min > 0.0) || !(params.depth_min < params.depth_max))
        throw UsageError("scene depth range must satisfy 0 < depth_min < depth_max");
    const double lo = params.depth_min;
    const double hi = params.depth_max;
    const double span = hi - lo;
    GroundTruthDepth depth(w, h, hi);

    switch (params.shape) {
        case SceneShape::SlantedPlane:
            for (int y = 0; y < h; ++y)
                for (int x = 0; x < w; ++x) depth(x, y) = lo + span * x / (w - 1);
            break;
        case SceneShape::SphereCap: {
            if (!(params.cap_radius > 0.0)) throw UsageError("cap_radius must be positive");
            const double cx = 0.5 * (w - 1);
            const double cy = 0.5 * (h - 1);
            const double base = params.cap_radius * 0.5 * std::min(w, h);
            // Sphere 1.25x wider than the cap base keeps the rim slope finite.
            const double sphere = 1.25 * base;
            const double rim = std::sqrt(sphere * sphere - base * base);
            Raster<double> height(w, h, 0.0);
            std::size_t top = 0;
            for (int y = 0; y < h; ++y) {
                for (int x = 0; x < w; ++x) {
                    const double r2 = (x - cx) * (x - cx) + (y - cy) * (y - cy);
                    if (r2 < base * base) height(x, y) = std::sqrt(sphere * sphere - r2) - rim;
                }
            }
            for (std::size_t p = 1; p < height.size(); ++p)
                if (height[p] > height[top]) top = p;
            // Normalize by the highest sampled point so the range is attained exactly.
            for (std::size_t p = 0; p < height.size(); ++p)
                if (height[p] > 0.0) depth[p] = hi - span * height[p] / height[top];
            depth[top] = lo;
            break;
        }
        case SceneShape::StepEdge: {
            const int edge = static_cast<int>(std::lround(params.edge_position * w));
            for (int y = 0; y < h; ++y)
                for (int x = 0; x < w; ++x) depth(x, y) = x < edge ? lo : hi;
            break;
        }
        case SceneShape::Sinusoid: {
            if (!(params.period > 0.0)) throw UsageError("period must be positive");
            for (int y = 0; y < h; ++y) {
                for (int x = 0; x < w; ++x) {
                    const double s = std::sin(2.0 * std::numbers::pi * x / params.period);
                    depth(x, y) = std::clamp(lo + 0.5 * span * (1.0 + s), lo, hi);
                }
            }
            break;
        }
    }
    return depth;
}

GrayImage make_texture(int width, int height, std::uint64_t seed, double scale) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    GrayImage noise(width, height);
    for (double& v : noise.data()) v = uniform(rng);
    GrayImage smooth = gaussian_blur(noise, BlurSpec{scale});
    const auto [mn, mx] = std::minmax_element(smooth.data().begin(), smooth.data().end());
    const double lo = *mn;
    const double range = *mx - *mn > 0.0 ? *mx - *mn : 1.0;
    for (double& v : smooth.data()) v = 0.1 + 0.8 * (v - lo) / range;
    return smooth;
}

}  // namespace sfdbp
