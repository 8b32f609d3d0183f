#pragma once

#include <cstdint>
#include <string>

#include "sfdbp/image.hpp"

namespace sfdbp {

enum class SceneShape { SlantedPlane, SphereCap, StepEdge, Sinusoid };

/// Parses "slanted_plane", "sphere_cap", "step_edge" or "sinusoid".
SceneShape parse_scene_shape(const std::string& name);
std::string to_string(SceneShape shape);

struct SceneParams {
    SceneShape shape = SceneShape::SphereCap;
    int width = 128;
    int height = 128;
    double depth_min = 0.4;
    double depth_max = 0.8;
    /// sphere cap: base radius as a fraction of min(width, height) / 2.
    double cap_radius = 0.8;
    /// step edge: column of the step as a fraction of the width. Left side is depth_min.
    double edge_position = 0.5;
    /// sinusoid: period in pixels along x.
    double period = 64.0;
};

/// Analytic ground-truth depth within [depth_min, depth_max]. Plane, cap and step attain both
/// ends exactly; the sinusoid does up to sampling.
/// The sphere cap bulges toward the camera: depth_min at the center, depth_max off the cap.
GroundTruthDepth make_depth_map(const SceneParams& params);

/// Seeded random texture: white noise smoothed by a Gaussian of `scale` pixels and
/// stretched to [0.1, 0.9].
GrayImage make_texture(int width, int height, std::uint64_t seed, double scale = 1.0);

}  // namespace sfdbp
