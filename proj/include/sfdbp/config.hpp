#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "sfdbp/bp_engine.hpp"
#include "sfdbp/defocus_model.hpp"
#include "sfdbp/forward_imaging.hpp"
#include "sfdbp/scenes.hpp"

namespace sfdbp {

struct SynthConfig {
    SceneParams scene;
    std::string texture;  ///< PGM/PFM path; empty selects the procedural texture
    double texture_scale = 1.0;
    std::uint64_t texture_seed = 7;
    RenderOptions render;
};

struct EvalConfig {
    std::string estimate;      ///< 16-bit label PGM written by `estimate`
    std::string ground_truth;  ///< metric depth PFM
    std::string mask;          ///< optional PGM, nonzero = evaluated
    std::string texture_image;  ///< optional image for the low-texture exclusion mask
    int texture_radius = 3;
    double texture_threshold = 1e-4;
    int border = 0;  ///< pixels excluded along every border
    int k = 1;
};

/// Everything one CLI invocation needs. Built from a JSON document; see README for keys.
struct RunConfig {
    std::vector<std::string> observations;
    std::vector<CameraConfig> cameras;
    int reference_index = 0;
    double depth_min = 0.0;
    double depth_max = 0.0;
    int label_count = 16;
    PriorParams prior;
    int aggregation_radius = 2;
    BpOptions bp;
    bool dump_cost_volume = false;
    SynthConfig synth;
    EvalConfig eval;
    std::string oracle_instance;
    std::string output_dir = ".";

    nlohmann::json source;  ///< effective document after overrides, echoed into manifests
};

/// Applies `key.path=value` overrides. Values parse as JSON when possible, else as strings.
/// Numeric path segments index arrays. Throws ConfigError on malformed overrides.
void apply_overrides(nlohmann::json& doc, const std::vector<std::string>& overrides);

/// Parses and validates against every module precondition. Throws ConfigError.
RunConfig parse_config(const nlohmann::json& doc);

RunConfig load_config(const std::string& path, const std::vector<std::string>& overrides = {});

Schedule parse_schedule(const std::string& name);
RenderModel parse_render_model(const std::string& name);

}  // namespace sfdbp
