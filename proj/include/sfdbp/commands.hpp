#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "sfdbp/bp_engine.hpp"
#include "sfdbp/config.hpp"
#include "sfdbp/metrics.hpp"
#include "sfdbp/oracle.hpp"

namespace sfdbp {

struct SynthOutput {
    std::vector<std::string> observations;  ///< PFM paths, one per camera
    std::string depth;                      ///< ground-truth PFM
    std::string manifest;
};

/// Renders the configured scene and writes obs_<i>.pfm/.pgm, depth.pfm, texture.pfm and
/// manifest.json into output_dir.
SynthOutput cmd_synth(const RunConfig& cfg);

struct EstimateOutput {
    DepthMap depth;
    BpDiagnostics diagnostics;
};

/// Writes labels.pgm (16-bit), depth.pfm, preview.pgm, diagnostics.json and manifest.json;
/// with dump_cost_volume also cost_volume.raw/.json and argmin.pgm.
EstimateOutput cmd_estimate(const RunConfig& cfg);

/// Writes eval.json into output_dir.
EvalReport cmd_eval(const RunConfig& cfg);

/// Writes oracle.json into output_dir and returns the same record.
nlohmann::json cmd_oracle(const RunConfig& cfg);

TinyInstance load_tiny_instance(const std::string& path);

nlohmann::json to_json(const BpDiagnostics& diag);
nlohmann::json to_json(const EvalReport& report);

}  // namespace sfdbp
