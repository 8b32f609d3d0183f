#include "sfdbp/commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "sfdbp/cost_volume.hpp"
#include "sfdbp/forward_imaging.hpp"
#include "sfdbp/image_io.hpp"
#include "sfdbp/scenes.hpp"

namespace sfdbp {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string join(const std::string& dir, const std::string& name) { return (fs::path(dir) / name).string(); }

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create output directory " + dir + ": " + ec.message());
}

void write_json(const std::string& path, const json& doc) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << doc.dump(2) << '\n';
    if (!out) throw std::runtime_error("failed writing " + path);
}

json manifest(const RunConfig& cfg, const std::string& command) {
    return {{"tool", "sfdbp"}, {"version", SFDBP_VERSION}, {"command", command}, {"config", cfg.source}};
}

void require_config(bool ok, const std::string& message) {
    if (!ok) throw ConfigError(message);
}

// Min-max stretched 8-bit rendering of a label map.
GrayImage preview(const LabelMap& labels) {
    GrayImage out(labels.width(), labels.height(), 0.0);
    if (labels.empty()) return out;
    const auto [mn, mx] = std::minmax_element(labels.data().begin(), labels.data().end());
    const double range = *mx > *mn ? static_cast<double>(*mx - *mn) : 1.0;
    for (std::size_t p = 0; p < labels.size(); ++p) out[p] = (labels[p] - *mn) / range;
    return out;
}

}  // namespace

json to_json(const BpDiagnostics& diag) {
    return {{"iterations", diag.iterations},
            {"final_delta", diag.final_delta},
            {"energy", diag.energy},
            {"wall_time_ms", diag.wall_time_ms}};
}

json to_json(const EvalReport& report) {
    return {{"rmse_depth", report.rmse_depth},
            {"mae_depth", report.mae_depth},
            {"label_accuracy", report.label_accuracy},
            {"bad_k", report.bad_k},
            {"k", report.k},
            {"valid_pixels", report.valid_pixels}};
}

SynthOutput cmd_synth(const RunConfig& cfg) {
    require_config(cfg.cameras.size() >= 2, "synth needs at least two cameras");
    const SceneParams& scene = cfg.synth.scene;

    GrayImage texture;
    if (cfg.synth.texture.empty()) {
        texture = make_texture(scene.width, scene.height, cfg.synth.texture_seed, cfg.synth.texture_scale);
    } else {
        texture = read_image(cfg.synth.texture);
        require_config(texture.width() == scene.width && texture.height() == scene.height,
                       "texture size does not match synth.width/height");
    }
    const GroundTruthDepth depth = make_depth_map(scene);
    const auto stack = render_observation_stack(texture, depth, cfg.cameras, cfg.synth.render);

    ensure_dir(cfg.output_dir);
    SynthOutput out;
    for (std::size_t i = 0; i < stack.size(); ++i) {
        const std::string stem = "obs_" + std::to_string(i);
        out.observations.push_back(join(cfg.output_dir, stem + ".pfm"));
        write_pfm(out.observations.back(), stack[i]);
        write_pgm(join(cfg.output_dir, stem + ".pgm"), stack[i], 65535);
    }
    out.depth = join(cfg.output_dir, "depth.pfm");
    write_pfm(out.depth, depth);
    write_pfm(join(cfg.output_dir, "texture.pfm"), texture);

    const auto [mn, mx] = std::minmax_element(depth.data().begin(), depth.data().end());
    json m = manifest(cfg, "synth");
    m["scene"] = to_string(scene.shape);
    m["depth_range"] = {*mn, *mx};
    m["observations"] = out.observations;
    m["ground_truth"] = out.depth;
    m["seeds"] = {{"texture_seed", cfg.synth.texture_seed}, {"noise_seed", cfg.synth.render.seed}};
    json cams = json::array();
    for (const CameraConfig& c : cfg.cameras) cams.push_back({{"focus_distance", c.focus_distance()}});
    m["cameras"] = cams;
    out.manifest = join(cfg.output_dir, "manifest.json");
    write_json(out.manifest, m);
    return out;
}

EstimateOutput cmd_estimate(const RunConfig& cfg) {
    require_config(cfg.observations.size() >= 2, "estimate needs at least two observations");
    require_config(cfg.cameras.size() == cfg.observations.size(), "estimate needs one camera per observation");
    require_config(cfg.depth_max > 0.0, "estimate needs labels.depth_min/depth_max");

    const LabelSet labels =
        build_label_set(cfg.depth_min, cfg.depth_max, cfg.label_count, cfg.cameras, cfg.reference_index);
    std::vector<GrayImage> observations;
    for (const std::string& path : cfg.observations) observations.push_back(read_image(path));

    const CostVolume costs = build_cost_volume(observations, labels, cfg.reference_index, cfg.aggregation_radius);
    BpResult result = run_bp(costs, cfg.prior, cfg.bp);

    ensure_dir(cfg.output_dir);
    EstimateOutput out{DepthMap{std::move(result.labels), labels}, result.diagnostics};
    write_pgm_labels(join(cfg.output_dir, "labels.pgm"), out.depth.labels);
    write_pfm(join(cfg.output_dir, "depth.pfm"), out.depth.metric());
    write_pgm(join(cfg.output_dir, "preview.pgm"), preview(out.depth.labels));
    write_json(join(cfg.output_dir, "diagnostics.json"), to_json(out.diagnostics));
    if (cfg.dump_cost_volume) {
        dump_cost_volume(join(cfg.output_dir, "cost_volume"), costs, labels.depths());
        write_pgm_labels(join(cfg.output_dir, "argmin.pgm"), argmin_labels(costs));
    }

    json m = manifest(cfg, "estimate");
    m["label_depths"] = labels.depths();
    m["depth_step"] = labels.depth_step;
    write_json(join(cfg.output_dir, "manifest.json"), m);
    return out;
}

EvalReport cmd_eval(const RunConfig& cfg) {
    require_config(!cfg.eval.estimate.empty(), "eval.estimate is required");
    require_config(!cfg.eval.ground_truth.empty(), "eval.ground_truth is required");
    require_config(cfg.cameras.size() >= 2 && cfg.depth_max > 0.0,
                   "eval needs cameras and labels to interpret the label map");

    DepthMap estimate{read_pgm_labels(cfg.eval.estimate),
                      build_label_set(cfg.depth_min, cfg.depth_max, cfg.label_count, cfg.cameras,
                                      cfg.reference_index)};
    for (int l : estimate.labels.data()) {
        if (l >= estimate.label_set.size()) throw StructuralError("estimate contains labels beyond labels.count");
    }
    const GroundTruthDepth truth = read_pfm(cfg.eval.ground_truth);
    if (!estimate.labels.same_shape(truth)) throw StructuralError("estimate and ground truth shapes differ");

    Mask mask = interior_mask(truth.width(), truth.height(), cfg.eval.border);
    if (!cfg.eval.mask.empty()) {
        const LabelMap m = read_pgm_labels(cfg.eval.mask);
        Mask file_mask(m.width(), m.height(), 0);
        for (std::size_t p = 0; p < m.size(); ++p) file_mask[p] = m[p] != 0 ? 1 : 0;
        mask = mask_and(mask, file_mask);
    }
    if (!cfg.eval.texture_image.empty()) {
        mask = mask_and(mask, texture_mask(read_image(cfg.eval.texture_image), cfg.eval.texture_radius,
                                           cfg.eval.texture_threshold));
    }

    const EvalReport report = evaluate(estimate, truth, &mask, cfg.eval.k);
    ensure_dir(cfg.output_dir);
    json doc = to_json(report);
    doc["manifest"] = manifest(cfg, "eval");
    write_json(join(cfg.output_dir, "eval.json"), doc);
    return report;
}

TinyInstance load_tiny_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open oracle instance " + path);
    const json doc = json::parse(in, nullptr, false);
    if (doc.is_discarded()) throw ConfigError("oracle instance " + path + " is not valid JSON");
    try {
        TinyInstance inst{CostVolume(doc.at("width").get<int>(), doc.at("height").get<int>(),
                                     doc.at("labels").get<int>(), doc.at("costs").get<std::vector<double>>()),
                          PriorParams{}};
        if (doc.contains("prior")) {
            inst.prior.truncation = doc["prior"].value("truncation", inst.prior.truncation);
            inst.prior.lambda = doc["prior"].value("lambda", inst.prior.lambda);
        }
        inst.validate();
        return inst;
    } catch (const json::exception& e) {
        throw ConfigError("malformed oracle instance " + path + ": " + e.what());
    } catch (const std::exception& e) {
        throw ConfigError("invalid oracle instance " + path + ": " + e.what());
    }
}

json cmd_oracle(const RunConfig& cfg) {
    require_config(!cfg.oracle_instance.empty(), "oracle.instance is required");
    const TinyInstance inst = load_tiny_instance(cfg.oracle_instance);

    const OracleSolution exact = exhaustive_map(inst);
    const BpResult bp = run_bp(inst.costs, inst.prior, cfg.bp);
    const double tolerance = 1e-9 * std::max(1.0, std::abs(exact.energy));

    json doc = {{"instance", cfg.oracle_instance},
                {"oracle_energy", exact.energy},
                {"bp_energy", bp.diagnostics.energy},
                {"gap", bp.diagnostics.energy - exact.energy},
                {"match", std::abs(bp.diagnostics.energy - exact.energy) <= tolerance},
                {"oracle_labels", exact.labels.data()},
                {"bp_labels", bp.labels.data()},
                {"bp_diagnostics", to_json(bp.diagnostics)}};
    if (inst.costs.width() == 1 || inst.costs.height() == 1)
        doc["chain_dp_energy"] = chain_dp(inst.costs, inst.prior).energy;
    ensure_dir(cfg.output_dir);
    write_json(join(cfg.output_dir, "oracle.json"), doc);
    return doc;
}

}  // namespace sfdbp
