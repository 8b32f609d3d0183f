#include "sfdbp/config.hpp"

#include <fstream>

#include "sfdbp/cost_volume.hpp"

namespace sfdbp {

using nlohmann::json;

namespace {

template <typename T>
T get_or(const json& obj, const char* key, T fallback) {
    if (!obj.is_object() || !obj.contains(key) || obj.at(key).is_null()) return fallback;
    return obj.at(key).get<T>();
}

const json& section(const json& doc, const char* key) {
    static const json empty = json::object();
    if (!doc.contains(key)) return empty;
    const json& s = doc.at(key);
    if (!s.is_object()) throw ConfigError(std::string("'") + key + "' must be an object");
    return s;
}

CameraConfig parse_camera(const json& c) {
    return CameraConfig(c.at("aperture_radius").get<double>(), c.at("lens_to_image").get<double>(),
                        c.at("focal_length").get<double>(), c.at("pixel_scale").get<double>());
}

}  // namespace

Schedule parse_schedule(const std::string& name) {
    if (name == "red_black" || name == "redblack") return Schedule::RedBlack;
    if (name == "synchronous") return Schedule::Synchronous;
    throw ConfigError("unknown BP schedule '" + name + "' (red_black, synchronous)");
}

RenderModel parse_render_model(const std::string& name) {
    if (name == "space_variant") return RenderModel::SpaceVariant;
    if (name == "equifocal") return RenderModel::EquiFocal;
    throw ConfigError("unknown render model '" + name + "' (space_variant, equifocal)");
}

void apply_overrides(json& doc, const std::vector<std::string>& overrides) {
    for (const std::string& item : overrides) {
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0)
            throw ConfigError("override '" + item + "' is not of the form key=value");
        const std::string key = item.substr(0, eq);
        const std::string text = item.substr(eq + 1);
        std::string pointer;
        std::size_t start = 0;
        while (start <= key.size()) {
            const auto dot = key.find('.', start);
            const std::string part = key.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
            if (part.empty()) throw ConfigError("override key '" + key + "' has an empty segment");
            pointer += "/" + part;
            if (dot == std::string::npos) break;
            start = dot + 1;
        }
        json value = json::parse(text, nullptr, false);
        if (value.is_discarded()) value = text;
        try {
            doc[json::json_pointer(pointer)] = value;
        } catch (const json::exception& e) {
            throw ConfigError("cannot apply override '" + item + "': " + e.what());
        }
    }
}

RunConfig parse_config(const json& doc) {
    if (!doc.is_object()) throw ConfigError("config must be a JSON object");
    RunConfig cfg;
    cfg.source = doc;
    try {
        cfg.output_dir = get_or<std::string>(doc, "output_dir", ".");
        cfg.observations = get_or<std::vector<std::string>>(doc, "observations", {});
        if (doc.contains("cameras")) {
            for (const json& c : doc.at("cameras")) cfg.cameras.push_back(parse_camera(c));
        }
        cfg.reference_index = get_or<int>(doc, "reference_index", 0);
        cfg.aggregation_radius = get_or<int>(doc, "aggregation_radius", 2);
        cfg.dump_cost_volume = get_or<bool>(doc, "dump_cost_volume", false);

        const json& labels = section(doc, "labels");
        cfg.depth_min = get_or<double>(labels, "depth_min", 0.0);
        cfg.depth_max = get_or<double>(labels, "depth_max", 0.0);
        cfg.label_count = get_or<int>(labels, "count", 16);

        const json& prior = section(doc, "prior");
        cfg.prior.truncation = get_or<double>(prior, "truncation", cfg.prior.truncation);
        cfg.prior.lambda = get_or<double>(prior, "lambda", cfg.prior.lambda);

        const json& bp = section(doc, "bp");
        cfg.bp.schedule = parse_schedule(get_or<std::string>(bp, "schedule", "red_black"));
        cfg.bp.max_iters = get_or<int>(bp, "max_iters", cfg.bp.max_iters);
        cfg.bp.convergence_eps = get_or<double>(bp, "convergence_eps", cfg.bp.convergence_eps);

        const json& synth = section(doc, "synth");
        SceneParams& scene = cfg.synth.scene;
        scene.shape = parse_scene_shape(get_or<std::string>(synth, "scene", "sphere_cap"));
        scene.width = get_or<int>(synth, "width", scene.width);
        scene.height = get_or<int>(synth, "height", scene.height);
        scene.depth_min = get_or<double>(synth, "depth_min", cfg.depth_min);
        scene.depth_max = get_or<double>(synth, "depth_max", cfg.depth_max);
        scene.cap_radius = get_or<double>(synth, "cap_radius", scene.cap_radius);
        scene.edge_position = get_or<double>(synth, "edge_position", scene.edge_position);
        scene.period = get_or<double>(synth, "period", scene.period);
        cfg.synth.texture = get_or<std::string>(synth, "texture", "");
        cfg.synth.texture_scale = get_or<double>(synth, "texture_scale", cfg.synth.texture_scale);
        cfg.synth.texture_seed = get_or<std::uint64_t>(synth, "texture_seed", cfg.synth.texture_seed);
        cfg.synth.render.model = parse_render_model(get_or<std::string>(synth, "model", "space_variant"));
        cfg.synth.render.noise_sigma = get_or<double>(synth, "noise_sigma", 0.0);
        cfg.synth.render.seed = get_or<std::uint64_t>(synth, "seed", 0);

        const json& eval = section(doc, "eval");
        cfg.eval.estimate = get_or<std::string>(eval, "estimate", "");
        cfg.eval.ground_truth = get_or<std::string>(eval, "ground_truth", "");
        cfg.eval.mask = get_or<std::string>(eval, "mask", "");
        cfg.eval.texture_image = get_or<std::string>(eval, "texture_image", "");
        cfg.eval.texture_radius = get_or<int>(eval, "texture_radius", cfg.eval.texture_radius);
        cfg.eval.texture_threshold = get_or<double>(eval, "texture_threshold", cfg.eval.texture_threshold);
        cfg.eval.border = get_or<int>(eval, "border", cfg.eval.border);
        cfg.eval.k = get_or<int>(eval, "k", cfg.eval.k);

        cfg.oracle_instance = get_or<std::string>(section(doc, "oracle"), "instance", "");
    } catch (const ConfigError&) {
        throw;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed config: ") + e.what());
    } catch (const std::exception& e) {
        throw ConfigError(std::string("invalid config: ") + e.what());
    }

    // Module preconditions, checked before any compute starts.
    try {
        cfg.prior.validate();
        if (cfg.bp.max_iters < 1) throw UsageError("bp.max_iters must be at least 1");
        if (cfg.aggregation_radius < 0) throw UsageError("aggregation_radius must be non-negative");
        if (cfg.synth.render.noise_sigma < 0.0) throw UsageError("synth.noise_sigma must be non-negative");
        if (cfg.eval.k < 0) throw UsageError("eval.k must be non-negative");
        if (!cfg.cameras.empty()) {
            if (cfg.cameras.size() < 2) throw UsageError("at least two cameras are required");
            if (cfg.reference_index < 0 || cfg.reference_index >= static_cast<int>(cfg.cameras.size()))
                throw UsageError("reference_index out of range");
            if (!cfg.observations.empty() && cfg.observations.size() != cfg.cameras.size())
                throw UsageError("observations and cameras must have the same length");
            if (cfg.depth_max > 0.0)
                build_label_set(cfg.depth_min, cfg.depth_max, cfg.label_count, cfg.cameras, cfg.reference_index);
        }
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }
    return cfg;
}

RunConfig load_config(const std::string& path, const std::vector<std::string>& overrides) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    json doc = json::parse(in, nullptr, false, true);
    if (doc.is_discarded()) throw ConfigError("config file " + path + " is not valid JSON");
    apply_overrides(doc, overrides);
    return parse_config(doc);
}

}  // namespace sfdbp
