#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "sfdbp/config.hpp"
#include "sfdbp/errors.hpp"

using namespace sfdbp;
using nlohmann::json;

namespace {

json base_doc() {
    return json::parse(R"({
        "cameras": [
            {"aperture_radius": 0.002, "lens_to_image": 0.03778, "focal_length": 0.035, "pixel_scale": 66000},
            {"aperture_radius": 0.002, "lens_to_image": 0.03806, "focal_length": 0.035, "pixel_scale": 66000}
        ],
        "labels": {"depth_min": 0.5, "depth_max": 0.7, "count": 12},
        "prior": {"truncation": 3, "lambda": 0.002},
        "bp": {"schedule": "synchronous", "max_iters": 7, "convergence_eps": 1e-4},
        "observations": ["a.pfm", "b.pfm"]
    })");
}

}  // namespace

TEST(ParseConfig, ReadsEveryField) {
    const RunConfig cfg = parse_config(base_doc());
    ASSERT_EQ(cfg.cameras.size(), 2u);
    EXPECT_DOUBLE_EQ(cfg.cameras[1].lens_to_image(), 0.03806);
    EXPECT_EQ(cfg.label_count, 12);
    EXPECT_DOUBLE_EQ(cfg.depth_min, 0.5);
    EXPECT_DOUBLE_EQ(cfg.prior.truncation, 3.0);
    EXPECT_DOUBLE_EQ(cfg.prior.lambda, 0.002);
    EXPECT_EQ(cfg.bp.schedule, Schedule::Synchronous);
    EXPECT_EQ(cfg.bp.max_iters, 7);
    EXPECT_EQ(cfg.aggregation_radius, 2);  // default
    EXPECT_EQ(cfg.output_dir, ".");
    // the synthetic scene inherits the label range unless given
    EXPECT_DOUBLE_EQ(cfg.synth.scene.depth_max, 0.7);
}

TEST(ParseConfig, DefaultsWithoutOptionalSections) {
    const RunConfig cfg = parse_config(json::object());
    EXPECT_DOUBLE_EQ(cfg.prior.lambda, 1.0);
    EXPECT_DOUBLE_EQ(cfg.prior.truncation, 2.0);
    EXPECT_EQ(cfg.bp.schedule, Schedule::RedBlack);
}

TEST(ParseConfig, RejectsInvalidValuesAsConfigErrors) {
    auto with = [](const std::string& pointer, const json& value) {
        json doc = base_doc();
        doc[json::json_pointer(pointer)] = value;
        return doc;
    };
    EXPECT_THROW(parse_config(with("/bp/schedule", "zigzag")), ConfigError);
    EXPECT_THROW(parse_config(with("/bp/max_iters", 0)), ConfigError);
    EXPECT_THROW(parse_config(with("/prior/lambda", -1.0)), ConfigError);
    EXPECT_THROW(parse_config(with("/prior/truncation", 0.0)), ConfigError);
    EXPECT_THROW(parse_config(with("/cameras/0/lens_to_image", 0.03)), ConfigError);  // V < F
    EXPECT_THROW(parse_config(with("/cameras/0/focal_length", "35mm")), ConfigError);
    EXPECT_THROW(parse_config(with("/reference_index", 2)), ConfigError);
    EXPECT_THROW(parse_config(with("/labels/count", 1)), ConfigError);
    EXPECT_THROW(parse_config(with("/observations", json::array({"only_one.pfm"}))), ConfigError);
    // a focus plane inside the label range makes depth ambiguous
    EXPECT_THROW(parse_config(with("/labels/depth_min", 0.4)), ConfigError);
    EXPECT_THROW(parse_config(json::array()), ConfigError);
}

TEST(ApplyOverrides, DottedKeysWithArrayIndices) {
    json doc = base_doc();
    apply_overrides(doc, {"prior.lambda=0.5", "cameras.1.pixel_scale=50000", "bp.schedule=red_black",
                          "output_dir=runs/x", "synth.seed=42"});
    EXPECT_DOUBLE_EQ(doc["prior"]["lambda"].get<double>(), 0.5);
    EXPECT_DOUBLE_EQ(doc["cameras"][1]["pixel_scale"].get<double>(), 50000.0);
    EXPECT_EQ(doc["bp"]["schedule"], "red_black");
    EXPECT_EQ(doc["output_dir"], "runs/x");
    EXPECT_EQ(doc["synth"]["seed"], 42);
    const RunConfig cfg = parse_config(doc);
    EXPECT_DOUBLE_EQ(cfg.prior.lambda, 0.5);
    EXPECT_EQ(cfg.synth.render.seed, 42u);
}

TEST(ApplyOverrides, MalformedOverridesAreConfigErrors) {
    json doc = base_doc();
    EXPECT_THROW(apply_overrides(doc, {"no_equals_sign"}), ConfigError);
    EXPECT_THROW(apply_overrides(doc, {"prior..lambda=1"}), ConfigError);
}

TEST(LoadConfig, MissingOrInvalidFile) {
    EXPECT_THROW(load_config("/nonexistent/cfg.json"), ConfigError);
    const auto path = std::filesystem::temp_directory_path() / "sfdbp_bad_config.json";
    std::ofstream(path) << "{ not json";
    EXPECT_THROW(load_config(path.string()), ConfigError);
    std::ofstream(path) << base_doc().dump();
    const RunConfig cfg = load_config(path.string(), {"labels.count=20"});
    EXPECT_EQ(cfg.label_count, 20);
    EXPECT_EQ(cfg.source["labels"]["count"], 20);  // manifests echo the effective document
    std::filesystem::remove(path);
}

TEST(ParseNames, SchedulesAndModels) {
    EXPECT_EQ(parse_schedule("red_black"), Schedule::RedBlack);
    EXPECT_EQ(parse_render_model("equifocal"), RenderModel::EquiFocal);
    EXPECT_EQ(parse_render_model("space_variant"), RenderModel::SpaceVariant);
    EXPECT_THROW(parse_render_model("pinhole"), ConfigError);
}
