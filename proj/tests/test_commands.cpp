#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <random>
#include <string>

#include <gtest/gtest.h>

#include "sfdbp/commands.hpp"
#include "sfdbp/config.hpp"
#include "sfdbp/cost_volume.hpp"
#include "sfdbp/errors.hpp"
#include "sfdbp/image_io.hpp"

using namespace sfdbp;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const std::string kFixtures = SFDBP_FIXTURE_DIR;

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

json read_json(const fs::path& p) { return json::parse(slurp(p)); }

class Workdir : public ::testing::Test {
protected:
    void SetUp() override {
        const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
        dir_ = fs::temp_directory_path() / (std::string("sfdbp_") + info->test_suite_name() + "_" + info->name());
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }
    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    fs::path dir_;
};

json rig_doc() {
    return json::parse(R"({
        "cameras": [
            {"aperture_radius": 0.002, "lens_to_image": 0.03778, "focal_length": 0.035, "pixel_scale": 66000},
            {"aperture_radius": 0.002, "lens_to_image": 0.03806, "focal_length": 0.035, "pixel_scale": 66000}
        ],
        "labels": {"depth_min": 0.5, "depth_max": 0.7, "count": 8},
        "prior": {"truncation": 3, "lambda": 0.002},
        "bp": {"max_iters": 20}
    })");
}

json synth_doc(const std::string& out, const std::string& scene, int size = 64) {
    json doc = rig_doc();
    doc["output_dir"] = out;
    doc["synth"] = {{"scene", scene}, {"width", size}, {"height", size}, {"noise_sigma", 0.005}, {"seed", 9}};
    return doc;
}

// 10%-90% rise distance (pixels, linearly interpolated) of a rising edge profile.
double rise_width(const std::vector<double>& row, int from, int to) {
    const double lo = row[static_cast<std::size_t>(from)];
    const double hi = row[static_cast<std::size_t>(to)];
    auto crossing = [&](double level) {
        for (int x = from; x < to; ++x) {
            const double a = row[static_cast<std::size_t>(x)];
            const double b = row[static_cast<std::size_t>(x + 1)];
            if (a <= level && b > level) return x + (level - a) / (b - a);
        }
        return static_cast<double>(to);
    };
    return crossing(lo + 0.9 * (hi - lo)) - crossing(lo + 0.1 * (hi - lo));
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(SFDBP_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

using CmdSynth = Workdir;
using CmdEstimate = Workdir;
using CmdEval = Workdir;
using CmdOracle = Workdir;
using Cli = Workdir;

TEST_F(CmdSynth, SphereCapManifestRecordsConfiguredDepthRange) {
    const auto out = cmd_synth(parse_config(synth_doc(path("s"), "sphere_cap")));
    const json m = read_json(out.manifest);
    EXPECT_EQ(m["scene"], "sphere_cap");
    EXPECT_DOUBLE_EQ(m["depth_range"][0].get<double>(), 0.5);
    EXPECT_DOUBLE_EQ(m["depth_range"][1].get<double>(), 0.7);
    EXPECT_EQ(m["seeds"]["noise_seed"], 9);
    EXPECT_EQ(m["config"]["synth"]["scene"], "sphere_cap");
    EXPECT_EQ(m["version"], SFDBP_VERSION);
    ASSERT_EQ(out.observations.size(), 2u);
    for (const char* f : {"obs_0.pfm", "obs_0.pgm", "obs_1.pfm", "obs_1.pgm", "depth.pfm", "texture.pfm"})
        EXPECT_TRUE(fs::exists(dir_ / "s" / f)) << f;
    const auto depth = read_pfm(out.depth);
    EXPECT_EQ(depth.width(), 64);
}

TEST_F(CmdSynth, SameSeedGivesIdenticalFiles) {
    cmd_synth(parse_config(synth_doc(path("a"), "sinusoid")));
    cmd_synth(parse_config(synth_doc(path("b"), "sinusoid")));
    json other = synth_doc(path("c"), "sinusoid");
    other["synth"]["seed"] = 10;
    cmd_synth(parse_config(other));
    for (const char* f : {"obs_0.pfm", "obs_1.pfm", "obs_1.pgm", "depth.pfm", "texture.pfm"})
        EXPECT_EQ(slurp(dir_ / "a" / f), slurp(dir_ / "b" / f)) << f;
    EXPECT_NE(slurp(dir_ / "a" / "obs_1.pfm"), slurp(dir_ / "c" / "obs_1.pfm"));
    EXPECT_EQ(slurp(dir_ / "a" / "depth.pfm"), slurp(dir_ / "c" / "depth.pfm"));
}

TEST_F(CmdSynth, StepEdgeBlursTheFarSideMore) {
    // Vertical bars every 16 px; the step at x = 64 separates a near (sharp in the reference
    // view) half from a far (blurred) half.
    constexpr int n = 128;
    GrayImage bars(n, n, 0.0);
    for (int y = 0; y < n; ++y)
        for (int x = 0; x < n; ++x) bars(x, y) = (x / 16) % 2 == 0 ? 0.2 : 0.8;
    write_pfm(path("bars.pfm"), bars);
    json doc = synth_doc(path("s"), "step_edge", n);
    doc["synth"]["texture"] = path("bars.pfm");
    doc["synth"]["noise_sigma"] = 0.0;
    const auto out = cmd_synth(parse_config(doc));
    const GrayImage ref = read_pfm(out.observations[0]);
    std::vector<double> row(n);
    for (int x = 0; x < n; ++x) row[static_cast<std::size_t>(x)] = ref(x, n / 2);
    // rising edges at x = 16 (near side) and x = 112 (far side)
    const double near_width = rise_width(row, 9, 23);
    const double far_width = rise_width(row, 101, 123);
    EXPECT_GT(far_width - near_width, 1.0) << near_width << " vs " << far_width;
}

TEST_F(CmdSynth, RejectsSizeMismatchedTexture) {
    write_pfm(path("small.pfm"), GrayImage(8, 8, 0.5));
    json doc = synth_doc(path("s"), "sphere_cap");
    doc["synth"]["texture"] = path("small.pfm");
    EXPECT_THROW(cmd_synth(parse_config(doc)), ConfigError);
}

TEST_F(CmdEstimate, ZeroLambdaEqualsArgminDumpAndRerunIsIdentical) {
    cmd_synth(parse_config(synth_doc(path("s"), "sphere_cap")));
    json doc = rig_doc();
    doc["observations"] = {path("s/obs_0.pfm"), path("s/obs_1.pfm")};
    doc["output_dir"] = path("e");
    doc["prior"]["lambda"] = 0.0;
    doc["dump_cost_volume"] = true;
    const RunConfig cfg = parse_config(doc);
    const auto out = cmd_estimate(cfg);
    EXPECT_EQ(slurp(dir_ / "e" / "labels.pgm"), slurp(dir_ / "e" / "argmin.pgm"));
    EXPECT_EQ(read_pgm_labels(path("e/labels.pgm")), out.depth.labels);

    const json sidecar = read_json(dir_ / "e" / "cost_volume.json");
    EXPECT_EQ(sidecar["L"], 8);
    EXPECT_EQ(fs::file_size(dir_ / "e" / "cost_volume.raw"), 64u * 64u * 8u * sizeof(float));

    const json manifest = read_json(dir_ / "e" / "manifest.json");
    EXPECT_EQ(manifest["label_depths"].size(), 8u);
    EXPECT_EQ(manifest["config"]["prior"]["lambda"], 0.0);

    const std::string labels = slurp(dir_ / "e" / "labels.pgm");
    const std::string depth = slurp(dir_ / "e" / "depth.pfm");
    json diag = read_json(dir_ / "e" / "diagnostics.json");
    cmd_estimate(cfg);
    EXPECT_EQ(slurp(dir_ / "e" / "labels.pgm"), labels);
    EXPECT_EQ(slurp(dir_ / "e" / "depth.pfm"), depth);
    json again = read_json(dir_ / "e" / "diagnostics.json");
    diag.erase("wall_time_ms");
    again.erase("wall_time_ms");
    EXPECT_EQ(diag, again);
}

TEST_F(CmdEstimate, RequiresObservationsAndMatchingCameras) {
    json doc = rig_doc();
    EXPECT_THROW(cmd_estimate(parse_config(doc)), ConfigError);
    doc["observations"] = {path("missing_0.pfm"), path("missing_1.pfm")};
    EXPECT_THROW(cmd_estimate(parse_config(doc)), std::runtime_error);
}

TEST_F(CmdEval, PerfectOffByOneAndMaskedEstimates) {
    json doc = rig_doc();
    const RunConfig base = parse_config(doc);
    const LabelSet set = build_label_set(0.5, 0.7, 8, base.cameras, 0);
    constexpr int w = 20;
    constexpr int h = 10;
    std::mt19937_64 rng(4);
    std::uniform_int_distribution<int> pick(0, 6);
    LabelMap labels(w, h, 0);
    for (int& l : labels.data()) l = pick(rng);
    GroundTruthDepth truth(w, h, 0.0);
    LabelMap shifted(w, h, 0);
    for (std::size_t p = 0; p < labels.size(); ++p) {
        truth[p] = set.depth(labels[p]);
        shifted[p] = labels[p] + 1;
    }
    write_pgm_labels(path("est.pgm"), labels);
    write_pgm_labels(path("shifted.pgm"), shifted);
    write_pfm(path("truth.pfm"), truth);
    LabelMap half(w, h, 0);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w / 2; ++x) half(x, y) = 1;
    write_pgm_labels(path("half.pgm"), half);

    doc["output_dir"] = path("ev");
    doc["eval"] = {{"estimate", path("est.pgm")}, {"ground_truth", path("truth.pfm")}};
    EvalReport r = cmd_eval(parse_config(doc));
    // ground truth passes through float32 PFM storage
    constexpr double kFloatTol = 1e-7;
    EXPECT_LT(r.rmse_depth, kFloatTol);
    EXPECT_EQ(r.label_accuracy, 1.0);
    EXPECT_EQ(r.valid_pixels, static_cast<std::size_t>(w * h));
    EXPECT_TRUE(fs::exists(dir_ / "ev" / "eval.json"));

    doc["eval"]["estimate"] = path("shifted.pgm");
    r = cmd_eval(parse_config(doc));
    EXPECT_NEAR(r.mae_depth, set.depth_step, kFloatTol);
    EXPECT_EQ(r.label_accuracy, 0.0);

    doc["eval"]["estimate"] = path("est.pgm");
    doc["eval"]["mask"] = path("half.pgm");
    r = cmd_eval(parse_config(doc));
    EXPECT_EQ(r.valid_pixels, static_cast<std::size_t>(w * h / 2));
    EXPECT_EQ(read_json(dir_ / "ev" / "eval.json")["valid_pixels"], w * h / 2);

    write_pfm(path("wrong.pfm"), GroundTruthDepth(w + 1, h, 0.6));
    doc["eval"]["ground_truth"] = path("wrong.pfm");
    EXPECT_THROW(cmd_eval(parse_config(doc)), StructuralError);
}

TEST_F(CmdOracle, ShippedFixtures) {
    auto run = [&](const std::string& name) {
        json doc = {{"oracle", {{"instance", kFixtures + "/" + name}}}, {"output_dir", path(name)}};
        doc["bp"] = {{"max_iters", 100}};
        return cmd_oracle(parse_config(doc));
    };
    const json grid = run("tiny_grid.json");
    EXPECT_TRUE(grid["oracle_energy"].is_number());
    EXPECT_TRUE(grid["bp_energy"].is_number());
    EXPECT_TRUE(grid["match"].is_boolean());
    EXPECT_GE(grid["gap"].get<double>(), -1e-12);
    EXPECT_FALSE(grid.contains("chain_dp_energy"));
    EXPECT_TRUE(fs::exists(dir_ / "tiny_grid.json" / "oracle.json"));

    const json chain = run("chain.json");
    EXPECT_TRUE(chain["match"].get<bool>());
    EXPECT_DOUBLE_EQ(chain["chain_dp_energy"].get<double>(), chain["oracle_energy"].get<double>());

    EXPECT_TRUE(run("lambda0.json")["match"].get<bool>());
}

TEST_F(CmdOracle, RejectsMissingOrOversizedInstances) {
    EXPECT_THROW(cmd_oracle(parse_config(json::object())), ConfigError);
    const json big = {{"width", 5}, {"height", 4}, {"labels", 2}, {"costs", std::vector<double>(40, 0.0)}};
    std::ofstream(path("big.json")) << big.dump();
    EXPECT_THROW(load_tiny_instance(path("big.json")), ConfigError);
}

TEST_F(Cli, ExitCodes) {
    const std::string oracle_cfg = path("oracle.json");
    std::ofstream(oracle_cfg) << json{{"oracle", {{"instance", kFixtures + "/chain.json"}}},
                                      {"output_dir", path("o")}}.dump();
    EXPECT_EQ(run_cli("oracle --config " + oracle_cfg), 0);
    EXPECT_TRUE(fs::exists(dir_ / "o" / "oracle.json"));

    EXPECT_EQ(run_cli(""), 2);                                                    // no subcommand
    EXPECT_EQ(run_cli("estimate"), 2);                                            // --config missing
    EXPECT_EQ(run_cli("estimate --config " + path("absent.json")), 2);            // unreadable config
    EXPECT_EQ(run_cli("oracle --config " + oracle_cfg + " --override bp.max_iters=0"), 2);
    EXPECT_EQ(run_cli("oracle --config " + oracle_cfg + " --override garbage"), 2);

    // valid config, missing input files: runtime failure
    json est = rig_doc();
    est["observations"] = {path("none_0.pfm"), path("none_1.pfm")};
    est["output_dir"] = path("e");
    std::ofstream(path("est.json")) << est.dump();
    EXPECT_EQ(run_cli("estimate --config " + path("est.json")), 3);
}
