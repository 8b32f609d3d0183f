#include <random>

#include <gtest/gtest.h>

#include "sfdbp/metrics.hpp"

using namespace sfdbp;

namespace {

LabelSet five_labels() {
    const std::vector<CameraConfig> cams = {CameraConfig(0.002, 0.03888, 0.035, 32000.0),
                                            CameraConfig(0.002, 0.03973, 0.035, 32000.0)};
    return build_label_set(0.4, 0.8, 5, cams, 0);
}

GroundTruthDepth depth_of(const LabelMap& labels, const LabelSet& set) {
    return DepthMap{labels, set}.metric();
}

}  // namespace

TEST(Evaluate, PerfectEstimate) {
    const LabelSet set = five_labels();
    LabelMap labels(6, 4);
    for (std::size_t p = 0; p < labels.size(); ++p) labels[p] = static_cast<int>(p % 5);
    const EvalReport r = evaluate({labels, set}, depth_of(labels, set));
    EXPECT_EQ(r.rmse_depth, 0.0);
    EXPECT_EQ(r.mae_depth, 0.0);
    EXPECT_EQ(r.label_accuracy, 1.0);
    EXPECT_EQ(r.bad_k, 0.0);
    EXPECT_EQ(r.valid_pixels, 24u);
}

TEST(Evaluate, OffByOneLabelEverywhere) {
    const LabelSet set = five_labels();
    LabelMap truth(5, 5);
    LabelMap estimate(5, 5);
    for (std::size_t p = 0; p < truth.size(); ++p) {
        truth[p] = static_cast<int>(p % 4);
        estimate[p] = truth[p] + 1;
    }
    const EvalReport r = evaluate({estimate, set}, depth_of(truth, set), nullptr, 0);
    EXPECT_NEAR(r.mae_depth, set.depth_step, 1e-12);
    EXPECT_NEAR(r.rmse_depth, set.depth_step, 1e-12);
    EXPECT_EQ(r.label_accuracy, 0.0);
    EXPECT_EQ(r.bad_k, 1.0);  // k = 0: every pixel is off by more than zero
    EXPECT_EQ(evaluate({estimate, set}, depth_of(truth, set), nullptr, 1).bad_k, 0.0);
}

TEST(Evaluate, MaskRestrictsPixelCount) {
    const LabelSet set = five_labels();
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> lab(0, 4);
    LabelMap labels(10, 8);
    for (int& l : labels.data()) l = lab(rng);
    Mask half(10, 8, 0);
    for (int y = 0; y < 8; ++y)
        for (int x = 0; x < 5; ++x) half(x, y) = 1;
    const EvalReport r = evaluate({labels, set}, depth_of(labels, set), &half);
    EXPECT_EQ(r.valid_pixels, 40u);
    EXPECT_EQ(r.label_accuracy, 1.0);
}

TEST(Evaluate, ContinuousTruthQuantizesToNearestLabel) {
    const LabelSet set = five_labels();
    EXPECT_EQ(nearest_label(set, 0.44), 0);
    EXPECT_EQ(nearest_label(set, 0.46), 1);
    EXPECT_EQ(nearest_label(set, 2.0), 4);
    const GroundTruthDepth truth(1, 1, 0.53);
    const EvalReport r = evaluate({LabelMap(1, 1, 1), set}, truth);
    EXPECT_NEAR(r.mae_depth, 0.03, 1e-12);
    EXPECT_EQ(r.label_accuracy, 1.0);
}

TEST(Evaluate, ShapeMismatch) {
    EXPECT_THROW(evaluate({LabelMap(2, 2, 0), five_labels()}, GroundTruthDepth(3, 2, 0.5)), StructuralError);
}

TEST(Masks, TextureAndInterior) {
    GrayImage img(20, 10, 0.5);
    for (int y = 0; y < 10; ++y)
        for (int x = 10; x < 20; ++x) img(x, y) = (x + y) % 2 ? 0.9 : 0.1;
    const Mask tex = texture_mask(img, 1, 1e-3);
    EXPECT_EQ(tex(2, 5), 0);
    EXPECT_EQ(tex(15, 5), 1);
    const Mask inner = interior_mask(20, 10, 2);
    EXPECT_EQ(inner(1, 5), 0);
    EXPECT_EQ(inner(2, 2), 1);
    EXPECT_EQ(inner(17, 7), 1);
    EXPECT_EQ(inner(18, 7), 0);
    const Mask both = mask_and(tex, inner);
    EXPECT_EQ(both(15, 5), 1);
    EXPECT_EQ(both(19, 5), 0);
}
