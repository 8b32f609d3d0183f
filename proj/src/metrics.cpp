#include "sfdbp/metrics.hpp"

#include <cmath>
#include <cstdlib>

#include "sfdbp/filter.hpp"

namespace sfdbp {

int nearest_label(const LabelSet& labels, double depth) {
    int best = 0;
    double best_gap = std::abs(labels.depth(0) - depth);
    for (int l = 1; l < labels.size(); ++l) {
        const double gap = std::abs(labels.depth(l) - depth);
        if (gap < best_gap) {
            best = l;
            best_gap = gap;
        }
    }
    return best;
}

EvalReport evaluate(const DepthMap& estimate, const GroundTruthDepth& truth, const Mask* mask, int k) {
    if (!estimate.labels.same_shape(truth)) throw StructuralError("estimate and ground truth shapes differ");
    if (mask && !mask->same_shape(truth)) throw StructuralError("mask and ground truth shapes differ");
    if (k < 0) throw UsageError("bad-pixel threshold k must be non-negative");

    EvalReport report;
    report.k = k;
    double se = 0.0;
    double ae = 0.0;
    std::size_t exact = 0;
    std::size_t bad = 0;
    for (std::size_t p = 0; p < truth.size(); ++p) {
        if (mask && (*mask)[p] == 0) continue;
        const int label = estimate.labels[p];
        const double err = estimate.label_set.depth(label) - truth[p];
        se += err * err;
        ae += std::abs(err);
        const int label_err = std::abs(label - nearest_label(estimate.label_set, truth[p]));
        if (label_err == 0) ++exact;
        if (label_err > k) ++bad;
        ++report.valid_pixels;
    }
    if (report.valid_pixels == 0) return report;
    const auto n = static_cast<double>(report.valid_pixels);
    report.rmse_depth = std::sqrt(se / n);
    report.mae_depth = ae / n;
    report.label_accuracy = static_cast<double>(exact) / n;
    report.bad_k = static_cast<double>(bad) / n;
    return report;
}

Mask texture_mask(const GrayImage& image, int radius, double threshold) {
    GrayImage sq(image.width(), image.height());
    for (std::size_t p = 0; p < image.size(); ++p) sq[p] = image[p] * image[p];
    const GrayImage mean = box_mean(image, radius);
    const GrayImage mean_sq = box_mean(sq, radius);
    Mask mask(image.width(), image.height(), 0);
    for (std::size_t p = 0; p < image.size(); ++p)
        mask[p] = mean_sq[p] - mean[p] * mean[p] > threshold ? 1 : 0;
    return mask;
}

Mask interior_mask(int width, int height, int margin) {
    Mask mask(width, height, 0);
    for (int y = margin; y < height - margin; ++y)
        for (int x = margin; x < width - margin; ++x) mask(x, y) = 1;
    return mask;
}

Mask mask_and(const Mask& a, const Mask& b) {
    if (!a.same_shape(b)) throw StructuralError("mask shapes differ");
    Mask out(a.width(), a.height(), 0);
    for (std::size_t p = 0; p < a.size(); ++p) out[p] = (a[p] && b[p]) ? 1 : 0;
    return out;
}

}  // namespace sfdbp
