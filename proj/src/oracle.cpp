#include "sfdbp/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

namespace sfdbp {

std::uint64_t TinyInstance::labeling_count() const {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < costs.pixels(); ++i) {
        count *= static_cast<std::uint64_t>(costs.labels());
        if (count > kTinyMaxLabelings) return kTinyMaxLabelings + 1;
    }
    return count;
}

void TinyInstance::validate() const {
    if (costs.pixels() == 0) throw UsageError("tiny instance has no pixels");
    if (costs.pixels() > static_cast<std::size_t>(kTinyMaxPixels))
        throw UsageError("tiny instance exceeds 16 pixels");
    if (costs.labels() > kTinyMaxLabels) throw UsageError("tiny instance exceeds 8 labels");
    if (labeling_count() > kTinyMaxLabelings)
        throw UsageError("tiny instance exceeds the 2^32 labeling enumeration bound");
    prior.validate();
    costs.validate();
}

OracleSolution exhaustive_map(const TinyInstance& instance) {
    instance.validate();
    const CostVolume& costs = instance.costs;
    const int L = costs.labels();
    const std::size_t n = costs.pixels();

    LabelMap current(costs.width(), costs.height(), 0);
    OracleSolution best{current, std::numeric_limits<double>::infinity()};
    // Odometer with the last pixel fastest, which visits labelings in lexicographic order.
    while (true) {
        const double e = labeling_energy(current, costs, instance.prior);
        if (e < best.energy) {
            best.energy = e;
            best.labels = current;
        }
        std::size_t i = n;
        while (i > 0) {
            --i;
            if (++current[i] < L) break;
            current[i] = 0;
            if (i == 0) return best;
        }
    }
}

OracleSolution chain_dp(const CostVolume& costs, const PriorParams& prior) {
    if (costs.width() != 1 && costs.height() != 1) throw UsageError("chain_dp needs a 1 x N grid");
    const std::size_t n = costs.pixels();
    if (n == 0) throw UsageError("chain_dp needs at least one node");
    prior.validate();
    const int L = costs.labels();
    const auto Ls = static_cast<std::size_t>(L);

    // best[i][l]: minimum cost of nodes 0..i with node i at label l.
    std::vector<std::vector<double>> best(n, std::vector<double>(Ls));
    std::vector<std::vector<int>> from(n, std::vector<int>(Ls, 0));
    const auto d0 = costs.pixel(0);
    std::copy(d0.begin(), d0.end(), best[0].begin());
    for (std::size_t i = 1; i < n; ++i) {
        const auto d = costs.pixel(i);
        for (int l = 0; l < L; ++l) {
            double m = std::numeric_limits<double>::infinity();
            int arg = 0;
            for (int k = 0; k < L; ++k) {
                const double c = best[i - 1][static_cast<std::size_t>(k)] + pairwise_cost(k, l, prior);
                if (c < m) {
                    m = c;
                    arg = k;
                }
            }
            best[i][static_cast<std::size_t>(l)] = m + d[static_cast<std::size_t>(l)];
            from[i][static_cast<std::size_t>(l)] = arg;
        }
    }

    LabelMap labels(costs.width(), costs.height(), 0);
    const auto& last = best[n - 1];
    int l = static_cast<int>(std::min_element(last.begin(), last.end()) - last.begin());
    for (std::size_t i = n; i-- > 0;) {
        labels[i] = l;
        l = from[i][static_cast<std::size_t>(l)];
    }
    return {labels, labeling_energy(labels, costs, prior)};
}

double edge_list_energy(const LabelMap& labels, const CostVolume& costs, const PriorParams& prior) {
    const int w = costs.width();
    const int h = costs.height();
    if (labels.width() != w || labels.height() != h)
        throw StructuralError("labeling and cost volume shapes differ");

    std::vector<std::pair<int, int>> edges;
    for (int y = 0; y < h; ++y)
        for (int x = 0; x + 1 < w; ++x) edges.emplace_back(y * w + x, y * w + x + 1);
    for (int y = 0; y + 1 < h; ++y)
        for (int x = 0; x < w; ++x) edges.emplace_back(y * w + x, (y + 1) * w + x);

    double data = 0.0;
    for (std::size_t p = 0; p < costs.pixels(); ++p)
        data += costs.pixel(p)[static_cast<std::size_t>(labels[p])];
    double smooth = 0.0;
    for (const auto& [a, b] : edges) {
        const double gap = std::abs(static_cast<double>(labels[static_cast<std::size_t>(a)]) -
                                    labels[static_cast<std::size_t>(b)]);
        smooth += gap < prior.truncation ? gap : prior.truncation;
    }
    return data + prior.lambda * smooth;
}

}  // namespace sfdbp
