#pragma once

#include <cstdint>

#include "sfdbp/bp_engine.hpp"
#include "sfdbp/cost_volume.hpp"

namespace sfdbp {

inline constexpr int kTinyMaxPixels = 16;
inline constexpr int kTinyMaxLabels = 8;
inline constexpr std::uint64_t kTinyMaxLabelings = std::uint64_t{1} << 32;

/// A grid small enough for exhaustive MAP: W*H <= 16, L <= 8, L^(W*H) <= 2^32.
struct TinyInstance {
    CostVolume costs;
    PriorParams prior;

    /// Throws UsageError when the enumeration bound is exceeded.
    void validate() const;
    /// L^(W*H), saturated at kTinyMaxLabelings + 1.
    std::uint64_t labeling_count() const;
};

struct OracleSolution {
    LabelMap labels;
    double energy = 0.0;
};

/// Minimum-energy labeling by enumeration; lexicographically first on ties
/// (pixel 0 most significant).
OracleSolution exhaustive_map(const TinyInstance& instance);

/// Exact Viterbi solution for a 1 x N (or N x 1) chain.
OracleSolution chain_dp(const CostVolume& costs, const PriorParams& prior);

/// Energy recomputed from an explicit edge list, independent of labeling_energy().
double edge_list_energy(const LabelMap& labels, const CostVolume& costs, const PriorParams& prior);

}  // namespace sfdbp
