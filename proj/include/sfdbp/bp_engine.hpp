#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "sfdbp/cost_volume.hpp"
#include "sfdbp/image.hpp"

namespace sfdbp {

/// Truncated-linear smoothness prior: lambda * min(|l_a - l_b|, T), distances in label steps.
struct PriorParams {
    double truncation = 2.0;
    double lambda = 1.0;

    /// Throws UsageError unless truncation > 0 and lambda >= 0.
    void validate() const;
};

double pairwise_cost(int l_a, int l_b, const PriorParams& prior);

/// Side of the receiving pixel the message comes from.
enum class Side { Left = 0, Right = 1, Up = 2, Down = 3 };

inline constexpr std::array<Side, 4> kSides = {Side::Left, Side::Right, Side::Up, Side::Down};

/// Messages m_{s->p} on the 4-connected grid, indexed by receiver p and the side s lies on.
class MessageField {
public:
    MessageField(int width, int height, int labels);

    int width() const { return width_; }
    int height() const { return height_; }
    int labels() const { return labels_; }
    int iteration() const { return iteration_; }
    void set_iteration(int t) { iteration_ = t; }

    std::span<double> incoming(Side from, std::size_t pixel) {
        return {in_[static_cast<std::size_t>(from)].data() + pixel * labels_,
                static_cast<std::size_t>(labels_)};
    }
    std::span<const double> incoming(Side from, std::size_t pixel) const {
        return {in_[static_cast<std::size_t>(from)].data() + pixel * labels_,
                static_cast<std::size_t>(labels_)};
    }

private:
    int width_;
    int height_;
    int labels_;
    int iteration_ = 0;
    std::array<std::vector<double>, 4> in_;
};

/// Directed edge from pixel (x, y) to its neighbor on side `toward`.
struct Edge {
    int x = 0;
    int y = 0;
    Side toward = Side::Right;
};

/// out[f_q] = min_{f_p} (aggregated[f_p] + V(f_p, f_q)) by enumerating all pairs,
/// shifted so min(out) = 0 when `normalize` is set.
void message_naive(std::span<const double> aggregated, const PriorParams& prior,
                   std::span<double> out, bool normalize = true);

/// Same contract as message_naive in O(L): two-pass lower envelope of the linear cones,
/// then the truncation plateau.
void message_fast(std::span<const double> aggregated, const PriorParams& prior,
                  std::span<double> out, bool normalize = true);

/// D_p plus every message into p except the one coming back from q.
std::vector<double> message_input(const Edge& edge, const CostVolume& costs,
                                  const MessageField& incoming);

std::vector<double> update_message_naive(const Edge& edge, const CostVolume& costs,
                                         const MessageField& incoming, const PriorParams& prior);
std::vector<double> update_message_fast(const Edge& edge, const CostVolume& costs,
                                        const MessageField& incoming, const PriorParams& prior);

enum class Schedule { Synchronous, RedBlack };

struct BpOptions {
    Schedule schedule = Schedule::RedBlack;
    int max_iters = 100;
    double convergence_eps = 1e-6;
    bool normalize_messages = true;
    bool fast_updates = true;
};

struct BpDiagnostics {
    int iterations = 0;
    double final_delta = 0.0;
    double energy = 0.0;
    double wall_time_ms = 0.0;
};

struct BpResult {
    LabelMap labels;
    BpDiagnostics diagnostics;
};

/// Min-sum loopy BP. Stops when the largest message change in an iteration drops below
/// convergence_eps or after max_iters; labels are the belief argmins (smallest on ties).
BpResult run_bp(const CostVolume& costs, const PriorParams& prior, const BpOptions& options = {});

/// Sum of data costs plus the prior over every 4-neighbor pair.
double labeling_energy(const LabelMap& labels, const CostVolume& costs, const PriorParams& prior);

/// Estimated labels together with the label set that gives them meaning.
struct DepthMap {
    LabelMap labels;
    LabelSet label_set;

    int width() const { return labels.width(); }
    int height() const { return labels.height(); }
    GroundTruthDepth metric() const;
};

}  // namespace sfdbp
