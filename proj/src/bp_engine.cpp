#include "sfdbp/bp_engine.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "sfdbp/parallel.hpp"

namespace sfdbp {

namespace {

constexpr Side opposite(Side s) {
    switch (s) {
        case Side::Left: return Side::Right;
        case Side::Right: return Side::Left;
        case Side::Up: return Side::Down;
        case Side::Down: return Side::Up;
    }
    return s;
}

// Neighbor of (x, y) on side s, or false when it falls outside the grid.
bool neighbor(int x, int y, Side s, int w, int h, int& nx, int& ny) {
    nx = x;
    ny = y;
    switch (s) {
        case Side::Left: --nx; break;
        case Side::Right: ++nx; break;
        case Side::Up: --ny; break;
        case Side::Down: ++ny; break;
    }
    return nx >= 0 && ny >= 0 && nx < w && ny < h;
}

void subtract_min(std::span<double> v) {
    const double m = *std::min_element(v.begin(), v.end());
    for (double& x : v) x -= m;
}

// Writes the input of message p -> q into `h`.
void gather_input(const CostVolume& costs, const MessageField& field, std::size_t p, Side toward,
                  std::span<double> h) {
    const auto d = costs.pixel(p);
    std::copy(d.begin(), d.end(), h.begin());
    for (Side s : kSides) {
        if (s == toward) continue;
        const auto m = field.incoming(s, p);
        for (std::size_t l = 0; l < h.size(); ++l) h[l] += m[l];
    }
}

}  // namespace

void PriorParams::validate() const {
    if (!(truncation > 0.0)) throw UsageError("prior truncation T must be positive");
    if (!(lambda >= 0.0) || !std::isfinite(lambda))
        throw UsageError("smoothness weight lambda must be finite and non-negative");
}

double pairwise_cost(int l_a, int l_b, const PriorParams& prior) {
    return prior.lambda * std::min(static_cast<double>(std::abs(l_a - l_b)), prior.truncation);
}

MessageField::MessageField(int width, int height, int labels)
    : width_(width), height_(height), labels_(labels) {
    for (auto& m : in_) m.assign(static_cast<std::size_t>(width) * height * labels, 0.0);
}

void message_naive(std::span<const double> aggregated, const PriorParams& prior,
                   std::span<double> out, bool normalize) {
    const int L = static_cast<int>(aggregated.size());
    for (int fq = 0; fq < L; ++fq) {
        double best = std::numeric_limits<double>::infinity();
        for (int fp = 0; fp < L; ++fp)
            best = std::min(best, aggregated[static_cast<std::size_t>(fp)] + pairwise_cost(fp, fq, prior));
        out[static_cast<std::size_t>(fq)] = best;
    }
    if (normalize) subtract_min(out);
}

void message_fast(std::span<const double> aggregated, const PriorParams& prior,
                  std::span<double> out, bool normalize) {
    const std::size_t L = aggregated.size();
    std::copy(aggregated.begin(), aggregated.end(), out.begin());
    const double slope = prior.lambda;
    for (std::size_t i = 1; i < L; ++i) out[i] = std::min(out[i], out[i - 1] + slope);
    for (std::size_t i = L - 1; i-- > 0;) out[i] = std::min(out[i], out[i + 1] + slope);
    const double plateau =
        *std::min_element(aggregated.begin(), aggregated.end()) + prior.lambda * prior.truncation;
    for (double& v : out) v = std::min(v, plateau);
    if (normalize) subtract_min(out);
}

std::vector<double> message_input(const Edge& edge, const CostVolume& costs,
                                  const MessageField& incoming) {
    int qx = 0;
    int qy = 0;
    if (!neighbor(edge.x, edge.y, edge.toward, costs.width(), costs.height(), qx, qy))
        throw UsageError("edge leaves the grid");
    std::vector<double> h(static_cast<std::size_t>(costs.labels()));
    gather_input(costs, incoming, static_cast<std::size_t>(edge.y) * costs.width() + edge.x,
                 edge.toward, h);
    return h;
}

std::vector<double> update_message_naive(const Edge& edge, const CostVolume& costs,
                                         const MessageField& incoming, const PriorParams& prior) {
    const auto h = message_input(edge, costs, incoming);
    std::vector<double> out(h.size());
    message_naive(h, prior, out);
    return out;
}

std::vector<double> update_message_fast(const Edge& edge, const CostVolume& costs,
                                        const MessageField& incoming, const PriorParams& prior) {
    const auto h = message_input(edge, costs, incoming);
    std::vector<double> out(h.size());
    message_fast(h, prior, out);
    return out;
}

BpResult run_bp(const CostVolume& costs, const PriorParams& prior, const BpOptions& options) {
    const auto start = std::chrono::steady_clock::now();
    if (options.max_iters < 1) throw UsageError("max_iters must be at least 1");
    prior.validate();
    costs.validate();

    const int w = costs.width();
    const int h = costs.height();
    const int L = costs.labels();
    const auto Ls = static_cast<std::size_t>(L);
    auto update = options.fast_updates ? &message_fast : &message_naive;

    MessageField field(w, h, L);
    MessageField next = options.schedule == Schedule::Synchronous ? field : MessageField(0, 0, L);

    // Sends every message from pixels in row y (of the given parity, or all when parity < 0),
    // reading from `src` and writing into `dst`. Returns the largest entry change.
    auto send_row = [&](int y, int parity, const MessageField& src, MessageField& dst) {
        std::vector<double> total(Ls);
        std::vector<double> in(Ls);
        std::vector<double> out(Ls);
        double delta = 0.0;
        for (int x = 0; x < w; ++x) {
            if (parity >= 0 && (x + y) % 2 != parity) continue;
            const std::size_t p = static_cast<std::size_t>(y) * w + x;
            // D_p plus all four incoming messages; each outgoing message then removes the
            // contribution of its own target.
            const auto d = costs.pixel(p);
            std::copy(d.begin(), d.end(), total.begin());
            for (Side s : kSides) {
                const auto m = src.incoming(s, p);
                for (std::size_t l = 0; l < Ls; ++l) total[l] += m[l];
            }
            for (Side s : kSides) {
                int qx = 0;
                int qy = 0;
                if (!neighbor(x, y, s, w, h, qx, qy)) continue;
                const auto back = src.incoming(s, p);
                for (std::size_t l = 0; l < Ls; ++l) in[l] = total[l] - back[l];
                update(in, prior, out, options.normalize_messages);
                auto target = dst.incoming(opposite(s), static_cast<std::size_t>(qy) * w + qx);
                for (std::size_t l = 0; l < Ls; ++l) {
                    delta = std::max(delta, std::abs(out[l] - target[l]));
                    target[l] = out[l];
                }
            }
        }
        return delta;
    };

    std::vector<double> row_delta(static_cast<std::size_t>(h), 0.0);
    BpDiagnostics diag;
    for (int t = 1; t <= options.max_iters; ++t) {
        double delta = 0.0;
        if (options.schedule == Schedule::Synchronous) {
            parallel_for(0, h, [&](int y) { row_delta[static_cast<std::size_t>(y)] = send_row(y, -1, field, next); });
            delta = *std::max_element(row_delta.begin(), row_delta.end());
            std::swap(field, next);
        } else {
            // A pixel's outgoing messages only land on pixels of the other color, so one
            // color class can be updated in place without read/write overlap.
            for (int parity = 0; parity < 2; ++parity) {
                parallel_for(0, h, [&](int y) { row_delta[static_cast<std::size_t>(y)] = send_row(y, parity, field, field); });
                delta = std::max(delta, *std::max_element(row_delta.begin(), row_delta.end()));
            }
        }
        field.set_iteration(t);
        diag.iterations = t;
        diag.final_delta = delta;
        if (delta < options.convergence_eps) break;
    }

    LabelMap labels(w, h, 0);
    parallel_for(0, h, [&](int y) {
        std::vector<double> belief(Ls);
        for (int x = 0; x < w; ++x) {
            const std::size_t p = static_cast<std::size_t>(y) * w + x;
            const auto d = costs.pixel(p);
            std::copy(d.begin(), d.end(), belief.begin());
            for (Side s : kSides) {
                const auto m = field.incoming(s, p);
                for (std::size_t l = 0; l < Ls; ++l) belief[l] += m[l];
            }
            labels[p] = static_cast<int>(std::min_element(belief.begin(), belief.end()) - belief.begin());
        }
    });

    diag.energy = labeling_energy(labels, costs, prior);
    diag.wall_time_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return {std::move(labels), diag};
}

double labeling_energy(const LabelMap& labels, const CostVolume& costs, const PriorParams& prior) {
    if (labels.width() != costs.width() || labels.height() != costs.height())
        throw StructuralError("labeling and cost volume shapes differ");
    const int w = costs.width();
    const int h = costs.height();
    double energy = 0.0;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const int l = labels(x, y);
            if (l < 0 || l >= costs.labels()) throw StructuralError("label index out of range");
            energy += costs.at(x, y, l);
            if (x + 1 < w) energy += pairwise_cost(l, labels(x + 1, y), prior);
            if (y + 1 < h) energy += pairwise_cost(l, labels(x, y + 1), prior);
        }
    }
    return energy;
}

GroundTruthDepth DepthMap::metric() const {
    GroundTruthDepth out(labels.width(), labels.height());
    for (std::size_t p = 0; p < labels.size(); ++p) out[p] = label_set.depth(labels[p]);
    return out;
}

}  // namespace sfdbp
