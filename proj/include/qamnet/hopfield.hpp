#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <vector>

#include "qamnet/patterns.hpp"

namespace qamnet {

struct HopfieldState {
    Pattern spins;
    int time_step = 0;
};

enum class RecallKind { fixed_point, cycle };
enum class UpdateMode { async, sync };

struct RecallOutcome {
    RecallKind kind = RecallKind::fixed_point;
    std::vector<HopfieldState> trajectory;
    int period = 1; // 1 for fixed points
};

/// Thrown when recall exhausts max_iters without reaching a fixed point or
/// detecting a cycle. Carries the trajectory seen so far.
class RecallNotConverged : public std::runtime_error {
public:
    explicit RecallNotConverged(std::vector<HopfieldState> trajectory)
        : std::runtime_error("recall: max_iters exhausted"), trajectory(std::move(trajectory)) {}
    std::vector<HopfieldState> trajectory;
};

namespace detail {

inline int sign_update(double r, int current) {
    if (r > 0.0) return +1;
    if (r < 0.0) return -1;
    return current; // sgn(0) keeps the current spin
}

} // namespace detail

/// One asynchronous sweep: neurons updated in the given order, each response
/// sum seeing the already-updated values of earlier neurons.
/// order contains 1..N, 1-based.
inline HopfieldState update_async(const HopfieldState& state, const WeightMatrix& w,
                                  const std::vector<int>& order) {
    const int n = state.spins.size();
    if (w.size() != n) throw DimensionError("update_async: dimension mismatch");
    std::vector<int> seen(static_cast<std::size_t>(n), 0);
    for (int i : order) {
        if (i < 1 || i > n || seen[static_cast<std::size_t>(i - 1)]++)
            throw std::invalid_argument("update_async: order must be a permutation of 1..N");
    }
    std::vector<int> s = state.spins.values();
    for (int idx : order) {
        const int i = idx - 1;
        double r = 0.0;
        for (int j = 0; j < n; ++j)
            if (j != i) r += w.at(i, j) * s[static_cast<std::size_t>(j)];
        s[static_cast<std::size_t>(i)] = detail::sign_update(r, s[static_cast<std::size_t>(i)]);
    }
    return HopfieldState{Pattern(std::move(s)), state.time_step + 1};
}

/// Synchronous update: every neuron evaluated against the time-t snapshot.
inline HopfieldState update_sync(const HopfieldState& state, const WeightMatrix& w) {
    const int n = state.spins.size();
    if (w.size() != n) throw DimensionError("update_sync: dimension mismatch");
    std::vector<int> s(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        double r = 0.0;
        for (int j = 0; j < n; ++j)
            if (j != i) r += w.at(i, j) * state.spins[j];
        s[static_cast<std::size_t>(i)] = detail::sign_update(r, state.spins[i]);
    }
    return HopfieldState{Pattern(std::move(s)), state.time_step + 1};
}

/// Iterates updates from a full bipolar input until a fixed point or a cycle
/// (revisited state) is found. Async mode draws a fresh random update order
/// per sweep from the seed.
inline RecallOutcome recall(const Pattern& inp, const WeightMatrix& w, UpdateMode mode,
                            int max_iters, std::uint64_t seed) {
    if (inp.size() != w.size()) throw DimensionError("recall: dimension mismatch");
    std::mt19937_64 rng(seed);
    std::vector<int> order(static_cast<std::size_t>(inp.size()));
    std::iota(order.begin(), order.end(), 1);

    RecallOutcome out;
    out.trajectory.push_back(HopfieldState{inp, 0});
    std::map<Pattern, int> seen;
    seen.emplace(inp, 0);

    for (int t = 1; t <= max_iters; ++t) {
        const HopfieldState& cur = out.trajectory.back();
        HopfieldState next = [&] {
            if (mode == UpdateMode::sync) return update_sync(cur, w);
            std::shuffle(order.begin(), order.end(), rng);
            return update_async(cur, w, order);
        }();
        if (next.spins == cur.spins) {
            out.kind = RecallKind::fixed_point;
            out.period = 1;
            return out;
        }
        auto [it, fresh] = seen.emplace(next.spins, t);
        out.trajectory.push_back(std::move(next));
        if (!fresh) {
            out.kind = RecallKind::cycle;
            out.period = t - it->second;
            return out;
        }
    }
    throw RecallNotConverged(std::move(out.trajectory));
}

} // namespace qamnet
