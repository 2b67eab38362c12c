#pragma once

#include <cmath>
#include <cstddef>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qamnet/errors.hpp"

namespace qamnet {

/// Bipolar pattern: N entries, each -1 or +1.
class Pattern {
public:
    explicit Pattern(std::vector<int> values) : values_(std::move(values)) {
        if (values_.empty())
            throw std::invalid_argument("Pattern: must have at least one entry");
        for (int v : values_)
            if (v != -1 && v != 1)
                throw std::invalid_argument("Pattern: entries must be -1 or +1");
    }

    int size() const { return static_cast<int>(values_.size()); }
    int operator[](int i) const { return values_[static_cast<std::size_t>(i)]; }
    const std::vector<int>& values() const { return values_; }

    Pattern negated() const {
        std::vector<int> v(values_);
        for (int& x : v) x = -x;
        return Pattern(std::move(v));
    }

    bool operator==(const Pattern&) const = default;
    bool operator<(const Pattern& o) const { return values_ < o.values_; }

private:
    std::vector<int> values_;
};

/// Possibly partial input: entries in {-1, 0, +1}, zero marking an unknown position.
class InputPattern {
public:
    explicit InputPattern(std::vector<int> values) : values_(std::move(values)) {
        if (values_.empty())
            throw std::invalid_argument("InputPattern: must have at least one entry");
        for (int v : values_)
            if (v < -1 || v > 1)
                throw std::invalid_argument("InputPattern: entries must be -1, 0 or +1");
    }

    static InputPattern blank(int n) { return InputPattern(std::vector<int>(static_cast<std::size_t>(n), 0)); }

    int size() const { return static_cast<int>(values_.size()); }
    int operator[](int i) const { return values_[static_cast<std::size_t>(i)]; }
    const std::vector<int>& values() const { return values_; }

    /// Number of known (nonzero) positions.
    int known_count() const {
        int n = 0;
        for (int v : values_) n += (v != 0);
        return n;
    }

    bool operator==(const InputPattern&) const = default;

private:
    std::vector<int> values_;
};

/// Set of p stored patterns of one common length. Duplicates are rejected.
class MemorySet {
public:
    explicit MemorySet(std::vector<Pattern> patterns) : patterns_(std::move(patterns)) {
        if (patterns_.empty())
            throw std::invalid_argument("MemorySet: must store at least one pattern");
        const int n = patterns_.front().size();
        std::set<Pattern> seen;
        for (const Pattern& p : patterns_) {
            if (p.size() != n)
                throw DimensionError("MemorySet: patterns must all have equal length");
            if (!seen.insert(p).second)
                throw std::invalid_argument("MemorySet: duplicate pattern");
        }
    }

    int pattern_count() const { return static_cast<int>(patterns_.size()); }
    int neuron_count() const { return patterns_.front().size(); }
    const Pattern& operator[](int mu) const { return patterns_[static_cast<std::size_t>(mu)]; }
    const std::vector<Pattern>& patterns() const { return patterns_; }

private:
    std::vector<Pattern> patterns_;
};

/// Symmetric N x N coupling matrix with zero diagonal.
class WeightMatrix {
public:
    explicit WeightMatrix(int n) : n_(n), w_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0) {
        if (n < 1) throw std::invalid_argument("WeightMatrix: size must be positive");
    }

    int size() const { return n_; }

    double at(int i, int j) const { return w_[static_cast<std::size_t>(i) * n_ + j]; }

    /// Sets w_ij = w_ji = v. The diagonal stays zero.
    void set(int i, int j, double v) {
        if (i == j) throw std::invalid_argument("WeightMatrix: diagonal is fixed at zero");
        w_[static_cast<std::size_t>(i) * n_ + j] = v;
        w_[static_cast<std::size_t>(j) * n_ + i] = v;
    }

    /// Two-neuron shorthand: the single coupling w = w_01 = w_10.
    static WeightMatrix single_coupling(double w) {
        WeightMatrix m(2);
        m.set(0, 1, w);
        return m;
    }

private:
    int n_;
    std::vector<double> w_;
};

struct EnergyBreakdown {
    double e_mem = 0.0;
    double e_inp = 0.0;
    double e_total = 0.0;
    double gamma = 0.0;
};

/// Hamming distance between two full patterns.
inline int hamming_distance(const Pattern& a, const Pattern& b) {
    if (a.size() != b.size())
        throw DimensionError("hamming_distance: length mismatch");
    int h = 0;
    for (int i = 0; i < a.size(); ++i) h += (a[i] != b[i]);
    return h;
}

/// Hamming distance from a (possibly partial) input to a full pattern.
/// With restrict_to_known, only the input's nonzero positions are compared.
inline int hamming_distance(const InputPattern& a, const Pattern& b, bool restrict_to_known = true) {
    if (a.size() != b.size())
        throw DimensionError("hamming_distance: length mismatch");
    int h = 0;
    for (int i = 0; i < a.size(); ++i) {
        if (restrict_to_known && a[i] == 0) continue;
        h += (a[i] != b[i]);
    }
    return h;
}

/// One-shot Hebbian rule: w_ij = (1/N) [sum_mu xi_i xi_j - p delta_ij].
inline WeightMatrix hebbian_weights(const MemorySet& mem) {
    const int n = mem.neuron_count();
    WeightMatrix w(n);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            int s = 0;
            for (const Pattern& xi : mem.patterns()) s += xi[i] * xi[j];
            w.set(i, j, static_cast<double>(s) / n);
        }
    }
    return w;
}

/// Hopfield cost function: -(1/2) sum_ij w_ij S_i S_j.
inline double hopfield_energy(const Pattern& state, const WeightMatrix& w) {
    if (state.size() != w.size())
        throw DimensionError("hopfield_energy: dimension mismatch");
    double e = 0.0;
    for (int i = 0; i < state.size(); ++i)
        for (int j = 0; j < state.size(); ++j)
            e += w.at(i, j) * state[i] * state[j];
    return -0.5 * e;
}

/// Input-field energy of a full pattern: sum_i xi^inp_i z_i, which equals
/// -n + 2h with h the Hamming distance restricted to known positions.
/// Uses the spin<->bit convention z_i = -S_i (see hamiltonian.hpp).
inline double input_energy(const Pattern& state, const InputPattern& inp) {
    if (state.size() != inp.size())
        throw DimensionError("input_energy: dimension mismatch");
    int s = 0;
    for (int i = 0; i < state.size(); ++i) s += inp[i] * state[i];
    return -static_cast<double>(s);
}

inline EnergyBreakdown energy_breakdown(const Pattern& state, const WeightMatrix& w,
                                        const InputPattern& inp, double gamma) {
    EnergyBreakdown e;
    e.e_mem = hopfield_energy(state, w);
    e.e_inp = input_energy(state, inp);
    e.gamma = gamma;
    e.e_total = e.e_mem + gamma * e.e_inp;
    return e;
}

} // namespace qamnet
