#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "qamnet/errors.hpp"
#include "qamnet/patterns.hpp"

namespace qamnet {

using Complex = std::complex<double>;

// Spin <-> bit convention used throughout:
//   xi = -1  <->  bit 0  <->  sigma_z eigenvalue +1
//   xi = +1  <->  bit 1  <->  sigma_z eigenvalue -1
// Qubit 1 is the most significant bit of the basis index.

/// sigma_z eigenvalue of qubit i (1-based) in basis state k of an n-qubit register.
inline int z_eigenvalue(std::size_t k, int qubit, int n_qubits) {
    return ((k >> (n_qubits - qubit)) & 1u) ? -1 : +1;
}

/// Basis index of a full bipolar pattern.
inline std::size_t basis_index(const Pattern& p) {
    std::size_t k = 0;
    for (int i = 0; i < p.size(); ++i)
        k = (k << 1) | static_cast<std::size_t>(p[i] == 1);
    return k;
}

/// Bipolar pattern labelling basis state k.
inline Pattern pattern_of_index(std::size_t k, int n_qubits) {
    std::vector<int> v(static_cast<std::size_t>(n_qubits));
    for (int i = 0; i < n_qubits; ++i)
        v[static_cast<std::size_t>(i)] = ((k >> (n_qubits - 1 - i)) & 1u) ? +1 : -1;
    return Pattern(std::move(v));
}

/// 2^N complex amplitudes, kept at unit norm by the operations that produce them.
struct StateVector {
    int n_qubits = 0;
    std::vector<Complex> amplitudes;

    std::size_t dim() const { return amplitudes.size(); }

    double norm() const {
        double s = 0.0;
        for (const Complex& a : amplitudes) s += std::norm(a);
        return std::sqrt(s);
    }
};

/// The "empty memory" state: uniform superposition over all basis states.
inline StateVector uniform_state(int n_qubits) {
    if (n_qubits < 1) throw std::invalid_argument("uniform_state: need at least one qubit");
    StateVector psi;
    psi.n_qubits = n_qubits;
    const std::size_t dim = std::size_t{1} << n_qubits;
    psi.amplitudes.assign(dim, Complex(1.0 / std::sqrt(static_cast<double>(dim)), 0.0));
    return psi;
}

/// Computational basis state of a pattern.
inline StateVector basis_state(const Pattern& p) {
    StateVector psi;
    psi.n_qubits = p.size();
    psi.amplitudes.assign(std::size_t{1} << p.size(), Complex(0.0, 0.0));
    psi.amplitudes[basis_index(p)] = Complex(1.0, 0.0);
    return psi;
}

/// |<a|b>|^2, the pure-state form of the trace overlap.
inline double overlap(const StateVector& a, const StateVector& b) {
    if (a.dim() != b.dim())
        throw DimensionError("overlap: dimension mismatch");
    Complex ip(0.0, 0.0);
    for (std::size_t k = 0; k < a.dim(); ++k)
        ip += std::conj(a.amplitudes[k]) * b.amplitudes[k];
    return std::norm(ip);
}

struct MeasurementDistribution {
    std::vector<double> probabilities;
    std::vector<Pattern> labels;
};

inline MeasurementDistribution measurement_distribution(const StateVector& psi) {
    MeasurementDistribution d;
    d.probabilities.reserve(psi.dim());
    d.labels.reserve(psi.dim());
    for (std::size_t k = 0; k < psi.dim(); ++k) {
        d.probabilities.push_back(std::norm(psi.amplitudes[k]));
        d.labels.push_back(pattern_of_index(k, psi.n_qubits));
    }
    return d;
}

/// Seeded i.i.d. projective-readout emulation. Returns per-basis-state counts.
/// Inverse-CDF sampling so identical seeds give identical histograms on any platform.
inline std::vector<std::int64_t> sample_outcomes(const MeasurementDistribution& dist,
                                                 std::int64_t shots, std::uint64_t seed) {
    if (shots < 1) throw std::invalid_argument("sample_outcomes: shots must be positive");
    std::mt19937_64 rng(seed);
    std::vector<std::int64_t> counts(dist.probabilities.size(), 0);
    for (std::int64_t s = 0; s < shots; ++s) {
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        double acc = 0.0;
        std::size_t k = 0;
        for (; k + 1 < dist.probabilities.size(); ++k) {
            acc += dist.probabilities[k];
            if (u < acc) break;
        }
        ++counts[k];
    }
    return counts;
}

} // namespace qamnet
