#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include "qamnet/evolve.hpp"
#include "qamnet/hamiltonian.hpp"
#include "qamnet/state.hpp"

namespace qamnet {

/// Linear annealing schedule: Lambda(t) = lambda_max * (1 - t/T), discretized
/// into L steps of length dt = T/L with Lambda frozen at the left endpoint.
struct AnnealSchedule {
    double total_time = 0.0;
    int steps = 0;
    double lambda_max = 0.0;

    AnnealSchedule(double total_time_, int steps_, double lambda_max_)
        : total_time(total_time_), steps(steps_), lambda_max(lambda_max_) {
        if (total_time <= 0.0) throw std::invalid_argument("AnnealSchedule: total_time must be positive");
        if (steps < 1) throw std::invalid_argument("AnnealSchedule: steps must be positive");
        if (lambda_max < 0.0) throw std::invalid_argument("AnnealSchedule: lambda_max must be nonnegative");
    }

    double dt() const { return total_time / steps; }
    double lambda_at_step(int l) const { return lambda_max * (1.0 - static_cast<double>(l) / steps); }
};

struct GapPoint {
    double s = 0.0;
    double gap = 0.0;
};

struct GapScan {
    std::vector<GapPoint> points;
    double min_gap = 0.0;
    double min_s = 0.0;
};

struct AnnealResult {
    StateVector final_state;
    MeasurementDistribution distribution;
    std::optional<double> fidelity_vs_expected;
    std::vector<std::pair<Pattern, double>> recognized; // probability >= tau, descending
    std::optional<GapScan> gap_trace;
};

/// Runs the discretized annealing evolution: L Trotter steps with Lambda
/// frozen per interval, then the outcome distribution, fidelity against the
/// expected state when given, and the recognized set at threshold tau.
inline AnnealResult run_anneal(const HamiltonianSpec& spec, const AnnealSchedule& sched,
                               StateVector initial,
                               const std::optional<StateVector>& expected = std::nullopt,
                               double tau = 0.1) {
    if (initial.n_qubits != spec.n_qubits)
        throw DimensionError("run_anneal: initial state dimension mismatch");
    if (tau <= 0.0 || tau >= 1.0)
        throw std::invalid_argument("run_anneal: tau must lie in (0,1)");

    StateVector psi = std::move(initial);
    for (int l = 0; l < sched.steps; ++l)
        psi = trotter_step(std::move(psi), spec, sched.lambda_at_step(l), sched.dt());

    AnnealResult result;
    result.distribution = measurement_distribution(psi);
    if (expected) result.fidelity_vs_expected = overlap(*expected, psi);
    for (std::size_t k = 0; k < result.distribution.probabilities.size(); ++k)
        if (result.distribution.probabilities[k] >= tau)
            result.recognized.emplace_back(result.distribution.labels[k],
                                           result.distribution.probabilities[k]);
    std::sort(result.recognized.begin(), result.recognized.end(),
              [](const auto& a, const auto& b) { return a.second > b.second; });
    result.final_state = std::move(psi);
    return result;
}

enum class TrackedLevel { ground, top };

/// Diagonalizes H(s) on a uniform s grid and reports the distance from the
/// tracked eigenvalue to the nearest level differing by more than
/// degeneracy_tol. A negative tolerance selects 1e-9 * spectral range.
inline GapScan gap_scan(const HamiltonianSpec& spec, const AnnealSchedule& sched,
                        int grid_points, TrackedLevel tracked = TrackedLevel::ground,
                        double degeneracy_tol = -1.0) {
    if (grid_points < 2) throw std::invalid_argument("gap_scan: need at least 2 grid points");
    GapScan scan;
    scan.min_gap = std::numeric_limits<double>::infinity();
    for (int g = 0; g < grid_points; ++g) {
        const double s = static_cast<double>(g) / (grid_points - 1);
        const DenseOracle oracle = dense_oracle(spec, sched.lambda_max * (1.0 - s));
        const Eigen::VectorXd& ev = oracle.eigenvalues;
        const Eigen::Index last = ev.size() - 1;
        double tol = degeneracy_tol;
        if (tol < 0.0) tol = 1e-9 * (ev(last) - ev(0));
        const double tracked_ev = (tracked == TrackedLevel::ground) ? ev(0) : ev(last);
        double gap = std::numeric_limits<double>::infinity();
        for (Eigen::Index k = 0; k <= last; ++k) {
            const double d = std::abs(ev(k) - tracked_ev);
            if (d > tol) gap = std::min(gap, d);
        }
        if (!std::isfinite(gap)) gap = 0.0; // fully degenerate spectrum
        scan.points.push_back(GapPoint{s, gap});
        if (gap < scan.min_gap) {
            scan.min_gap = gap;
            scan.min_s = s;
        }
    }
    return scan;
}

/// Table I outcome set: the ground patterns of the dimensionless two-qubit
/// problem -w sz1 sz2 + Gamma (xi1 sz1 + xi2 sz2). The NMR mapping encodes
/// the same set as the tracked (ground for w=-1, top for w=+1) level.
inline std::vector<Pattern> two_qubit_expected_patterns(int w, const InputPattern& inp,
                                                        double gamma) {
    if (inp.size() != 2) throw DimensionError("two_qubit_expected_patterns: need length 2");
    DiagonalTerm mem = build_memory_coupling(WeightMatrix::single_coupling(w));
    DiagonalTerm in = build_input_hamiltonian(inp);
    std::vector<double> e(4);
    for (std::size_t k = 0; k < 4; ++k) e[k] = mem.energies[k] + gamma * in.energies[k];
    const double emin = *std::min_element(e.begin(), e.end());
    std::vector<Pattern> out;
    for (std::size_t k = 0; k < 4; ++k)
        if (e[k] <= emin + 1e-9) out.push_back(pattern_of_index(k, 2));
    return out;
}

/// End-to-end NMR run: builds the two-qubit mapping, starts from |psi_un>
/// (the driver ground state for w=-1, its top eigenstate for w=+1) and
/// anneals. Fidelity is reported against the uniform superposition of the
/// expected outcome patterns.
inline AnnealResult run_nmr_experiment(int w, const InputPattern& inp, double gamma,
                                       const NmrConfig& cfg, const AnnealSchedule& sched,
                                       double tau = 0.1) {
    const NmrMapping mapping = nmr_two_qubit_mapping(w, inp, gamma, cfg);
    const std::vector<Pattern> expected_set = two_qubit_expected_patterns(w, inp, gamma);
    StateVector expected;
    expected.n_qubits = 2;
    expected.amplitudes.assign(4, Complex(0.0, 0.0));
    const double a = 1.0 / std::sqrt(static_cast<double>(expected_set.size()));
    for (const Pattern& p : expected_set) expected.amplitudes[basis_index(p)] = Complex(a, 0.0);
    return run_anneal(mapping.spec, sched, uniform_state(2), expected, tau);
}

} // namespace qamnet
