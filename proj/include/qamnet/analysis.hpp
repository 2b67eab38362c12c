#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include "qamnet/evolve.hpp"
#include "qamnet/hamiltonian.hpp"
#include "qamnet/patterns.hpp"

namespace qamnet {

/// Upper bound for the input weight with the coupling memory, p = 1:
/// Gamma < 1 - n/(2N).
inline double gamma_bound_coupling(int n_neurons, int n_known) {
    if (n_known < 1 || n_known > n_neurons)
        throw std::invalid_argument("gamma_bound_coupling: need 1 <= n <= N");
    return 1.0 - static_cast<double>(n_known) / (2.0 * n_neurons);
}

/// Upper bound for the input weight with the diagonal projector memory,
/// arbitrary p: Gamma < 1/(2n).
inline double gamma_bound_projector(int n_known) {
    if (n_known < 1)
        throw std::invalid_argument("gamma_bound_projector: blank input has no bound");
    return 1.0 / (2.0 * n_known);
}

enum class MemoryKind { coupling, projector_a };

struct BoundWitness {
    double gamma = 0.0;
    Pattern state;
    double state_energy = 0.0;
    double reference_energy = 0.0;
};

struct BoundReport {
    MemoryKind kind = MemoryKind::coupling;
    double gamma_upper = 0.0;
    std::optional<BoundWitness> witness; // first violation found, if any
};

/// Enumerates all 2^N basis energies of H_mem + Gamma H_inp for each Gamma in
/// the grid and asserts that the correct pattern(s) occupy the ground level:
/// for coupling (p = 1) the stored pattern (joined by its negation when the
/// input is equidistant from both), for projector_a the minimal-Hamming
/// subset of the memory set.
inline BoundReport verify_bound_brute_force(const MemorySet& mem, const InputPattern& inp,
                                            MemoryKind kind,
                                            const std::vector<double>& gamma_grid) {
    const int n_qubits = mem.neuron_count();
    if (n_qubits != inp.size())
        throw DimensionError("verify_bound_brute_force: dimension mismatch");
    if (n_qubits > 12)
        throw CapacityError("verify_bound_brute_force: limited to 12 qubits");
    if (kind == MemoryKind::coupling && mem.pattern_count() != 1)
        throw std::invalid_argument("verify_bound_brute_force: coupling bound requires p = 1");

    BoundReport report;
    report.kind = kind;
    const int n_known = inp.known_count();
    report.gamma_upper = (kind == MemoryKind::coupling)
                             ? gamma_bound_coupling(n_qubits, n_known)
                             : gamma_bound_projector(n_known);

    const DiagonalTerm mem_term = (kind == MemoryKind::coupling)
                                      ? build_memory_coupling(hebbian_weights(mem))
                                      : build_projector_memory_a(mem);
    const DiagonalTerm inp_term = build_input_hamiltonian(inp);

    // Indices that are allowed to share the ground level.
    std::vector<std::size_t> allowed;
    if (kind == MemoryKind::coupling) {
        allowed.push_back(basis_index(mem[0]));
        const int m = hamming_distance(inp, mem[0]);
        if (n_known == 2 * m) allowed.push_back(basis_index(mem[0].negated()));
    } else {
        int h_min = inp.size() + 1;
        for (const Pattern& xi : mem.patterns())
            h_min = std::min(h_min, hamming_distance(inp, xi));
        for (const Pattern& xi : mem.patterns())
            if (hamming_distance(inp, xi) == h_min) allowed.push_back(basis_index(xi));
    }
    std::sort(allowed.begin(), allowed.end());

    const std::size_t dim = mem_term.energies.size();
    for (double gamma : gamma_grid) {
        double e_min = std::numeric_limits<double>::infinity();
        std::vector<double> e(dim);
        for (std::size_t k = 0; k < dim; ++k) {
            e[k] = mem_term.energies[k] + gamma * inp_term.energies[k];
            e_min = std::min(e_min, e[k]);
        }
        std::vector<std::size_t> ground;
        for (std::size_t k = 0; k < dim; ++k)
            if (e[k] <= e_min + 1e-9) ground.push_back(k);
        if (ground != allowed) {
            // Witness: a ground state outside the allowed set, or the
            // expected pattern when it fell off the ground level.
            std::size_t bad = ground.front();
            for (std::size_t k : ground)
                if (!std::binary_search(allowed.begin(), allowed.end(), k)) bad = k;
            report.witness = BoundWitness{gamma, pattern_of_index(bad, n_qubits), e[bad],
                                          e[allowed.front()]};
            return report;
        }
    }
    return report;
}

/// Hamming-distance statistics of the projector-b ground-state perturbation
/// series in Gamma.
struct PerturbationReport {
    double gamma = 0.0;
    double mean_hamming = 0.0;                // <h>
    std::vector<double> deviations;           // h_mu - <h>, sums to zero
    std::vector<double> scalar_products;      // s_mu = n - 2 h_mu
    double mean_scalar = 0.0;                 // <s> = n - 2<h>
    double variance = 0.0;                    // <h^2> - <h>^2
    double e0_first = 0.0;                    // -n + 2<h>
    double e0_second = 0.0;                   // -4 * variance
    std::vector<double> first_order_amplitudes;    // (1/sqrt(p)) (1 - 2 Gamma dh_mu), unnormalized
    std::vector<double> first_order_probabilities; // normalized squares of the above
};

inline PerturbationReport perturbation_report(const MemorySet& mem, const InputPattern& inp,
                                              double gamma) {
    if (mem.neuron_count() != inp.size())
        throw DimensionError("perturbation_report: dimension mismatch");
    const int p = mem.pattern_count();
    const int n = inp.known_count();

    PerturbationReport r;
    r.gamma = gamma;
    std::vector<int> h(static_cast<std::size_t>(p));
    for (int mu = 0; mu < p; ++mu) h[static_cast<std::size_t>(mu)] = hamming_distance(inp, mem[mu]);

    double sum_h = 0.0, sum_h2 = 0.0;
    for (int hv : h) {
        sum_h += hv;
        sum_h2 += static_cast<double>(hv) * hv;
    }
    r.mean_hamming = sum_h / p;
    r.variance = sum_h2 / p - r.mean_hamming * r.mean_hamming;
    r.mean_scalar = n - 2.0 * r.mean_hamming;
    r.e0_first = -n + 2.0 * r.mean_hamming;
    r.e0_second = -4.0 * r.variance;

    const double root_p = std::sqrt(static_cast<double>(p));
    double weight_sum = 0.0;
    for (int hv : h) {
        const double dh = hv - r.mean_hamming;
        r.deviations.push_back(dh);
        r.scalar_products.push_back(n - 2.0 * hv);
        const double amp = (1.0 - 2.0 * gamma * dh) / root_p;
        r.first_order_amplitudes.push_back(amp);
        weight_sum += amp * amp;
    }
    for (double amp : r.first_order_amplitudes)
        r.first_order_probabilities.push_back(amp * amp / weight_sum);
    return r;
}

enum class RankingMethod { exact, first_order };

/// Per-pattern relevance probabilities for the projector-b problem
/// H_mem^b + Gamma H_inp, sorted descending. The exact method reads them off
/// the dense-oracle ground state; first_order uses the normalized
/// perturbative amplitudes.
inline std::vector<std::pair<Pattern, double>> similarity_ranking(const MemorySet& mem,
                                                                  const InputPattern& inp,
                                                                  double gamma,
                                                                  RankingMethod method) {
    std::vector<std::pair<Pattern, double>> ranking;
    if (method == RankingMethod::first_order) {
        const PerturbationReport r = perturbation_report(mem, inp, gamma);
        for (int mu = 0; mu < mem.pattern_count(); ++mu)
            ranking.emplace_back(mem[mu], r.first_order_probabilities[static_cast<std::size_t>(mu)]);
    } else {
        HamiltonianSpec spec;
        spec.n_qubits = mem.neuron_count();
        spec.problem = build_problem(build_projector_memory_b(mem), build_input_hamiltonian(inp), gamma);
        const DenseOracle oracle = dense_oracle(spec, 0.0);
        for (int mu = 0; mu < mem.pattern_count(); ++mu) {
            const auto k = static_cast<Eigen::Index>(basis_index(mem[mu]));
            ranking.emplace_back(mem[mu], std::norm(oracle.eigenvectors(k, 0)));
        }
    }
    std::sort(ranking.begin(), ranking.end(),
              [](const auto& a, const auto& b) { return a.second > b.second; });
    return ranking;
}

} // namespace qamnet
