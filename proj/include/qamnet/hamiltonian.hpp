#pragma once

#include <cmath>
#include <numbers>
#include <variant>
#include <vector>

#include "qamnet/patterns.hpp"
#include "qamnet/state.hpp"

namespace qamnet {

// Hamiltonians are kept as structured sums of exactly exponentiable terms.
// Dense matrices exist only inside the verification oracle (evolve.hpp).

/// Diagonal term: one real energy per basis state.
struct DiagonalTerm {
    std::vector<double> energies;
};

/// Per-qubit sigma_x fields: sum_i a_i sigma_x_i.
struct TransverseFieldTerm {
    std::vector<double> coefficients;
};

/// coeff * (1 - |v><v|) for a unit-norm direction v.
struct RankOneProjectorTerm {
    double coefficient = 1.0;
    StateVector direction;
};

using OperatorTerm = std::variant<DiagonalTerm, TransverseFieldTerm, RankOneProjectorTerm>;

enum class Units { dimensionless, angular_frequency };

/// Instantaneous Hamiltonian H(s) = Lambda(s) * driver + problem.
struct HamiltonianSpec {
    int n_qubits = 0;
    std::vector<OperatorTerm> driver;
    std::vector<OperatorTerm> problem;
    Units units = Units::dimensionless;
};

enum class OperatorNormalization { spin_half, pauli };

/// Two-spin NMR parameters. Relaxation times are metadata only and never
/// enter the dynamics.
struct NmrConfig {
    double j_coupling_hz = 195.0;
    double a_max_hz = 600.0;
    double t1_h_s = 1.6;
    double t1_c_s = 2.7;
    double t2_h_s = 0.130;
    double t2_c_s = 0.060;
    OperatorNormalization normalization = OperatorNormalization::spin_half;
};

/// Coupling memory Hamiltonian -(1/2) sum_{i!=j} w_ij sigma_z_i sigma_z_j as a diagonal.
/// On any full-pattern state this reproduces the classical Hopfield energy.
inline DiagonalTerm build_memory_coupling(const WeightMatrix& w) {
    const int n = w.size();
    DiagonalTerm term;
    term.energies.assign(std::size_t{1} << n, 0.0);
    for (std::size_t k = 0; k < term.energies.size(); ++k) {
        double e = 0.0;
        for (int i = 0; i < n; ++i) {
            const int zi = z_eigenvalue(k, i + 1, n);
            for (int j = i + 1; j < n; ++j)
                e += w.at(i, j) * zi * z_eigenvalue(k, j + 1, n);
        }
        term.energies[k] = -e; // -(1/2) over the full i != j double sum
    }
    return term;
}

/// Input Hamiltonian sum_i xi^inp_i sigma_z_i. Its eigenvalue on a full
/// pattern state is -n + 2h with h the restricted Hamming distance.
inline DiagonalTerm build_input_hamiltonian(const InputPattern& inp) {
    const int n = inp.size();
    DiagonalTerm term;
    term.energies.assign(std::size_t{1} << n, 0.0);
    for (std::size_t k = 0; k < term.energies.size(); ++k) {
        double e = 0.0;
        for (int i = 0; i < n; ++i) e += inp[i] * z_eigenvalue(k, i + 1, n);
        term.energies[k] = e;
    }
    return term;
}

/// Projector memory (variant a): 1 - sum_mu |xi^mu><xi^mu|, diagonal with a
/// zero at each stored-pattern index.
inline DiagonalTerm build_projector_memory_a(const MemorySet& mem) {
    DiagonalTerm term;
    term.energies.assign(std::size_t{1} << mem.neuron_count(), 1.0);
    for (const Pattern& xi : mem.patterns()) term.energies[basis_index(xi)] = 0.0;
    return term;
}

/// Memory state |xi_mem> = (1/sqrt(p)) sum_mu |xi^mu>.
inline StateVector build_memory_state(const MemorySet& mem) {
    StateVector psi;
    psi.n_qubits = mem.neuron_count();
    psi.amplitudes.assign(std::size_t{1} << mem.neuron_count(), Complex(0.0, 0.0));
    const double a = 1.0 / std::sqrt(static_cast<double>(mem.pattern_count()));
    for (const Pattern& xi : mem.patterns()) psi.amplitudes[basis_index(xi)] = Complex(a, 0.0);
    return psi;
}

/// Projector memory (variant b): 1 - |xi_mem><xi_mem|.
inline RankOneProjectorTerm build_projector_memory_b(const MemorySet& mem) {
    return RankOneProjectorTerm{1.0, build_memory_state(mem)};
}

/// Problem Hamiltonian H_p = H_mem + Gamma * H_inp as a term list.
/// Gamma = 0 is allowed for blank-input (pure memory recall) runs.
inline std::vector<OperatorTerm> build_problem(OperatorTerm memory_term,
                                               DiagonalTerm input_term, double gamma) {
    if (gamma < 0.0) throw std::invalid_argument("build_problem: gamma must be nonnegative");
    for (double& e : input_term.energies) e *= gamma;
    return {std::move(memory_term), OperatorTerm(std::move(input_term))};
}

/// Standard transverse driver H_i = (1/2) sum_i (1 - sigma_x_i), returned as a
/// constant diagonal N/2 plus per-qubit sigma_x coefficients -1/2. The uniform
/// state is its exact ground state with eigenvalue 0.
inline std::vector<OperatorTerm> build_standard_driver(int n_qubits) {
    if (n_qubits < 1) throw std::invalid_argument("build_standard_driver: need at least one qubit");
    DiagonalTerm shift;
    shift.energies.assign(std::size_t{1} << n_qubits, n_qubits / 2.0);
    TransverseFieldTerm field;
    field.coefficients.assign(static_cast<std::size_t>(n_qubits), -0.5);
    return {OperatorTerm(std::move(shift)), OperatorTerm(std::move(field))};
}

/// Projector driver 1 - |psi_un><psi_un|.
inline RankOneProjectorTerm build_projector_driver(int n_qubits) {
    return RankOneProjectorTerm{1.0, uniform_state(n_qubits)};
}

struct NmrMapping {
    HamiltonianSpec spec;
    double nu_h_hz = 0.0;
    double nu_c_hz = 0.0;
};

/// Two-qubit NMR mapping. The problem Hamiltonian is the free evolution
/// 2 pi [J Iz1 Iz2 + nu_H Iz1 + nu_C Iz2] with offsets nu = -w Gamma J xi,
/// and the driver is 2 pi w (Ix1 + Ix2) scheduled by the rf amplitude in Hz.
/// spin_half normalization uses I = sigma/2.
inline NmrMapping nmr_two_qubit_mapping(int w, const InputPattern& inp, double gamma,
                                        const NmrConfig& cfg) {
    if (inp.size() != 2) throw DimensionError("nmr_two_qubit_mapping: input must have length 2");
    if (w != 1 && w != -1) throw std::invalid_argument("nmr_two_qubit_mapping: w must be +1 or -1");

    const double f = (cfg.normalization == OperatorNormalization::spin_half) ? 0.5 : 1.0;
    const double two_pi = 2.0 * std::numbers::pi;

    NmrMapping m;
    m.nu_h_hz = -w * gamma * cfg.j_coupling_hz * inp[0];
    m.nu_c_hz = -w * gamma * cfg.j_coupling_hz * inp[1];

    DiagonalTerm problem;
    problem.energies.assign(4, 0.0);
    for (std::size_t k = 0; k < 4; ++k) {
        const int z1 = z_eigenvalue(k, 1, 2);
        const int z2 = z_eigenvalue(k, 2, 2);
        problem.energies[k] = two_pi * (cfg.j_coupling_hz * (f * z1) * (f * z2)
                                        + m.nu_h_hz * f * z1 + m.nu_c_hz * f * z2);
    }

    TransverseFieldTerm driver;
    driver.coefficients = {two_pi * w * f, two_pi * w * f};

    m.spec.n_qubits = 2;
    m.spec.problem = {OperatorTerm(std::move(problem))};
    m.spec.driver = {OperatorTerm(std::move(driver))};
    m.spec.units = Units::angular_frequency;
    return m;
}

} // namespace qamnet
