#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <utility>
#include <variant>
#include <vector>

#include "qamnet/hamiltonian.hpp"
#include "qamnet/state.hpp"

namespace qamnet {

/// Exact single-term exponential: returns e^{-i theta * term} |psi>.
inline StateVector apply_term_exponential(StateVector psi, const OperatorTerm& term, double theta) {
    std::visit(
        [&](const auto& t) {
            using T = std::decay_t<decltype(t)>;
            if constexpr (std::is_same_v<T, DiagonalTerm>) {
                if (t.energies.size() != psi.dim())
                    throw DimensionError("apply_term_exponential: diagonal size mismatch");
                for (std::size_t k = 0; k < psi.dim(); ++k)
                    psi.amplitudes[k] *= std::polar(1.0, -theta * t.energies[k]);
            } else if constexpr (std::is_same_v<T, TransverseFieldTerm>) {
                if (t.coefficients.size() != static_cast<std::size_t>(psi.n_qubits))
                    throw DimensionError("apply_term_exponential: coefficient count mismatch");
                // Per-qubit rotation cos(theta a) 1 - i sin(theta a) sigma_x;
                // terms on distinct qubits commute.
                for (int q = 0; q < psi.n_qubits; ++q) {
                    const double angle = theta * t.coefficients[static_cast<std::size_t>(q)];
                    if (angle == 0.0) continue;
                    const double c = std::cos(angle);
                    const Complex is(0.0, std::sin(angle));
                    const std::size_t mask = std::size_t{1} << (psi.n_qubits - 1 - q);
                    for (std::size_t k = 0; k < psi.dim(); ++k) {
                        if (k & mask) continue;
                        const Complex a0 = psi.amplitudes[k];
                        const Complex a1 = psi.amplitudes[k | mask];
                        psi.amplitudes[k] = c * a0 - is * a1;
                        psi.amplitudes[k | mask] = c * a1 - is * a0;
                    }
                }
            } else {
                // e^{-i theta c (1-P)} = e^{-i theta c} (psi - <v|psi> v) + <v|psi> v
                if (t.direction.dim() != psi.dim())
                    throw DimensionError("apply_term_exponential: projector dimension mismatch");
                Complex vp(0.0, 0.0);
                for (std::size_t k = 0; k < psi.dim(); ++k)
                    vp += std::conj(t.direction.amplitudes[k]) * psi.amplitudes[k];
                const Complex phase = std::polar(1.0, -theta * t.coefficient);
                for (std::size_t k = 0; k < psi.dim(); ++k) {
                    const Complex v = t.direction.amplitudes[k];
                    psi.amplitudes[k] = phase * (psi.amplitudes[k] - vp * v) + vp * v;
                }
            }
        },
        term);
    return psi;
}

/// One Trotter step of duration dt for the frozen Hamiltonian
/// lambda * driver + problem, via symmetric (Strang) splitting over the term
/// sequence: half-steps forward, a full step on the last term, half-steps back.
/// Reduces to driver/problem/driver when each group commutes internally.
inline StateVector trotter_step(StateVector psi, const HamiltonianSpec& spec,
                                double lambda, double dt) {
    if (dt <= 0.0) throw std::invalid_argument("trotter_step: dt must be positive");
    std::vector<std::pair<const OperatorTerm*, double>> seq;
    seq.reserve(spec.driver.size() + spec.problem.size());
    for (const OperatorTerm& t : spec.driver) seq.emplace_back(&t, lambda * dt);
    for (const OperatorTerm& t : spec.problem) seq.emplace_back(&t, dt);
    if (seq.empty()) return psi;
    for (std::size_t i = 0; i + 1 < seq.size(); ++i)
        psi = apply_term_exponential(std::move(psi), *seq[i].first, seq[i].second / 2.0);
    psi = apply_term_exponential(std::move(psi), *seq.back().first, seq.back().second);
    for (std::size_t i = seq.size() - 1; i-- > 0;)
        psi = apply_term_exponential(std::move(psi), *seq[i].first, seq[i].second / 2.0);
    return psi;
}

/// Dense materialization of lambda * driver + problem with a full
/// eigendecomposition. Independent of the structured evolution path; serves
/// as the verification oracle for Trotter error, gaps and exact eigenstates.
struct DenseOracle {
    Eigen::MatrixXcd hamiltonian;
    Eigen::VectorXd eigenvalues;   // ascending
    Eigen::MatrixXcd eigenvectors; // columns, matching eigenvalue order
};

namespace detail {

inline void add_term_dense(Eigen::MatrixXcd& h, const OperatorTerm& term, double scale, int n_qubits) {
    std::visit(
        [&](const auto& t) {
            using T = std::decay_t<decltype(t)>;
            if constexpr (std::is_same_v<T, DiagonalTerm>) {
                for (Eigen::Index k = 0; k < h.rows(); ++k)
                    h(k, k) += scale * t.energies[static_cast<std::size_t>(k)];
            } else if constexpr (std::is_same_v<T, TransverseFieldTerm>) {
                for (int q = 0; q < n_qubits; ++q) {
                    const double a = t.coefficients[static_cast<std::size_t>(q)];
                    const Eigen::Index mask = Eigen::Index{1} << (n_qubits - 1 - q);
                    for (Eigen::Index k = 0; k < h.rows(); ++k)
                        h(k, k ^ mask) += scale * a;
                }
            } else {
                const auto& v = t.direction.amplitudes;
                for (Eigen::Index k = 0; k < h.rows(); ++k) {
                    h(k, k) += scale * t.coefficient;
                    for (Eigen::Index l = 0; l < h.cols(); ++l)
                        h(k, l) -= scale * t.coefficient * v[static_cast<std::size_t>(k)]
                                   * std::conj(v[static_cast<std::size_t>(l)]);
                }
            }
        },
        term);
}

} // namespace detail

inline DenseOracle dense_oracle(const HamiltonianSpec& spec, double lambda) {
    if (spec.n_qubits > 12)
        throw CapacityError("dense_oracle: limited to 12 qubits");
    const Eigen::Index dim = Eigen::Index{1} << spec.n_qubits;
    DenseOracle oracle;
    oracle.hamiltonian = Eigen::MatrixXcd::Zero(dim, dim);
    for (const OperatorTerm& t : spec.driver)
        detail::add_term_dense(oracle.hamiltonian, t, lambda, spec.n_qubits);
    for (const OperatorTerm& t : spec.problem)
        detail::add_term_dense(oracle.hamiltonian, t, 1.0, spec.n_qubits);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(oracle.hamiltonian);
    oracle.eigenvalues = solver.eigenvalues();
    oracle.eigenvectors = solver.eigenvectors();
    return oracle;
}

/// Exact propagator e^{-i H t} from the oracle's eigendecomposition.
inline Eigen::MatrixXcd dense_propagator(const DenseOracle& oracle, double t) {
    const Eigen::Index dim = oracle.eigenvalues.size();
    Eigen::VectorXcd phases(dim);
    for (Eigen::Index k = 0; k < dim; ++k)
        phases(k) = std::polar(1.0, -oracle.eigenvalues(k) * t);
    return oracle.eigenvectors * phases.asDiagonal() * oracle.eigenvectors.adjoint();
}

inline StateVector apply_dense(const Eigen::MatrixXcd& op, const StateVector& psi) {
    Eigen::Map<const Eigen::VectorXcd> in(psi.amplitudes.data(),
                                          static_cast<Eigen::Index>(psi.dim()));
    Eigen::VectorXcd out = op * in;
    StateVector result;
    result.n_qubits = psi.n_qubits;
    result.amplitudes.assign(out.data(), out.data() + out.size());
    return result;
}

} // namespace qamnet
