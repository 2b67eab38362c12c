#pragma once

#include <json.hpp>

#include "qamnet/analysis.hpp"
#include "qamnet/anneal.hpp"
#include "qamnet/hamiltonian.hpp"
#include "qamnet/hopfield.hpp"
#include "qamnet/patterns.hpp"
#include "qamnet/state.hpp"

// JSON wire formats. Patterns are plain integer arrays, memory sets arrays of
// arrays, amplitudes [re, im] pairs.
//
// Value-constructed types without default constructors (de)serialize through
// adl_serializer specializations, which must precede any use below.

namespace nlohmann {

template <>
struct adl_serializer<qamnet::Pattern> {
    static qamnet::Pattern from_json(const json& j) {
        return qamnet::Pattern(j.get<std::vector<int>>());
    }
    static void to_json(json& j, const qamnet::Pattern& p) { j = p.values(); }
};

template <>
struct adl_serializer<qamnet::InputPattern> {
    static qamnet::InputPattern from_json(const json& j) {
        return qamnet::InputPattern(j.get<std::vector<int>>());
    }
    static void to_json(json& j, const qamnet::InputPattern& p) { j = p.values(); }
};

template <>
struct adl_serializer<qamnet::MemorySet> {
    static qamnet::MemorySet from_json(const json& j) {
        return qamnet::MemorySet(j.get<std::vector<qamnet::Pattern>>());
    }
    static void to_json(json& j, const qamnet::MemorySet& m) {
        j = json::array();
        for (const qamnet::Pattern& p : m.patterns()) j.push_back(p);
    }
};

template <>
struct adl_serializer<qamnet::AnnealSchedule> {
    // Accepts the short wire keys T/L and the spelled-out total_time/steps.
    static qamnet::AnnealSchedule from_json(const json& j) {
        const json& t = j.contains("T") ? j.at("T") : j.at("total_time");
        const json& l = j.contains("L") ? j.at("L") : j.at("steps");
        return qamnet::AnnealSchedule(t.get<double>(), l.get<int>(), j.at("lambda_max").get<double>());
    }
    static void to_json(json& j, const qamnet::AnnealSchedule& s) {
        j = json{{"T", s.total_time}, {"L", s.steps}, {"lambda_max", s.lambda_max},
                 {"shape", "linear"}};
    }
};

} // namespace nlohmann

namespace qamnet {

using nlohmann::json;

inline void to_json(json& j, const StateVector& psi) {
    json amps = json::array();
    for (const Complex& a : psi.amplitudes) amps.push_back({a.real(), a.imag()});
    j = json{{"n_qubits", psi.n_qubits}, {"amplitudes", std::move(amps)}};
}
inline void from_json(const json& j, StateVector& psi) {
    psi.n_qubits = j.at("n_qubits").get<int>();
    psi.amplitudes.clear();
    for (const auto& pair : j.at("amplitudes"))
        psi.amplitudes.emplace_back(pair.at(0).get<double>(), pair.at(1).get<double>());
}

inline void to_json(json& j, const MeasurementDistribution& d) {
    j = json{{"probabilities", d.probabilities}, {"labels", json::array()}};
    for (const Pattern& p : d.labels) j["labels"].push_back(p);
}

inline void to_json(json& j, const RecallOutcome& r) {
    json traj = json::array();
    for (const HopfieldState& s : r.trajectory) traj.push_back(s.spins);
    j = json{{"kind", r.kind == RecallKind::fixed_point ? "fixed_point" : "cycle"},
             {"period", r.period},
             {"trajectory", std::move(traj)}};
}

inline void to_json(json& j, const NmrConfig& c) {
    j = json{{"J_hz", c.j_coupling_hz},
             {"A_max_hz", c.a_max_hz},
             {"T1_H_s", c.t1_h_s},
             {"T1_C_s", c.t1_c_s},
             {"T2_H_s", c.t2_h_s},
             {"T2_C_s", c.t2_c_s},
             {"operator_normalization",
              c.normalization == OperatorNormalization::spin_half ? "spin_half" : "pauli"}};
}
inline void from_json(const json& j, NmrConfig& c) {
    c = NmrConfig{};
    if (j.contains("J_hz")) c.j_coupling_hz = j.at("J_hz").get<double>();
    if (j.contains("A_max_hz")) c.a_max_hz = j.at("A_max_hz").get<double>();
    if (j.contains("T1_H_s")) c.t1_h_s = j.at("T1_H_s").get<double>();
    if (j.contains("T1_C_s")) c.t1_c_s = j.at("T1_C_s").get<double>();
    if (j.contains("T2_H_s")) c.t2_h_s = j.at("T2_H_s").get<double>();
    if (j.contains("T2_C_s")) c.t2_c_s = j.at("T2_C_s").get<double>();
    if (j.contains("operator_normalization")) {
        const auto s = j.at("operator_normalization").get<std::string>();
        if (s == "spin_half")
            c.normalization = OperatorNormalization::spin_half;
        else if (s == "pauli")
            c.normalization = OperatorNormalization::pauli;
        else
            throw std::invalid_argument("operator_normalization: expected spin_half or pauli");
    }
}

inline void to_json(json& j, const OperatorTerm& term) {
    std::visit(
        [&](const auto& t) {
            using T = std::decay_t<decltype(t)>;
            if constexpr (std::is_same_v<T, DiagonalTerm>) {
                j = json{{"kind", "diagonal"}, {"energies", t.energies}};
            } else if constexpr (std::is_same_v<T, TransverseFieldTerm>) {
                j = json{{"kind", "transverse_field"}, {"coefficients", t.coefficients}};
            } else {
                j = json{{"kind", "rank_one_projector"},
                         {"coefficient", t.coefficient},
                         {"direction", t.direction}};
            }
        },
        term);
}

inline void to_json(json& j, const HamiltonianSpec& spec) {
    j = json{{"n_qubits", spec.n_qubits},
             {"units", spec.units == Units::dimensionless ? "dimensionless" : "angular_frequency"},
             {"driver", spec.driver},
             {"problem", spec.problem}};
}

inline void to_json(json& j, const GapScan& g) {
    json pts = json::array();
    for (const GapPoint& p : g.points) pts.push_back({{"s", p.s}, {"gap", p.gap}});
    j = json{{"points", std::move(pts)}, {"min_gap", g.min_gap}, {"min_s", g.min_s}};
}

inline void to_json(json& j, const AnnealResult& r) {
    json recognized = json::array();
    for (const auto& [pattern, prob] : r.recognized)
        recognized.push_back({{"pattern", pattern}, {"probability", prob}});
    j = json{{"distribution", r.distribution},
             {"recognized", std::move(recognized)},
             {"final_state", r.final_state}};
    if (r.fidelity_vs_expected) j["fidelity_vs_expected"] = *r.fidelity_vs_expected;
    if (r.gap_trace) j["gap_trace"] = *r.gap_trace;
}

inline void to_json(json& j, const PerturbationReport& r) {
    j = json{{"gamma", r.gamma},
             {"mean_hamming", r.mean_hamming},
             {"deviations", r.deviations},
             {"scalar_products", r.scalar_products},
             {"mean_scalar", r.mean_scalar},
             {"variance", r.variance},
             {"e0_first", r.e0_first},
             {"e0_second", r.e0_second},
             {"first_order_amplitudes", r.first_order_amplitudes},
             {"first_order_probabilities", r.first_order_probabilities},
             // Eq-style amplitudes are stated up to proportionality; squared
             // weights here are normalized after truncation.
             {"normalization", "post_truncation"}};
}

inline void to_json(json& j, const BoundReport& r) {
    j = json{{"kind", r.kind == MemoryKind::coupling ? "coupling" : "projector_a"},
             {"gamma_upper", r.gamma_upper}};
    if (r.witness) {
        j["witness"] = json{{"gamma", r.witness->gamma},
                            {"state", r.witness->state},
                            {"state_energy", r.witness->state_energy},
                            {"reference_energy", r.witness->reference_energy}};
    }
}

} // namespace qamnet
