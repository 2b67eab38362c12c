#include <doctest.h>

#include <random>

#include "qamnet/analysis.hpp"

using namespace qamnet;

namespace {

const MemorySet& worked_example_memory() {
    static const MemorySet mem({Pattern({-1, -1, -1, -1, -1}), Pattern({-1, -1, -1, 1, -1}),
                                Pattern({-1, -1, 1, -1, 1})});
    return mem;
}

const InputPattern& worked_example_input() {
    static const InputPattern inp({-1, -1, -1, -1, -1});
    return inp;
}

Pattern random_pattern(int n, std::mt19937_64& rng) {
    std::vector<int> v(static_cast<std::size_t>(n));
    for (int& x : v) x = (rng() & 1) ? 1 : -1;
    return Pattern(std::move(v));
}

} // namespace

TEST_CASE("analytic gamma bounds") {
    CHECK(gamma_bound_coupling(2, 1) == doctest::Approx(0.75));
    CHECK(gamma_bound_coupling(4, 4) == doctest::Approx(0.5));
    CHECK(gamma_bound_coupling(100, 1) == doctest::Approx(0.995));
    CHECK_THROWS_AS(gamma_bound_coupling(2, 3), std::invalid_argument);

    CHECK(gamma_bound_projector(5) == doctest::Approx(0.1));
    CHECK(gamma_bound_projector(1) == doctest::Approx(0.5));
    CHECK(gamma_bound_projector(10) == doctest::Approx(0.05));
    CHECK_THROWS_AS(gamma_bound_projector(0), std::invalid_argument);
}

TEST_CASE("brute-force bound verification") {
    SUBCASE("p=1, N=2, matching partial input: no witness below the bound") {
        const MemorySet mem({Pattern({-1, 1})});
        const BoundReport r = verify_bound_brute_force(mem, InputPattern({-1, 0}),
                                                       MemoryKind::coupling,
                                                       {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7});
        CHECK(r.gamma_upper == doctest::Approx(0.75));
        CHECK(!r.witness.has_value());
    }
    SUBCASE("worked example with projector_a at gamma below 1/(2n)") {
        const BoundReport r = verify_bound_brute_force(worked_example_memory(), worked_example_input(),
                                                       MemoryKind::projector_a, {0.05});
        CHECK(r.gamma_upper == doctest::Approx(0.1));
        CHECK(!r.witness.has_value());
    }
    SUBCASE("a violating gamma produces a witness") {
        // Far above the bound the completing non-stored state undercuts P_min.
        const MemorySet mem({Pattern({-1, 1, 1, 1, 1})});
        const InputPattern inp({-1, -1, -1, -1, -1});
        const BoundReport r =
            verify_bound_brute_force(mem, inp, MemoryKind::projector_a, {2.0});
        REQUIRE(r.witness.has_value());
        CHECK(r.witness->gamma == doctest::Approx(2.0));
        CHECK(r.witness->state_energy < r.witness->reference_energy);
    }
    SUBCASE("coupling kind refuses p > 1") {
        const MemorySet mem({Pattern({-1, 1}), Pattern({1, 1})});
        CHECK_THROWS_AS(
            verify_bound_brute_force(mem, InputPattern({-1, 0}), MemoryKind::coupling, {0.1}),
            std::invalid_argument);
    }
}

TEST_CASE("perturbation report for the worked example") {
    const PerturbationReport r = perturbation_report(worked_example_memory(), worked_example_input(), 0.1);
    CHECK(r.mean_hamming == doctest::Approx(1.0));
    CHECK(r.deviations[0] == doctest::Approx(-1.0));
    CHECK(r.deviations[1] == doctest::Approx(0.0));
    CHECK(r.deviations[2] == doctest::Approx(1.0));
    CHECK(r.variance == doctest::Approx(2.0 / 3.0));
    CHECK(r.e0_first == doctest::Approx(-3.0)); // -n + 2<h> = -5 + 2
    CHECK(r.e0_second == doctest::Approx(-8.0 / 3.0));
    CHECK(r.mean_scalar == doctest::Approx(3.0));

    // Normalized squares of (1.2, 1.0, 0.8)/sqrt(3).
    CHECK(r.first_order_probabilities[0] == doctest::Approx(1.44 / 3.08));
    CHECK(r.first_order_probabilities[1] == doctest::Approx(1.00 / 3.08));
    CHECK(r.first_order_probabilities[2] == doctest::Approx(0.64 / 3.08));

    double dev_sum = 0.0, prob_sum = 0.0;
    for (double d : r.deviations) dev_sum += d;
    for (double p : r.first_order_probabilities) prob_sum += p;
    CHECK(dev_sum == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(prob_sum == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.mean_scalar == doctest::Approx(worked_example_input().known_count() - 2 * r.mean_hamming));
}

TEST_CASE("equidistant patterns get equal first-order amplitudes") {
    const MemorySet mem({Pattern({-1, -1, 1}), Pattern({-1, 1, -1}), Pattern({1, -1, -1})});
    const PerturbationReport r = perturbation_report(mem, InputPattern({-1, -1, -1}), 0.2);
    CHECK(r.first_order_amplitudes[0] == doctest::Approx(r.first_order_amplitudes[1]));
    CHECK(r.first_order_amplitudes[1] == doctest::Approx(r.first_order_amplitudes[2]));
}

TEST_CASE("similarity ranking") {
    SUBCASE("worked example, exact method") {
        const auto ranking =
            similarity_ranking(worked_example_memory(), worked_example_input(), 0.1, RankingMethod::exact);
        REQUIRE(ranking.size() == 3);
        CHECK(ranking[0].first == Pattern({-1, -1, -1, -1, -1}));
        CHECK(ranking[0].second == doctest::Approx(0.476).epsilon(0.01));
        CHECK(ranking[1].second == doctest::Approx(0.308).epsilon(0.01));
        CHECK(ranking[2].second == doctest::Approx(0.216).epsilon(0.01));
    }
    SUBCASE("gamma=0 distributes 1/p to every stored pattern") {
        const auto ranking =
            similarity_ranking(worked_example_memory(), worked_example_input(), 0.0, RankingMethod::exact);
        for (const auto& [pattern, prob] : ranking) CHECK(prob == doctest::Approx(1.0 / 3.0));
    }
    SUBCASE("p=1 keeps probability 1 below the bound") {
        const MemorySet mem({Pattern({1, -1, 1})});
        const auto ranking =
            similarity_ranking(mem, InputPattern({1, 0, 0}), 0.3, RankingMethod::exact);
        CHECK(ranking[0].second == doctest::Approx(1.0));
    }
    SUBCASE("smaller Hamming distance gets larger probability at small gamma") {
        std::mt19937_64 rng(53);
        for (int trial = 0; trial < 30; ++trial) {
            const int n = 3 + static_cast<int>(rng() % 6);
            std::vector<Pattern> pats;
            const int p = 2 + static_cast<int>(rng() % 3);
            while (static_cast<int>(pats.size()) < p) {
                Pattern cand = random_pattern(n, rng);
                if (std::find(pats.begin(), pats.end(), cand) == pats.end())
                    pats.push_back(std::move(cand));
            }
            const MemorySet mem(std::move(pats));
            std::vector<int> iv(static_cast<std::size_t>(n), 0);
            const int known = 1 + static_cast<int>(rng() % n);
            for (int i = 0; i < known; ++i) iv[static_cast<std::size_t>(i)] = (rng() & 1) ? 1 : -1;
            const InputPattern inp(std::move(iv));
            const double gamma = 0.5 * gamma_bound_projector(inp.known_count());
            const auto ranking = similarity_ranking(mem, inp, gamma, RankingMethod::exact);
            for (const auto& [pa, prob_a] : ranking) {
                for (const auto& [pb, prob_b] : ranking) {
                    if (hamming_distance(inp, pa) < hamming_distance(inp, pb))
                        CHECK(prob_a > prob_b);
                }
            }
        }
    }
    SUBCASE("first-order method matches the report") {
        const auto ranking = similarity_ranking(worked_example_memory(), worked_example_input(), 0.1,
                                                RankingMethod::first_order);
        CHECK(ranking[0].second == doctest::Approx(1.44 / 3.08));
    }
}

TEST_CASE("first-order deviation vanishes quadratically in gamma") {
    double prev = -1.0;
    for (double gamma : {0.08, 0.04, 0.02, 0.01}) {
        const auto exact =
            similarity_ranking(worked_example_memory(), worked_example_input(), gamma, RankingMethod::exact);
        const auto first = similarity_ranking(worked_example_memory(), worked_example_input(), gamma,
                                              RankingMethod::first_order);
        double dev = 0.0;
        for (std::size_t i = 0; i < exact.size(); ++i)
            dev = std::max(dev, std::abs(exact[i].second - first[i].second));
        if (prev >= 0.0) CHECK(prev / dev == doctest::Approx(4.0).epsilon(0.35));
        prev = dev;
    }
}
