#include <doctest.h>

#include <random>

#include "qamnet/hopfield.hpp"

using namespace qamnet;

namespace {

Pattern random_pattern(int n, std::mt19937_64& rng) {
    std::vector<int> v(static_cast<std::size_t>(n));
    for (int& x : v) x = (rng() & 1) ? 1 : -1;
    return Pattern(std::move(v));
}

} // namespace

TEST_CASE("async update") {
    const WeightMatrix w = WeightMatrix::single_coupling(-1.0);
    SUBCASE("order (1,2): neuron 1 flips first, neuron 2 then holds") {
        const HopfieldState next = update_async({Pattern({1, 1}), 0}, w, {1, 2});
        CHECK(next.spins == Pattern({-1, 1}));
        CHECK(next.time_step == 1);
    }
    SUBCASE("stored pattern of a p=1 memory is a fixed point under any order") {
        std::mt19937_64 rng(5);
        for (int n = 2; n <= 10; ++n) {
            const Pattern xi = random_pattern(n, rng);
            const WeightMatrix wn = hebbian_weights(MemorySet({xi}));
            std::vector<int> order(static_cast<std::size_t>(n));
            std::iota(order.begin(), order.end(), 1);
            CHECK(update_async({xi, 0}, wn, order).spins == xi);
            std::shuffle(order.begin(), order.end(), rng);
            CHECK(update_async({xi, 0}, wn, order).spins == xi);
        }
    }
    SUBCASE("zero weights keep every spin (sgn(0) convention)") {
        CHECK(update_async({Pattern({1, -1, 1}), 0}, WeightMatrix(3), {3, 1, 2}).spins
              == Pattern({1, -1, 1}));
    }
    CHECK_THROWS_AS(update_async({Pattern({1, 1}), 0}, w, {1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(update_async({Pattern({1, 1}), 0}, w, {0, 2}), std::invalid_argument);
}

TEST_CASE("sync update") {
    const WeightMatrix w = WeightMatrix::single_coupling(-1.0);
    SUBCASE("both neurons flip simultaneously") {
        CHECK(update_sync({Pattern({1, 1}), 0}, w).spins == Pattern({-1, -1}));
    }
    SUBCASE("two applications return to the start (period-2 cycle)") {
        const HopfieldState s1 = update_sync({Pattern({1, 1}), 0}, w);
        CHECK(update_sync(s1, w).spins == Pattern({1, 1}));
    }
    SUBCASE("stored pattern is a fixed point") {
        std::mt19937_64 rng(29);
        for (int n = 2; n <= 10; ++n) {
            const Pattern xi = random_pattern(n, rng);
            CHECK(update_sync({xi, 0}, hebbian_weights(MemorySet({xi}))).spins == xi);
        }
    }
}

TEST_CASE("recall") {
    const WeightMatrix w = WeightMatrix::single_coupling(-1.0);
    SUBCASE("async from a frustrated state reaches one of the two minima") {
        for (std::uint64_t seed = 0; seed < 8; ++seed) {
            const RecallOutcome out = recall(Pattern({1, 1}), w, UpdateMode::async, 100, seed);
            CHECK(out.kind == RecallKind::fixed_point);
            CHECK(out.period == 1);
            const Pattern& fixed = out.trajectory.back().spins;
            CHECK((fixed == Pattern({-1, 1}) || fixed == Pattern({1, -1})));
        }
    }
    SUBCASE("stored pattern recalls itself immediately") {
        const Pattern xi({1, -1, 1, -1});
        const RecallOutcome out =
            recall(xi, hebbian_weights(MemorySet({xi})), UpdateMode::async, 10, 1);
        CHECK(out.kind == RecallKind::fixed_point);
        CHECK(out.trajectory.size() == 1);
        CHECK(out.trajectory.front().spins == xi);
    }
    SUBCASE("sync 2-cycle is detected") {
        const RecallOutcome out = recall(Pattern({1, 1}), w, UpdateMode::sync, 100, 0);
        CHECK(out.kind == RecallKind::cycle);
        CHECK(out.period == 2);
    }
    SUBCASE("max_iters exhaustion reports the trajectory") {
        // A sync 2-cycle cannot be detected within a single allowed step.
        CHECK_THROWS_AS(recall(Pattern({1, 1}), w, UpdateMode::sync, 1, 0), RecallNotConverged);
        try {
            recall(Pattern({1, 1}), w, UpdateMode::sync, 1, 0);
        } catch (const RecallNotConverged& e) {
            CHECK(e.trajectory.size() == 2);
        }
    }
}

TEST_CASE("async energy monotonicity") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 9);
        std::vector<Pattern> pats{random_pattern(n, rng)};
        Pattern extra = random_pattern(n, rng);
        if (extra != pats[0]) pats.push_back(extra);
        const WeightMatrix w = hebbian_weights(MemorySet(std::move(pats)));
        const RecallOutcome out = recall(random_pattern(n, rng), w, UpdateMode::async, 1 << n, rng());
        double prev = hopfield_energy(out.trajectory.front().spins, w);
        for (std::size_t t = 1; t < out.trajectory.size(); ++t) {
            const double e = hopfield_energy(out.trajectory[t].spins, w);
            CHECK(e <= prev + 1e-12);
            prev = e;
        }
        CHECK(out.kind == RecallKind::fixed_point);
    }
}

TEST_CASE("spin-flip symmetry of recall") {
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 7);
        const WeightMatrix w = hebbian_weights(MemorySet({random_pattern(n, rng)}));
        const Pattern inp = random_pattern(n, rng);
        const std::uint64_t seed = rng();
        const RecallOutcome a = recall(inp, w, UpdateMode::async, 1 << n, seed);
        const RecallOutcome b = recall(inp.negated(), w, UpdateMode::async, 1 << n, seed);
        REQUIRE(a.trajectory.size() == b.trajectory.size());
        for (std::size_t t = 0; t < a.trajectory.size(); ++t)
            CHECK(a.trajectory[t].spins.negated() == b.trajectory[t].spins);
    }
}
