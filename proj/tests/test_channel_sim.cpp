#include <cmath>

#include "doctest.h"
#include "ustc/channel_sim.hpp"
#include "ustc/constellation.hpp"
#include "ustc/diversity.hpp"

using namespace ustc;

namespace {

Constellation isotropic_pair() {
    CMatrix f1(4, 2), f2(4, 2);
    f1.at(0, 0) = 1;
    f1.at(1, 1) = 1;
    f2.at(2, 0) = 1;
    f2.at(3, 1) = 1;
    return Constellation::general(4, 2, {f1, f2});
}

} // namespace

TEST_CASE("single-codeword decoding is always correct") {
    std::vector<CMatrix> one = {CMatrix::identity(2)};
    const auto c = Constellation::special(2, std::move(one));
    const ChannelConfig cfg(4, 2, 2, 2.0);
    RandomStream rng(1);
    for (int t = 0; t < 20; ++t) {
        const auto [sent, decoded] = transmit_decode_trial(c, cfg, rng);
        CHECK(sent == 0);
        CHECK(decoded == 0);
    }
}

TEST_CASE("noiseless decoding recovers the sent codeword for fully diverse codes") {
    const auto c = builtin("optimal3dim2").to_general();
    RandomStream rng(2);
    for (int t = 0; t < 100; ++t) {
        const int sent = static_cast<int>(rng.next_below(3));
        CMatrix h(2, 2);
        for (auto& z : h.entries()) z = rng.next_cnormal();
        const CMatrix r = c.elements[static_cast<std::size_t>(sent)] * h; // W = 0
        CHECK(ml_decode(c, r) == sent);
    }
}

TEST_CASE("duplicated codewords error half the time") {
    std::vector<CMatrix> dup = {CMatrix::identity(2), CMatrix::identity(2)};
    const auto c = Constellation::special(2, std::move(dup));
    SimConfig sim;
    sim.rho_db_grid = {10.0};
    sim.trials_per_point = 4000;
    sim.seed = 4;
    const auto res = simulate_bler(c, sim);
    CHECK(res.points[0].bler == doctest::Approx(0.5).epsilon(0.05));
}

TEST_CASE("simulation results are deterministic and respect the grid") {
    const auto c = builtin("optimal3dim2");
    SimConfig sim;
    sim.rho_db_grid = {0.0, 6.0};
    sim.trials_per_point = 500;
    sim.seed = 99;
    const auto a = simulate_bler(c, sim);
    const auto b = simulate_bler(c, sim);
    REQUIRE(a.points.size() == 2);
    for (std::size_t i = 0; i < 2; ++i) {
        CHECK(a.points[i].errors == b.points[i].errors);
        CHECK(a.points[i].trials == 500);
        CHECK(a.points[i].wilson_lo <= a.points[i].bler);
        CHECK(a.points[i].bler <= a.points[i].wilson_hi);
    }
    SUBCASE("single point, single trial") {
        SimConfig tiny;
        tiny.rho_db_grid = {5.0};
        tiny.trials_per_point = 1;
        tiny.seed = 1;
        const auto r = simulate_bler(c, tiny);
        CHECK(r.points[0].trials == 1);
    }
    SUBCASE("early stop on max_errors") {
        SimConfig stop;
        stop.rho_db_grid = {-20.0};
        stop.trials_per_point = 100000;
        stop.seed = 1;
        stop.max_errors = 50;
        const auto r = simulate_bler(c, stop);
        CHECK(r.points[0].errors == 50);
        CHECK(r.points[0].trials < 100000);
    }
}

TEST_CASE("block error rate decreases with SNR for a fully diverse code") {
    const auto c = builtin("optimal3dim2");
    SimConfig sim;
    sim.rho_db_grid = {0.0, 6.0, 12.0};
    sim.trials_per_point = 4000;
    sim.seed = 12;
    const auto res = simulate_bler(c, sim);
    CHECK(res.points[0].bler > res.points[1].bler);
    CHECK(res.points[1].bler > res.points[2].bler);
}

TEST_CASE("left unitary factors leave the error statistics unchanged") {
    const auto c = builtin("optimal3dim2").to_general();
    RandomStream prng(31);
    const CMatrix p = random_unitary(4, prng).mat();
    std::vector<CMatrix> moved;
    for (const auto& e : c.elements) moved.push_back(p * e);
    const auto c2 = Constellation::general(4, 2, std::move(moved));
    SimConfig sim;
    sim.rho_db_grid = {4.0};
    sim.trials_per_point = 10000;
    sim.seed = 77;
    const auto r1 = simulate_bler(c, sim);
    const auto r2 = simulate_bler(c2, sim);
    // Matched seeds, statistically equivalent: overlapping 95% intervals.
    CHECK(r1.points[0].wilson_lo <= r2.points[0].wilson_hi);
    CHECK(r2.points[0].wilson_lo <= r1.points[0].wilson_hi);
}

TEST_CASE("pairwise error estimate") {
    const ChannelConfig cfg(4, 2, 2, 2.0);
    SUBCASE("identical frames give one half") {
        const auto c = isotropic_pair();
        const double p = pairwise_error_estimate(c.elements[0], c.elements[0], cfg, 4000, 5);
        CHECK(p == doctest::Approx(0.5).epsilon(0.05));
    }
    SUBCASE("vanishing SNR gives one half for any pair") {
        const auto c = isotropic_pair();
        const ChannelConfig low(4, 2, 2, 1e-9);
        const double p = pairwise_error_estimate(c.elements[0], c.elements[1], low, 4000, 6);
        CHECK(p == doctest::Approx(0.5).epsilon(0.05));
    }
    SUBCASE("matches the exact integral within 3 standard errors") {
        const auto c = isotropic_pair();
        const double exact = pair_exact(pair_deltas(c, 0, 1), cfg);
        const long trials = 100000;
        const double est = pairwise_error_estimate(c.elements[0], c.elements[1], cfg, trials, 7);
        const double se = std::sqrt(exact * (1.0 - exact) / trials);
        CHECK(std::abs(est - exact) <= 3.0 * se);
        // and stays below the Chernoff value
        CHECK(est <= pair_chernoff(pair_deltas(c, 0, 1), cfg) + 3.0 * se);
    }
}

TEST_CASE("wilson interval sanity") {
    const auto [lo0, hi0] = wilson_interval(0, 100);
    CHECK(lo0 <= 1e-15);
    CHECK(hi0 > 0.0);
    const auto [lo1, hi1] = wilson_interval(100, 100);
    CHECK(hi1 == 1.0);
    const auto [lo, hi] = wilson_interval(50, 100);
    CHECK(lo == doctest::Approx(0.40).epsilon(0.02));
    CHECK(hi == doctest::Approx(0.60).epsilon(0.02));
}
