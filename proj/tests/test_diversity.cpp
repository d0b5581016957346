#include <cmath>

#include "doctest.h"
#include "ustc/constellation.hpp"
#include "ustc/diversity.hpp"
#include "ustc/rng.hpp"

using namespace ustc;

namespace {

Constellation antipodal_pair() {
    std::vector<CMatrix> v = {CMatrix::identity(2), CMatrix::identity(2) * cplx(-1.0)};
    return Constellation::special(2, std::move(v));
}

// Two frames with orthogonal column spaces: all deltas vanish.
Constellation isotropic_pair() {
    CMatrix f1(4, 2), f2(4, 2);
    f1.at(0, 0) = 1;
    f1.at(1, 1) = 1;
    f2.at(2, 0) = 1;
    f2.at(3, 1) = 1;
    return Constellation::general(4, 2, {f1, f2});
}

Constellation random_special(int L, int M, RandomStream& rng) {
    std::vector<CMatrix> v;
    for (int i = 0; i < L; ++i) v.push_back(random_unitary(M, rng).mat());
    return Constellation::special(M, std::move(v));
}

} // namespace

TEST_CASE("product and sum of the antipodal pair are 1") {
    const auto rep = diversity_report(antipodal_pair());
    CHECK(rep.product == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rep.sum == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rep.pairwise_count == 1);
}

TEST_CASE("builtin metric values") {
    const auto sl = diversity_report(builtin("sl2f5"));
    const double exact_sl = 0.5 * std::sqrt((3.0 - std::sqrt(5.0)) / 2.0);
    CHECK(sl.product == doctest::Approx(exact_sl).epsilon(1e-9));
    CHECK(sl.sum == doctest::Approx(exact_sl).epsilon(1e-9));
    CHECK(sl.product == doctest::Approx(0.3090).epsilon(1e-3));

    const auto orth = diversity_report(builtin("orthogonal121"));
    CHECK(orth.product == doctest::Approx(0.1992).epsilon(5e-4));
    CHECK(orth.sum == doctest::Approx(0.1992).epsilon(5e-4));

    const auto nd = diversity_report(builtin("numderived121"));
    CHECK(nd.sum == doctest::Approx(0.3886).epsilon(1e-3));
    // The published table prints the raw minimum determinant for this entry;
    // the Definition-1 product is its halved square root.
    const double min_det = 4.0 * nd.product * nd.product;
    CHECK(min_det == doctest::Approx(0.0278).epsilon(1e-2));
    CHECK(nd.product == doctest::Approx(0.08342).epsilon(1e-3));

    const auto g = diversity_report(builtin("g214"));
    CHECK(g.product == doctest::Approx(0.3851).epsilon(3e-4));
}

TEST_CASE("argmin pair tie-breaking is lexicographic") {
    // optimal3dim2 has all three pairs at the same distance.
    const auto rep = diversity_report(builtin("optimal3dim2"));
    CHECK(rep.argmin_product == std::pair<int, int>{0, 1});
    CHECK(rep.argmin_sum == std::pair<int, int>{0, 1});
}

TEST_CASE("chernoff diversity") {
    SUBCASE("fully isotropic closed form") {
        // rho T / M = 4 -> rho_tilde = 0.8; D = (1/2) 1.8^{-NM}.
        const ChannelConfig cfg(4, 2, 2, 2.0);
        CHECK(cfg.rho_tilde() == doctest::Approx(0.8).epsilon(1e-12));
        const double expect = 0.5 * std::pow(1.8, -4.0);
        CHECK(chernoff_diversity(isotropic_pair(), cfg) == doctest::Approx(expect).epsilon(1e-12));
    }
    SUBCASE("duplicated element degenerates to 1/2 at any rho") {
        std::vector<CMatrix> v = {CMatrix::identity(2), CMatrix::identity(2),
                                  CMatrix::identity(2) * cplx(-1.0)};
        const auto c = Constellation::special(2, std::move(v));
        for (double rho : {0.1, 1.0, 100.0})
            CHECK(chernoff_diversity(c, ChannelConfig(4, 2, 2, rho)) ==
                  doctest::Approx(0.5).epsilon(1e-12));
    }
    SUBCASE("non-increasing in rho on a dense grid") {
        const auto c = builtin("sl2f5");
        double prev = 1.0;
        for (double db = -10.0; db <= 25.0; db += 0.5) {
            const double v = chernoff_diversity(c, ChannelConfig(4, 2, 2, db_to_linear(db)));
            CHECK(v <= prev + 1e-15);
            prev = v;
        }
    }
}

TEST_CASE("exact pairwise integral") {
    SUBCASE("identical pair integrates to 1/2") {
        const std::vector<double> deltas = {1.0, 1.0};
        CHECK(pair_exact(deltas, ChannelConfig(4, 2, 2, 5.0)) ==
              doctest::Approx(0.5).epsilon(1e-10));
    }
    SUBCASE("isotropic pair matches a 1e6-point trapezoid oracle") {
        const ChannelConfig cfg(4, 2, 2, 2.0);
        const double got = exact_diversity(isotropic_pair(), cfg);
        // Oracle: trapezoid rule on the same transformed integrand.
        const double rt = cfg.rho_tilde();
        const long n = 1'000'000;
        double acc = 0.0;
        for (long i = 0; i <= n; ++i) {
            const double theta = -M_PI / 2 + M_PI * i / n;
            const double cc = std::cos(theta) * std::cos(theta);
            const double f = std::pow(cc / (cc + rt), 4.0);
            acc += (i == 0 || i == n) ? 0.5 * f : f;
        }
        const double oracle = acc * (M_PI / n) / (2.0 * M_PI);
        CHECK(got == doctest::Approx(oracle).epsilon(1e-8));
        CHECK(got > 0.0);
        CHECK(got < 0.047630);
    }
    SUBCASE("exact never exceeds Chernoff for random pairs") {
        RandomStream rng(59);
        for (int trial = 0; trial < 20; ++trial) {
            const CMatrix f1 = random_frame(4, 2, rng);
            const CMatrix f2 = random_frame(4, 2, rng);
            const auto c = Constellation::general(4, 2, {f1, f2});
            for (double db : {-5.0, 0.0, 10.0, 20.0}) {
                const ChannelConfig cfg(4, 2, 2, db_to_linear(db));
                const auto deltas = pair_deltas(c, 0, 1);
                CHECK(pair_exact(deltas, cfg) <= pair_chernoff(deltas, cfg) + 1e-12);
            }
        }
    }
}

TEST_CASE("diversity function curve") {
    SUBCASE("isotropic sweep matches the closed form at every point") {
        const auto c = isotropic_pair();
        std::vector<double> grid;
        for (double db = 0.0; db <= 12.0; db += 2.0) grid.push_back(db);
        const auto curve = diversity_function_curve(c, 2, grid, false);
        REQUIRE(curve.size() == grid.size());
        for (const auto& pt : curve) {
            const ChannelConfig cfg(4, 2, 2, pt.rho);
            const double expect = 0.5 * std::pow(1.0 + cfg.rho_tilde(), -4.0);
            CHECK(pt.value == doctest::Approx(expect).epsilon(1e-12));
        }
    }
    SUBCASE("sl2f5 exact curve sits below the Chernoff curve pointwise") {
        const auto c = builtin("sl2f5");
        const std::vector<double> grid = {0.0, 6.0, 12.0, 18.0};
        const auto exact = diversity_function_curve(c, 2, grid, true);
        const auto chern = diversity_function_curve(c, 2, grid, false);
        for (std::size_t i = 0; i < grid.size(); ++i)
            CHECK(exact[i].value <= chern[i].value + 1e-12);
    }
    SUBCASE("single-point sweep gives a singleton") {
        CHECK(diversity_function_curve(isotropic_pair(), 2, {3.0}, false).size() == 1);
    }
    SUBCASE("non-increasing grid rejected") {
        CHECK_THROWS_AS(diversity_function_curve(isotropic_pair(), 2, {3.0, 3.0}, false),
                        ValidationError);
    }
}

TEST_CASE("product never exceeds sum") {
    RandomStream rng(61);
    for (int trial = 0; trial < 30; ++trial) {
        const auto c = random_special(5, 2 + trial % 3, rng);
        const auto rep = diversity_report(c);
        CHECK(rep.product <= rep.sum + 1e-12);
    }
}

TEST_CASE("product equals sum inside SU(2)") {
    RandomStream rng(67);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<CMatrix> v;
        for (int i = 0; i < 6; ++i) {
            CMatrix u = random_unitary(2, rng).mat();
            const cplx det = u.at(0, 0) * u.at(1, 1) - u.at(0, 1) * u.at(1, 0);
            v.push_back(u * (cplx(1.0) / std::sqrt(det)));
        }
        const auto rep = diversity_report(Constellation::special(2, std::move(v)));
        CHECK(rep.product == doctest::Approx(rep.sum).epsilon(1e-9));
    }
}

TEST_CASE("special and general form evaluations agree") {
    RandomStream rng(71);
    for (int trial = 0; trial < 10; ++trial) {
        const auto sp = random_special(5, 2, rng);
        const auto gen = sp.to_general();
        const auto rs = diversity_report(sp);
        const auto rg = diversity_report(gen);
        CHECK(rs.product == doctest::Approx(rg.product).epsilon(1e-9));
        CHECK(rs.sum == doctest::Approx(rg.sum).epsilon(1e-9));
        const ChannelConfig cfg(4, 2, 2, 3.0);
        CHECK(chernoff_diversity(sp, cfg) == doctest::Approx(chernoff_diversity(gen, cfg)).epsilon(1e-9));
        CHECK(exact_diversity(sp, cfg) == doctest::Approx(exact_diversity(gen, cfg)).epsilon(1e-9));
    }
}

TEST_CASE("metrics are invariant under fixed unitary factors") {
    RandomStream rng(73);
    const auto c = random_special(5, 2, rng);
    const CMatrix p = random_unitary(2, rng).mat();
    const CMatrix pp = random_unitary(2, rng).mat();
    std::vector<CMatrix> moved;
    for (const auto& e : c.elements) moved.push_back(p * e * pp);
    const auto c2 = Constellation::special(2, std::move(moved));
    const auto r1 = diversity_report(c);
    const auto r2 = diversity_report(c2);
    CHECK(r1.product == doctest::Approx(r2.product).epsilon(1e-9));
    CHECK(r1.sum == doctest::Approx(r2.sum).epsilon(1e-9));
    const ChannelConfig cfg(4, 2, 2, 4.0);
    CHECK(chernoff_diversity(c, cfg) == doctest::Approx(chernoff_diversity(c2, cfg)).epsilon(1e-9));
    CHECK(exact_diversity(c, cfg) == doctest::Approx(exact_diversity(c2, cfg)).epsilon(1e-9));
}

TEST_CASE("values far outside the admissible range raise numeric failures") {
    // A "cross-Gram" with norm well above 1 cannot come from frames.
    CMatrix g = CMatrix::identity(2) * cplx(1.5);
    CHECK_THROWS_AS(sum_from_cross_gram(g), NumericError);
    CHECK_THROWS_AS(deltas_from_cross_gram(g), NumericError);
    // ...but slack within 1e-9 is clamped silently.
    CMatrix near = CMatrix::identity(2) * cplx(1.0 + 1e-10);
    CHECK(sum_from_cross_gram(near) == 0.0);
}

TEST_CASE("single-element constellations are rejected by the metrics") {
    std::vector<CMatrix> one = {CMatrix::identity(2)};
    const auto c = Constellation::special(2, std::move(one));
    CHECK_THROWS_AS(diversity_report(c), ValidationError);
    CHECK_THROWS_AS(chernoff_diversity(c, ChannelConfig(4, 2, 2, 1.0)), ValidationError);
}
