#include "ustc/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <future>

#include "ustc/diversity.hpp"
#include "ustc/optimize.hpp"

namespace ustc {

double permanent_abs_sum(const UnitaryMatrix& u) {
    const int n = u.dim();
    if (n > 8)
        throw ValidationError("permanent_abs_sum: enumeration limited to n <= 8");
    const CMatrix& m = u.mat();
    // Permanent of (|u_ij|) by subset dynamic programming.
    const std::size_t full = std::size_t{1} << n;
    std::vector<double> dp(full, 0.0);
    dp[0] = 1.0;
    for (std::size_t mask = 1; mask < full; ++mask) {
        const int row = __builtin_popcountll(mask) - 1;
        double acc = 0.0;
        for (int j = 0; j < n; ++j) {
            if (!(mask & (std::size_t{1} << j))) continue;
            acc += dp[mask ^ (std::size_t{1} << j)] * std::abs(m.at(row, j));
        }
        dp[mask] = acc;
    }
    return dp[full - 1];
}

namespace {

// Hill-climb with annealed sigma maximizing the permutation sum from one
// random start.
std::pair<double, CMatrix> f_search_single(int n, long iterations, std::uint64_t seed) {
    RandomStream rng(seed);
    CMatrix cur = random_unitary(n, rng).mat();
    double cur_v = permanent_abs_sum(UnitaryMatrix(cur));
    CMatrix best = cur;
    double best_v = cur_v;
    for (long it = 0; it < iterations; ++it) {
        const double frac = static_cast<double>(it) / std::max<long>(1, iterations);
        const double sigma = 0.4 * std::pow(0.01, frac); // 0.4 -> 0.004
        CMatrix cand;
        try {
            cand = perturb_unitary(cur, sigma, rng);
        } catch (const NumericError&) {
            continue;
        }
        const double v = permanent_abs_sum(UnitaryMatrix(cand));
        const double temp = 0.02 * std::pow(0.001, frac);
        if (v > cur_v || rng.next_double() < std::exp((v - cur_v) / temp)) {
            cur = cand;
            cur_v = v;
        }
        if (cur_v > best_v) {
            best_v = cur_v;
            best = cur;
        }
    }
    return {best_v, best};
}

} // namespace

BoundReport estimate_F(int n, long budget_iterations, std::uint64_t seed) {
    if (n < 2 || n > 5)
        throw ValidationError("estimate_F: supported for 2 <= n <= 5");
    const int restarts = 32;
    const long per_start = std::max<long>(200, budget_iterations / restarts);
    std::vector<std::future<std::pair<double, CMatrix>>> futures;
    futures.reserve(restarts);
    for (int s = 0; s < restarts; ++s) {
        const std::uint64_t sub = seed * 0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(s);
        futures.push_back(std::async(std::launch::async, f_search_single, n, per_start, sub));
    }
    BoundReport rep;
    rep.n = n;
    rep.F_estimate = 0.0;
    for (auto& f : futures) {
        auto [v, w] = f.get();
        if (v > rep.F_estimate) {
            rep.F_estimate = v;
            rep.witness = w;
        }
    }
    rep.product_bound = std::pow(rep.F_estimate, 1.0 / n) * std::sqrt(3.0) / 2.0;
    return rep;
}

namespace {

CMatrix diag2(cplx a, cplx b) {
    CMatrix m(2, 2);
    m.at(0, 0) = a;
    m.at(1, 1) = b;
    return m;
}

cplx cube_root_phase(int k) {
    return {std::cos(2.0 * M_PI * k / 3.0), std::sin(2.0 * M_PI * k / 3.0)};
}

} // namespace

Constellation optimal_three_element(ThreeElementVariant variant, const UnitaryMatrix& a,
                                    const UnitaryMatrix& b, const UnitaryMatrix& c) {
    if (a.dim() != 2 || b.dim() != 2 || c.dim() != 2)
        throw ValidationError("optimal_three_element: inputs must be 2x2 unitaries");
    const bool fg = variant == ThreeElementVariant::LeftFG || variant == ThreeElementVariant::RightFG;
    const bool left = variant == ThreeElementVariant::LeftDE || variant == ThreeElementVariant::LeftFG;
    // D/E and F/G as printed; F and G coincide with D and E numerically
    // because exp(4i pi/3) = exp(-2i pi/3).
    const CMatrix d = fg ? diag2(cube_root_phase(1), cube_root_phase(2))
                         : diag2(cube_root_phase(1), std::conj(cube_root_phase(1)));
    const CMatrix e = fg ? diag2(cube_root_phase(2), cube_root_phase(1))
                         : diag2(cube_root_phase(2), std::conj(cube_root_phase(2)));
    const CMatrix w = a.mat() * b.mat();
    const CMatrix wd = w * d * w.adjoint();
    const CMatrix we = w * e * w.adjoint();
    std::vector<CMatrix> psis;
    if (left)
        psis = {c.mat(), c.mat() * wd, c.mat() * we};
    else
        psis = {c.mat(), wd * c.mat(), we * c.mat()};
    return Constellation::special(2, std::move(psis));
}

ThreeElementBoundsReport verify_three_element_bounds(long samples, int diagonal_grid,
                                                     std::uint64_t seed) {
    ThreeElementBoundsReport rep;
    rep.samples = samples;
    RandomStream rng(seed);
    std::vector<CMatrix> best_prod_triple, best_sum_triple;
    for (long s = 0; s < samples; ++s) {
        std::vector<CMatrix> tri = {random_unitary(2, rng).mat(), random_unitary(2, rng).mat(),
                                    random_unitary(2, rng).mat()};
        const auto r = diversity_report(Constellation::special(2, tri));
        if (r.product > rep.max_product_sampled) {
            rep.max_product_sampled = r.product;
            best_prod_triple = tri;
        }
        if (r.sum > rep.max_sum_sampled) {
            rep.max_sum_sampled = r.sum;
            best_sum_triple = tri;
        }
    }

    // Local refinement from the best random triples.
    auto refine = [&](std::vector<CMatrix> tri, bool product) {
        double best = product ? diversity_report(Constellation::special(2, tri)).product
                              : diversity_report(Constellation::special(2, tri)).sum;
        double sigma = 0.1;
        for (int it = 0; it < 4000; ++it) {
            if (it % 500 == 499) sigma *= 0.5;
            std::vector<CMatrix> cand = tri;
            const int idx = static_cast<int>(rng.next_below(3));
            try {
                cand[static_cast<std::size_t>(idx)] =
                    perturb_unitary(cand[static_cast<std::size_t>(idx)], sigma, rng);
            } catch (const NumericError&) {
                continue;
            }
            const auto r = diversity_report(Constellation::special(2, cand));
            const double v = product ? r.product : r.sum;
            if (v > best) {
                best = v;
                tri = std::move(cand);
            }
        }
        return best;
    };
    rep.max_product_refined = refine(best_prod_triple, true);
    rep.max_sum_refined = refine(best_sum_triple, false);

    // Diagonal triples {I, diag(t1, t2), diag(f1, f2)}: the restricted case
    // of the diversity-sum lemma, scanned on a closed 4-angle grid.
    const int g = diagonal_grid;
    for (int i1 = 0; i1 < g; ++i1) {
        for (int i2 = 0; i2 < g; ++i2) {
            for (int j1 = 0; j1 < g; ++j1) {
                for (int j2 = 0; j2 < g; ++j2) {
                    const double t1 = 2.0 * M_PI * i1 / g;
                    const double t2 = 2.0 * M_PI * i2 / g;
                    const double f1 = 2.0 * M_PI * j1 / g;
                    const double f2 = 2.0 * M_PI * j2 / g;
                    // ||diag(x) - diag(y)||_F^2 for the three pairs.
                    auto gap2 = [](double u, double v) {
                        const double re = std::cos(u) - std::cos(v);
                        const double im = std::sin(u) - std::sin(v);
                        return re * re + im * im;
                    };
                    const double d01 = gap2(0.0, t1) + gap2(0.0, t2);
                    const double d02 = gap2(0.0, f1) + gap2(0.0, f2);
                    const double d12 = gap2(t1, f1) + gap2(t2, f2);
                    const double mind = std::min({d01, d02, d12});
                    const double sum = std::sqrt(mind) / (2.0 * std::sqrt(2.0));
                    rep.max_sum_diagonal = std::max(rep.max_sum_diagonal, sum);
                }
            }
        }
    }

    const auto constructed = optimal_three_element(ThreeElementVariant::LeftDE,
                                                   random_unitary(2, rng), random_unitary(2, rng),
                                                   random_unitary(2, rng));
    const auto cr = diversity_report(constructed);
    rep.constructed_product = cr.product;
    rep.constructed_sum = cr.sum;
    return rep;
}

namespace {

// Project each column of the angle matrix onto {x >= 0, sum = pi}.
void project_columns(std::vector<double>& phi, int n, int m) {
    for (int j = 0; j < m; ++j) {
        // Dykstra-free simplex projection: shift, clip, renormalize.
        for (int rounds = 0; rounds < 50; ++rounds) {
            double sum = 0.0;
            int active = 0;
            for (int i = 0; i < n; ++i) {
                const double v = phi[static_cast<std::size_t>(i * m + j)];
                sum += v;
                if (v > 0.0) ++active;
            }
            const double excess = sum - M_PI;
            if (std::abs(excess) < 1e-15 || active == 0) break;
            const double shift = excess / active;
            for (int i = 0; i < n; ++i) {
                double& v = phi[static_cast<std::size_t>(i * m + j)];
                if (v > 0.0) v = std::max(0.0, v - shift);
            }
        }
    }
}

} // namespace

SineProductReport sine_product_check(int m, int n, std::uint64_t seed) {
    if (m < 1 || n < 2 || m > 6 || n > 6)
        throw ValidationError("sine_product_check: supported for m in [1,6], n in [2,6]");
    SineProductReport rep;
    rep.m = m;
    rep.n = n;
    rep.analytic = std::pow(std::sin(M_PI / n), m);

    auto row_log = [&](const std::vector<double>& phi, int i) {
        double s = 0.0;
        for (int j = 0; j < m; ++j) {
            const double v = std::max(1e-12, std::sin(phi[static_cast<std::size_t>(i * m + j)]));
            s += std::log(v);
        }
        return s;
    };
    auto true_min = [&](const std::vector<double>& phi) {
        double mn = 1e300;
        for (int i = 0; i < n; ++i) mn = std::min(mn, std::exp(row_log(phi, i)));
        return mn;
    };

    std::vector<double> best_phi;
    double best_val = -1.0;
    for (int start = 0; start < 64; ++start) {
        RandomStream rng = RandomStream::substream(seed, 0xa11, static_cast<std::uint64_t>(start));
        std::vector<double> phi(static_cast<std::size_t>(n) * m);
        for (int j = 0; j < m; ++j) {
            double colsum = 0.0;
            for (int i = 0; i < n; ++i) {
                const double v = -std::log(std::max(1e-12, rng.next_double()));
                phi[static_cast<std::size_t>(i * m + j)] = v;
                colsum += v;
            }
            for (int i = 0; i < n; ++i)
                phi[static_cast<std::size_t>(i * m + j)] *= M_PI / colsum;
        }
        // Softmin continuation: sharpen beta, projected gradient steps with
        // backtracking at each level.
        for (double beta : {30.0, 100.0, 300.0, 1e3, 3e3, 1e4, 3e4, 1e5, 1e6, 1e7}) {
            double step = 0.1;
            for (int it = 0; it < 400; ++it) {
                std::vector<double> logs(static_cast<std::size_t>(n));
                double lmin = 1e300;
                for (int i = 0; i < n; ++i) {
                    logs[static_cast<std::size_t>(i)] = row_log(phi, i);
                    lmin = std::min(lmin, logs[static_cast<std::size_t>(i)]);
                }
                double wsum = 0.0;
                std::vector<double> wgt(static_cast<std::size_t>(n));
                for (int i = 0; i < n; ++i) {
                    wgt[static_cast<std::size_t>(i)] =
                        std::exp(-beta * (logs[static_cast<std::size_t>(i)] - lmin));
                    wsum += wgt[static_cast<std::size_t>(i)];
                }
                const double obj0 = lmin - std::log(wsum) / beta;
                std::vector<double> grad(phi.size());
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < m; ++j)
                        grad[static_cast<std::size_t>(i * m + j)] =
                            wgt[static_cast<std::size_t>(i)] / wsum /
                            std::tan(std::clamp(phi[static_cast<std::size_t>(i * m + j)],
                                                1e-9, M_PI - 1e-9));
                bool moved = false;
                while (step > 1e-12) {
                    std::vector<double> cand = phi;
                    for (std::size_t k = 0; k < cand.size(); ++k) cand[k] += step * grad[k];
                    project_columns(cand, n, m);
                    double clmin = 1e300;
                    std::vector<double> clogs(static_cast<std::size_t>(n));
                    for (int i = 0; i < n; ++i) {
                        clogs[static_cast<std::size_t>(i)] = row_log(cand, i);
                        clmin = std::min(clmin, clogs[static_cast<std::size_t>(i)]);
                    }
                    double cwsum = 0.0;
                    for (int i = 0; i < n; ++i)
                        cwsum += std::exp(-beta * (clogs[static_cast<std::size_t>(i)] - clmin));
                    const double obj1 = clmin - std::log(cwsum) / beta;
                    if (obj1 > obj0 + 1e-16) {
                        phi = std::move(cand);
                        moved = true;
                        step *= 1.3;
                        break;
                    }
                    step *= 0.5;
                }
                if (!moved && step <= 1e-12) break;
            }
        }
        const double v = true_min(phi);
        if (v > best_val) {
            best_val = v;
            best_phi = phi;
        }
    }
    rep.maximum = best_val;
    rep.maximizer = best_phi;
    for (double v : best_phi)
        rep.max_angle_deviation = std::max(rep.max_angle_deviation, std::abs(v - M_PI / n));
    return rep;
}

} // namespace ustc
