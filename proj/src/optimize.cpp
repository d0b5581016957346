#include "ustc/optimize.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numeric>

#include "ustc/svd.hpp"

namespace ustc {

Objective Objective::max_sum() {
    Objective o;
    o.kind = ObjectiveKind::MaxSum;
    return o;
}

Objective Objective::min_chernoff_at(const ChannelConfig& cfg) {
    Objective o;
    o.kind = ObjectiveKind::MinChernoffAtRho;
    o.cfg = cfg;
    return o;
}

Objective Objective::min_exact_at(const ChannelConfig& cfg) {
    Objective o;
    o.kind = ObjectiveKind::MinExactAtRho;
    o.cfg = cfg;
    return o;
}

Objective Objective::min_chernoff_over(const ChannelConfig& base, std::vector<double> rho_grid) {
    if (rho_grid.empty())
        throw ValidationError("objective: empty rho grid");
    for (std::size_t i = 1; i < rho_grid.size(); ++i)
        if (!(rho_grid[i] > rho_grid[i - 1]))
            throw ValidationError("objective: rho grid must be strictly increasing");
    Objective o;
    o.kind = ObjectiveKind::MinChernoffOverInterval;
    o.cfg = base;
    o.rho_grid = std::move(rho_grid);
    return o;
}

namespace {

ChannelConfig cfg_at(const ChannelConfig& base, double rho) {
    return ChannelConfig(base.T, base.M, base.N, rho);
}

double worst_pair_value(const std::vector<double>& deltas, const Objective& obj) {
    switch (obj.kind) {
        case ObjectiveKind::MinChernoffAtRho:
            return pair_chernoff(deltas, obj.cfg);
        case ObjectiveKind::MinExactAtRho:
            return pair_exact(deltas, obj.cfg);
        case ObjectiveKind::MinChernoffOverInterval: {
            double worst = 0.0;
            for (double rho : obj.rho_grid)
                worst = std::max(worst, pair_chernoff(deltas, cfg_at(obj.cfg, rho)));
            return worst;
        }
        default:
            throw ValidationError("worst_pair_value: objective is not a diversity-function kind");
    }
}

} // namespace

double objective_value(const Constellation& c, const Objective& obj) {
    switch (obj.kind) {
        case ObjectiveKind::MaxProduct: return diversity_report(c).product;
        case ObjectiveKind::MaxSum: return diversity_report(c).sum;
        case ObjectiveKind::MinChernoffAtRho: return chernoff_diversity(c, obj.cfg);
        case ObjectiveKind::MinExactAtRho: return exact_diversity(c, obj.cfg);
        case ObjectiveKind::MinChernoffOverInterval: {
            double worst = 0.0;
            for (double rho : obj.rho_grid)
                worst = std::max(worst, chernoff_diversity(c, cfg_at(obj.cfg, rho)));
            return worst;
        }
    }
    return 0.0;
}

namespace {

// Single-target objective contribution, folded over the stream.
struct TargetFold {
    const Objective& obj;
    int M;
    double acc; // min for Max kinds, max for Min kinds
    void feed(ReducedTarget::Type type, const CMatrix& m) {
        switch (obj.kind) {
            case ObjectiveKind::MaxProduct:
                acc = std::min(acc, type == ReducedTarget::Type::Difference
                                        ? product_from_difference(m, M)
                                        : product_from_cross_gram(m));
                return;
            case ObjectiveKind::MaxSum:
                acc = std::min(acc, type == ReducedTarget::Type::Difference
                                        ? sum_from_difference(m, M)
                                        : sum_from_cross_gram(m));
                return;
            default: {
                const auto deltas = type == ReducedTarget::Type::Difference
                                        ? deltas_from_difference(m)
                                        : deltas_from_cross_gram(m);
                if (obj.kind == ObjectiveKind::MinExactAtRho) {
                    // Chernoff bounds the integral; dominated pairs are skipped.
                    if (pair_chernoff(deltas, obj.cfg) <= acc) return;
                }
                acc = std::max(acc, worst_pair_value(deltas, obj));
                return;
            }
        }
    }
    static TargetFold start(const Objective& obj, int M) {
        return TargetFold{obj, M, obj.maximizing() ? 2.0 : 0.0};
    }
};

} // namespace

double objective_value_reduced(const std::vector<ReducedTarget>& targets, int M,
                               const Objective& obj) {
    if (targets.empty())
        throw ValidationError("objective: empty target set (constellation has L < 2)");
    TargetFold fold = TargetFold::start(obj, M);
    for (const auto& t : targets) fold.feed(t.type, t.m);
    return fold.acc;
}

double objective_value_reduced(const GeneratorStructure& g, const Objective& obj) {
    TargetFold fold = TargetFold::start(obj, g.dim);
    visit_reduced_targets(g, [&](ReducedTarget::Type type, const CMatrix& m) {
        fold.feed(type, m);
    });
    if (fold.acc == (obj.maximizing() ? 2.0 : 0.0) && g.expansion_size() < 2)
        throw ValidationError("objective: structure expands to L < 2");
    return fold.acc;
}

namespace {

// Natural objective value -> internal score where larger is always better.
double to_score(double value, const Objective& obj) {
    return obj.maximizing() ? value : -value;
}
double to_value(double score, const Objective& obj) {
    return obj.maximizing() ? score : -score;
}

CMatrix random_global_phase(int dim, RandomStream& rng) {
    const double a = 2.0 * M_PI * rng.next_double();
    CMatrix p = CMatrix::identity(dim);
    for (int i = 0; i < dim; ++i) p.at(i, i) = cplx(std::cos(a), std::sin(a));
    return p;
}

CMatrix skew_coordinates(const CMatrix& g, RandomStream& rng) {
    for (int attempt = 0; attempt < 100; ++attempt) {
        try {
            return cayley(attempt == 0 ? g : g * random_global_phase(g.rows(), rng));
        } catch (const CayleySingular&) {
        }
    }
    throw NumericError("perturb: could not leave the Cayley singular set");
}

struct Clock {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

void check_exact_guard(const Objective& obj, long L) {
    if (obj.kind == ObjectiveKind::MinExactAtRho && !obj.allow_expensive_exact && L > 8)
        throw ValidationError("MinExactAtRho objective is limited to L <= 8 "
                              "(override with allow_expensive_exact)");
}

} // namespace

CMatrix perturb_unitary(const CMatrix& g, double sigma, RandomStream& rng) {
    const int dim = g.rows();
    const CMatrix s0 = skew_coordinates(g, rng);
    const CMatrix s = (s0 - s0.adjoint()) * cplx(0.5); // strip roundoff
    double sig = sigma;
    for (int round = 0; round < 10; ++round) {
        for (int attempt = 0; attempt < 100; ++attempt) {
            try {
                const CMatrix z = random_skew_hermitian(dim, sig, rng).mat();
                return UnitaryMatrix(cayley(s + z)).mat();
            } catch (const CayleySingular&) {
            }
        }
        sig *= 0.5;
    }
    throw NumericError("perturb: persistent Cayley failures");
}

namespace {

// Shared accept/reject machinery for the annealing variants. `Perturb`
// produces a candidate state from the current one, `Score` evaluates it.
template <typename State, typename Perturb, typename Score>
OptimizerTrace run_annealing(State init, const Objective& obj, const SAConfig& cfg,
                             Perturb&& perturb, Score&& score,
                             std::function<void(OptimizerTrace&, const State&)> finish) {
    RandomStream rng(cfg.seed);
    Clock clock;
    State cur = std::move(init);
    double cur_score = score(cur);
    State best = cur;
    double best_score = cur_score;

    OptimizerTrace trace;
    trace.improvements.emplace_back(0, to_value(best_score, obj));

    const double t0 = cfg.initial_temperature > 0.0
                          ? cfg.initial_temperature
                          : std::max(1e-6, 0.1 * std::abs(cur_score));
    long stall = 0;
    long iter = 0;
    for (; iter < cfg.max_iterations; ++iter) {
        if (cfg.budget_seconds > 0.0 && (iter & 0xff) == 0 &&
            clock.seconds() > cfg.budget_seconds)
            break;
        const long stage = iter / std::max(1, cfg.steps_per_temperature);
        const double sigma = cfg.initial_sigma * std::pow(cfg.sigma_decay, stage);
        const double temp = t0 * std::pow(cfg.cooling_factor, stage);

        State cand = perturb(cur, sigma, rng);
        const double cand_score = score(cand);
        bool accept = cand_score > cur_score;
        if (!accept && cfg.metropolis && temp > 0.0)
            accept = rng.next_double() < std::exp((cand_score - cur_score) / temp);
        if (accept) {
            cur = std::move(cand);
            cur_score = cand_score;
            ++trace.accepted;
        } else {
            ++trace.rejected;
        }
        if (cur_score > best_score) {
            best = cur;
            best_score = cur_score;
            trace.improvements.emplace_back(iter + 1, to_value(best_score, obj));
            stall = 0;
        } else if (++stall >= cfg.stall_limit) {
            ++iter;
            break;
        }
    }
    trace.iterations_run = iter;
    trace.best_value = to_value(best_score, obj);
    finish(trace, best);
    return trace;
}

} // namespace

OptimizerTrace simulated_annealing(const GeneratorStructure& tmpl, const Objective& obj,
                                   const SAConfig& cfg, EvalMode mode) {
    GeneratorStructure g = tmpl;
    if (g.kind == StructureKind::ProductS1S2)
        throw ValidationError("simulated annealing: optimize the ProductS1S2 factors directly");
    if (g.expansion_size() < 2)
        throw ValidationError("simulated annealing: structure expands to L < 2");
    check_exact_guard(obj, g.expansion_size());
    const bool reduced = mode == EvalMode::Reduced ||
                         (mode == EvalMode::Auto && supports_reduction(g));
    if (mode == EvalMode::Reduced && !supports_reduction(g))
        throw ReductionUnavailable("simulated annealing: structure has no reduction");

    const int need = g.generator_count();
    RandomStream init_rng = RandomStream::substream(cfg.seed, 0x5eed, 0);
    if (static_cast<int>(g.generators.size()) < need) {
        g.generators.clear();
        for (int i = 0; i < need; ++i)
            g.generators.push_back(random_unitary(g.generator_dim(), init_rng).mat());
    }

    auto score = [&](const GeneratorStructure& s) {
        return to_score(reduced ? objective_value_reduced(s, obj)
                                : objective_value(expand(s), obj),
                        obj);
    };
    auto perturb = [need](const GeneratorStructure& s, double sigma, RandomStream& rng) {
        GeneratorStructure next = s;
        for (int i = 0; i < need; ++i)
            next.generators[static_cast<std::size_t>(i)] =
                perturb_unitary(s.generators[static_cast<std::size_t>(i)], sigma, rng);
        return next;
    };
    auto finish = [](OptimizerTrace& trace, const GeneratorStructure& best) {
        trace.final_structure = best;
        trace.final = expand(best);
        trace.final_report = diversity_report(trace.final);
    };
    return run_annealing<GeneratorStructure>(std::move(g), obj, cfg, perturb, score, finish);
}

OptimizerTrace simulated_annealing_restarts(const GeneratorStructure& tmpl, const Objective& obj,
                                            const SAConfig& cfg, int restarts) {
    if (restarts < 1)
        throw ValidationError("simulated_annealing_restarts: need at least one restart");
    Clock clock;
    OptimizerTrace best;
    bool have = false;
    long iters = 0, accepted = 0, rejected = 0;
    for (int k = 0; k < restarts; ++k) {
        SAConfig sub = cfg;
        sub.seed = cfg.seed * 0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(k);
        if (cfg.budget_seconds > 0.0) {
            const double left = cfg.budget_seconds - clock.seconds();
            if (left <= 0.0 && have) break;
            sub.budget_seconds = std::max(0.5, left);
        }
        OptimizerTrace tr = simulated_annealing(tmpl, obj, sub);
        iters += tr.iterations_run;
        accepted += tr.accepted;
        rejected += tr.rejected;
        const bool better = !have || (obj.maximizing() ? tr.best_value > best.best_value
                                                       : tr.best_value < best.best_value);
        if (better) {
            best = std::move(tr);
            have = true;
        }
    }
    best.iterations_run = iters;
    best.accepted = accepted;
    best.rejected = rejected;
    return best;
}

OptimizerTrace refine_from(const GeneratorStructure& seed, const Objective& obj,
                           const SAConfig& cfg) {
    if (static_cast<int>(seed.generators.size()) < seed.generator_count())
        throw ValidationError("refine_from: seed structure is missing its generators");
    return simulated_annealing(seed, obj, cfg);
}

OptimizerTrace refine_from(const Constellation& seed, const Objective& obj,
                           const SAConfig& cfg) {
    if (seed.size() < 2)
        throw ValidationError("refine_from: constellation has L < 2");
    check_exact_guard(obj, seed.size());

    auto score = [&](const Constellation& c) { return to_score(objective_value(c, obj), obj); };
    auto perturb = [&](const Constellation& c, double sigma, RandomStream& rng) {
        Constellation next = c;
        const int idx = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(c.size())));
        CMatrix& el = next.elements[static_cast<std::size_t>(idx)];
        if (c.form == Form::Special) {
            el = perturb_unitary(el, sigma, rng);
        } else {
            // Stiefel move: left action by a unitary near the identity.
            const CMatrix q = cayley(random_skew_hermitian(c.T, sigma, rng).mat());
            el = q * el;
        }
        return next;
    };
    auto finish = [](OptimizerTrace& trace, const Constellation& best) {
        trace.final = best;
        trace.final_report = diversity_report(best);
    };
    return run_annealing<Constellation>(seed, obj, cfg, perturb, score, finish);
}

OptimizerTrace genetic_algorithm(int M, int L, const Objective& obj, const GAConfig& cfg) {
    if (M < 1) throw ValidationError("genetic_algorithm: M must be >= 1");
    if (L < 2) throw ValidationError("genetic_algorithm: population size must be >= 2");
    const int replace = cfg.replace_count;
    if (replace < 1 || replace >= L)
        throw ValidationError("genetic_algorithm: replace_count must be in [1, L)");
    check_exact_guard(obj, L);

    RandomStream rng(cfg.seed);
    Clock clock;

    auto make_constellation = [M](const std::vector<CMatrix>& pop) {
        return Constellation::special(M, pop);
    };
    auto score = [&](const std::vector<CMatrix>& pop) {
        return to_score(objective_value(make_constellation(pop), obj), obj);
    };

    // Fitness of one individual: its worst pairing against the rest, in the
    // metric the objective induces (larger is fitter).
    auto fitness = [&](const std::vector<CMatrix>& pop, int i) {
        double fit = 1e300;
        for (int j = 0; j < L; ++j) {
            if (j == i) continue;
            const CMatrix d = pop[static_cast<std::size_t>(i)] - pop[static_cast<std::size_t>(j)];
            double v;
            switch (obj.kind) {
                case ObjectiveKind::MaxProduct: v = product_from_difference(d, M); break;
                case ObjectiveKind::MaxSum: v = sum_from_difference(d, M); break;
                default: v = -worst_pair_value(deltas_from_difference(d), obj); break;
            }
            fit = std::min(fit, v);
        }
        return fit;
    };

    std::vector<CMatrix> cur;
    cur.reserve(static_cast<std::size_t>(L));
    for (int i = 0; i < L; ++i) cur.push_back(random_unitary(M, rng).mat());
    double cur_score = score(cur);
    std::vector<CMatrix> best = cur;
    double best_score = cur_score;

    OptimizerTrace trace;
    trace.improvements.emplace_back(0, to_value(best_score, obj));

    long stall = 0;
    long iter = 0;
    std::vector<int> order(static_cast<std::size_t>(L));
    for (; iter < cfg.max_iterations; ++iter) {
        if (cfg.budget_seconds > 0.0 && (iter & 0xff) == 0 &&
            clock.seconds() > cfg.budget_seconds)
            break;
        // Rank by fitness, worst first; ties break toward the lower index.
        std::vector<double> fit(static_cast<std::size_t>(L));
        for (int i = 0; i < L; ++i) fit[static_cast<std::size_t>(i)] = fitness(cur, i);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](int a, int b) { return fit[static_cast<std::size_t>(a)] <
                                                    fit[static_cast<std::size_t>(b)]; });

        std::vector<CMatrix> cand = cur;
        std::vector<bool> replaced(static_cast<std::size_t>(L), false);
        for (int k = 0; k < replace; ++k) {
            const int idx = order[static_cast<std::size_t>(k)];
            cand[static_cast<std::size_t>(idx)] = random_unitary(M, rng).mat();
            replaced[static_cast<std::size_t>(idx)] = true;
        }
        // Mutation sigma anneals while the search stalls.
        const double sigma_eff =
            cfg.mutation_sigma * std::pow(0.5, static_cast<double>(std::min<long>(stall / 300, 12)));
        for (int i = 0; i < L; ++i) {
            if (replaced[static_cast<std::size_t>(i)]) continue;
            if (rng.next_double() < cfg.mutation_rate)
                cand[static_cast<std::size_t>(i)] =
                    perturb_unitary(cand[static_cast<std::size_t>(i)], sigma_eff, rng);
        }

        const double cand_score = score(cand);
        if (cand_score > cur_score) {
            cur = std::move(cand);
            cur_score = cand_score;
            ++trace.accepted;
        } else {
            ++trace.rejected;
        }
        if (cur_score > best_score) {
            best = cur;
            best_score = cur_score;
            trace.improvements.emplace_back(iter + 1, to_value(best_score, obj));
            stall = 0;
        } else if (++stall >= cfg.stall_limit) {
            ++iter;
            break;
        }
    }
    trace.iterations_run = iter;
    trace.best_value = to_value(best_score, obj);
    trace.final = make_constellation(best);
    trace.final_report = diversity_report(trace.final);
    return trace;
}

OptimizerTrace grid_search_u2(const GeneratorStructure& tmpl, const Objective& obj,
                              int density, long eval_cap) {
    if (tmpl.generator_dim() != 2)
        throw ValidationError("grid_search_u2: only U(2) generators are supported");
    const int ngen = tmpl.generator_count();
    if (ngen < 1 || ngen > 2)
        throw ValidationError("grid_search_u2: supports one or two generators");
    if (density < 1) throw ValidationError("grid_search_u2: density must be >= 1");
    GeneratorStructure g = tmpl;
    if (g.expansion_size() < 2)
        throw ValidationError("grid_search_u2: structure expands to L < 2");
    check_exact_guard(obj, g.expansion_size());
    g.generators.assign(static_cast<std::size_t>(ngen), CMatrix::identity(2));

    double evals = 1.0;
    for (int i = 0; i < 4 * ngen; ++i) evals *= density;
    if (evals > static_cast<double>(eval_cap))
        throw ValidationError("grid_search_u2: " + std::to_string(static_cast<long long>(evals)) +
                              " grid points exceed the evaluation cap of " +
                              std::to_string(eval_cap) + "; lower the density");

    const bool reduced = supports_reduction(g);
    auto build = [](double phi, double alpha, double beta, double theta) {
        CMatrix u(2, 2);
        const cplx a = std::cos(phi) * cplx(std::cos(alpha), std::sin(alpha));
        const cplx b = std::sin(phi) * cplx(std::cos(beta), std::sin(beta));
        const cplx et(std::cos(theta), std::sin(theta));
        u.at(0, 0) = a;
        u.at(0, 1) = b * et;
        u.at(1, 0) = -std::conj(b);
        u.at(1, 1) = std::conj(a) * et;
        return u;
    };
    auto angle = [&](int j, int which) {
        if (which == 0) // phi in [0, pi/2], closed grid
            return density == 1 ? 0.0 : j * (M_PI / 2.0) / (density - 1);
        return j * (2.0 * M_PI) / density; // alpha, beta, theta in [0, 2pi)
    };

    const int nang = 4 * ngen;
    std::vector<int> idx(static_cast<std::size_t>(nang), 0);
    double best_score = -1e300;
    OptimizerTrace trace;
    long done = 0;
    while (true) {
        for (int gi = 0; gi < ngen; ++gi) {
            const int o = 4 * gi;
            g.generators[static_cast<std::size_t>(gi)] =
                build(angle(idx[o], 0), angle(idx[o + 1], 1), angle(idx[o + 2], 1),
                      angle(idx[o + 3], 1));
        }
        const double value = reduced
                                 ? objective_value_reduced(g, obj)
                                 : objective_value(expand(g), obj);
        const double s = to_score(value, obj);
        ++done;
        if (s > best_score) {
            best_score = s;
            trace.final_structure = g;
            trace.improvements.emplace_back(done, value);
        }
        int k = nang - 1;
        while (k >= 0) {
            if (++idx[static_cast<std::size_t>(k)] < density) break;
            idx[static_cast<std::size_t>(k)] = 0;
            --k;
        }
        if (k < 0) break;
    }
    trace.iterations_run = done;
    trace.best_value = to_value(best_score, obj);
    trace.final = expand(*trace.final_structure);
    trace.final_report = diversity_report(trace.final);
    return trace;
}

} // namespace ustc
