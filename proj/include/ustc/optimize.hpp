#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "ustc/constellation.hpp"
#include "ustc/diversity.hpp"
#include "ustc/rng.hpp"

namespace ustc {

enum class ObjectiveKind {
    MaxProduct,
    MaxSum,
    MinChernoffAtRho,
    MinExactAtRho,
    MinChernoffOverInterval,
};

struct Objective {
    ObjectiveKind kind = ObjectiveKind::MaxProduct;
    ChannelConfig cfg;             // SNR point for the Min* kinds
    std::vector<double> rho_grid;  // linear SNR grid for the interval kind
    bool allow_expensive_exact = false; // lifts the L <= 8 guard on MinExactAtRho

    static Objective max_product() { return {}; }
    static Objective max_sum();
    static Objective min_chernoff_at(const ChannelConfig& cfg);
    static Objective min_exact_at(const ChannelConfig& cfg);
    static Objective min_chernoff_over(const ChannelConfig& base, std::vector<double> rho_grid);

    bool maximizing() const {
        return kind == ObjectiveKind::MaxProduct || kind == ObjectiveKind::MaxSum;
    }
};

// Objective value in natural units (product/sum, or the diversity-function
// value being minimized).
double objective_value(const Constellation& c, const Objective& obj);

// Same value computed from a reduced target set; exact, not approximate.
double objective_value_reduced(const std::vector<ReducedTarget>& targets, int M,
                               const Objective& obj);
// Streaming variant used in optimizer inner loops.
double objective_value_reduced(const GeneratorStructure& g, const Objective& obj);

struct SAConfig {
    std::uint64_t seed = 1;
    double initial_temperature = -1.0; // <= 0 selects 0.1 * |initial objective|
    double cooling_factor = 0.95;
    int steps_per_temperature = 200;
    double initial_sigma = 0.3;
    double sigma_decay = 0.95;
    long max_iterations = 200'000;
    long stall_limit = 50'000;
    bool metropolis = true;
    double budget_seconds = 0.0; // 0 disables the wall-clock cutoff
};

struct GAConfig {
    std::uint64_t seed = 1;
    int population_size = 0; // L
    int replace_count = 1;
    double mutation_rate = 0.9;
    double mutation_sigma = 0.2;
    long max_iterations = 200'000;
    long stall_limit = 50'000;
    double budget_seconds = 0.0;
};

struct OptimizerTrace {
    // (iteration, best objective value) recorded at every improvement.
    std::vector<std::pair<long, double>> improvements;
    Constellation final;
    DiversityReport final_report;
    std::optional<GeneratorStructure> final_structure;
    double best_value = 0.0;
    long iterations_run = 0;
    long accepted = 0;
    long rejected = 0;
};

enum class EvalMode { Auto, Reduced, AllPairs };

// Simulated annealing over the Cayley coordinates of the generators.
// A template without generators starts from Haar-random ones; a template
// carrying generators starts there (refinement).
OptimizerTrace simulated_annealing(const GeneratorStructure& tmpl, const Objective& obj,
                                   const SAConfig& cfg, EvalMode mode = EvalMode::Auto);

// Independent SA restarts with derived seeds; keeps the best run (ties break
// toward the earlier restart). A positive cfg.budget_seconds caps the whole
// multi-start wall clock.
OptimizerTrace simulated_annealing_restarts(const GeneratorStructure& tmpl, const Objective& obj,
                                            const SAConfig& cfg, int restarts);

// SA initialized at an existing design.
OptimizerTrace refine_from(const GeneratorStructure& seed, const Objective& obj,
                           const SAConfig& cfg);
// Free refinement of an explicit constellation: one element is perturbed per
// iteration, all pairs evaluated.
OptimizerTrace refine_from(const Constellation& seed, const Objective& obj,
                           const SAConfig& cfg);

// Free population of L unitaries: replace the worst-fitness individuals with
// fresh random ones, mutate survivors in Cayley space, keep the new
// population only when the constellation objective improves.
OptimizerTrace genetic_algorithm(int M, int L, const Objective& obj, const GAConfig& cfg);

// Exhaustive search over the explicit 4-angle form of U(2) per generator.
// Cost grows as density^(4 * generators); estimates above eval_cap abort with
// a sizing message.
OptimizerTrace grid_search_u2(const GeneratorStructure& tmpl, const Objective& obj,
                              int density, long eval_cap = 50'000'000);

// One Cayley-space Gaussian move: cayley(cayley(G) + sigma Z), with the
// random-phase nudge for generators with an eigenvalue near -1 and the
// retry-then-halve-sigma policy for singular perturbations.
CMatrix perturb_unitary(const CMatrix& g, double sigma, RandomStream& rng);

} // namespace ustc
