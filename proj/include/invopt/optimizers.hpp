#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "invopt/objective.hpp"

namespace invopt {

enum class Algorithm {
    de_best1bin,
    de_adaptive,
    de_multistart,
    gwo,
    woa,
    sa,
    random_search,
};

std::string algorithm_name(Algorithm a);
std::optional<Algorithm> parse_algorithm(const std::string& name);

struct OptimizerConfig {
    Algorithm algorithm = Algorithm::de_best1bin;
    int population = 50;
    int generations = 100;
    double F = 0.7;   // differential weight, (0, 2]
    double CR = 0.9;  // crossover rate, [0, 1]
    double adapt_probability = 0.1;  // de_adaptive: chance to resample F/CR
    int ensemble_size = 5;           // de_multistart members
    std::uint64_t seed = 0;
    // Hard cap on objective calls; 0 derives population * (generations + 1).
    // Runs stop at whichever of generations/budget binds first.
    long max_evaluations = 0;
};

struct OptRun {
    std::vector<double> best_x;
    double best_cost = std::numeric_limits<double>::infinity();
    std::vector<double> history;  // best-so-far after init and each generation
    long evaluations_used = 0;
    std::vector<OptRun> member_runs;  // de_multistart only
};

// v = best + F * (r1 - r2). Callers supply distinct population members.
std::vector<double> mutate_best1(std::span<const double> best,
                                 std::span<const double> r1,
                                 std::span<const double> r2, double F);

// Binomial crossover: each coordinate comes from the mutant with probability
// CR, and one uniformly chosen coordinate always does.
std::vector<double> crossover_bin(std::span<const double> target,
                                  std::span<const double> mutant, double CR,
                                  std::mt19937_64& rng);

OptRun de_optimize(const Objective& objective, const Bounds& bounds,
                   const OptimizerConfig& config);
OptRun adaptive_de_optimize(const Objective& objective, const Bounds& bounds,
                            const OptimizerConfig& config);
// ensemble_size independent adaptive-DE runs seeded seed+k, each given an
// equal share of the evaluation budget; returns the best member's result with
// all member runs attached.
OptRun multi_start_de(const Objective& objective, const Bounds& bounds,
                      const OptimizerConfig& config);
OptRun gwo_optimize(const Objective& objective, const Bounds& bounds,
                    const OptimizerConfig& config);
OptRun woa_optimize(const Objective& objective, const Bounds& bounds,
                    const OptimizerConfig& config);
OptRun sa_optimize(const Objective& objective, const Bounds& bounds,
                   const OptimizerConfig& config);
OptRun random_search(const Objective& objective, const Bounds& bounds,
                     const OptimizerConfig& config);

// Dispatch on config.algorithm.
OptRun run_optimizer(const Objective& objective, const Bounds& bounds,
                     const OptimizerConfig& config);

struct ComparisonRow {
    std::string algorithm;
    std::vector<double> stocks;
    double total_cost = 0.0;  // re-scored at high fidelity
    long evaluations = 0;
};

struct ComparisonReport {
    std::vector<ComparisonRow> rows;  // sorted by ascending total_cost
    long budget_per_run = 0;
    std::vector<std::uint64_t> seeds;
    int rescore_replications = 0;
};

// Equal-budget benchmark: every algorithm runs once per seed (optimizer and
// demand seed alike), the run with the median best cost represents the
// algorithm, and its stocks are re-scored on base_config.seed demand at
// rescore_replications. Rows come back sorted by that re-scored cost.
ComparisonReport compare(const ProductCatalog& catalog, const SimConfig& base_config,
                         FulfillmentMode mode,
                         const std::vector<Algorithm>& algorithms, long budget,
                         const std::vector<std::uint64_t>& seeds,
                         int rescore_replications = 1000, int population = 50);

}  // namespace invopt
