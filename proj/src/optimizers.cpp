#include "invopt/optimizers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace invopt {
namespace {

long effective_budget(const OptimizerConfig& cfg) {
    if (cfg.max_evaluations > 0) return cfg.max_evaluations;
    return static_cast<long>(cfg.population) * (static_cast<long>(cfg.generations) + 1);
}

void validate_common(const Bounds& bounds, const OptimizerConfig& cfg) {
    if (bounds.size() == 0) throw std::invalid_argument("bounds must be non-empty");
    if (bounds.lower.size() != bounds.upper.size())
        throw std::invalid_argument("bounds lower/upper must have equal length");
    for (std::size_t d = 0; d < bounds.size(); ++d)
        if (!(bounds.lower[d] <= bounds.upper[d]))
            throw std::invalid_argument("bounds must satisfy lower <= upper");
    if (cfg.population < 1) throw std::invalid_argument("population must be >= 1");
    if (cfg.generations < 1) throw std::invalid_argument("generations must be >= 1");
    if (effective_budget(cfg) <= 0) throw std::invalid_argument("evaluation budget must be > 0");
}

void validate_de(const OptimizerConfig& cfg) {
    if (cfg.population < 4)
        throw std::invalid_argument("DE variants need population >= 4");
    if (!(cfg.F > 0.0) || cfg.F > 2.0)
        throw std::invalid_argument("F must lie in (0, 2]");
    if (cfg.CR < 0.0 || cfg.CR > 1.0)
        throw std::invalid_argument("CR must lie in [0, 1]");
    if (cfg.adapt_probability < 0.0 || cfg.adapt_probability > 1.0)
        throw std::invalid_argument("adapt_probability must lie in [0, 1]");
}

std::vector<double> eval_batch(const Objective& f,
                               const std::vector<std::vector<double>>& points) {
    std::vector<double> out(points.size());
    if (f.thread_safe) {
#pragma omp parallel for schedule(dynamic)
        for (std::size_t i = 0; i < points.size(); ++i) out[i] = f.fn(points[i]);
    } else {
        for (std::size_t i = 0; i < points.size(); ++i) out[i] = f.fn(points[i]);
    }
    return out;
}

int argmin(const std::vector<double>& v) {
    return static_cast<int>(std::min_element(v.begin(), v.end()) - v.begin());
}

std::vector<std::vector<double>> random_population(const Bounds& b, int n,
                                                   std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<std::vector<double>> pop(n, std::vector<double>(b.size()));
    for (auto& x : pop)
        for (std::size_t d = 0; d < b.size(); ++d)
            x[d] = b.lower[d] + unit(rng) * (b.upper[d] - b.lower[d]);
    return pop;
}

// Plain and self-adaptive DE share one loop so that a zero adaptation
// probability reproduces the plain run draw-for-draw: adaptation decisions
// come from a side stream that never touches the main one.
OptRun de_run(const Objective& f, const Bounds& b, const OptimizerConfig& cfg,
              bool adaptive) {
    validate_common(b, cfg);
    validate_de(cfg);
    const int NP = cfg.population;
    const long budget = effective_budget(cfg);
    if (budget < 2L * NP)
        throw std::invalid_argument(
            "evaluation budget is exhausted before one full DE generation");

    std::mt19937_64 rng(cfg.seed);
    std::mt19937_64 adapt_rng(cfg.seed * 0x9E3779B97F4A7C15ull + 1);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<int> pick(0, NP - 1);

    auto pop = random_population(b, NP, rng);
    std::vector<double> cost = eval_batch(f, pop);
    long evals = NP;
    int best = argmin(cost);

    OptRun run;
    run.history.push_back(cost[best]);

    std::vector<double> Fi(NP, cfg.F), CRi(NP, cfg.CR);
    std::vector<double> trial_F(NP), trial_CR(NP);
    std::vector<std::vector<double>> trials(NP);

    for (int g = 0; g < cfg.generations && evals + NP <= budget; ++g) {
        for (int i = 0; i < NP; ++i) {
            trial_F[i] = Fi[i];
            trial_CR[i] = CRi[i];
            if (adaptive && unit(adapt_rng) < cfg.adapt_probability) {
                trial_F[i] = 0.1 + 0.8 * unit(adapt_rng);
                trial_CR[i] = unit(adapt_rng);
            }
            int r1, r2;
            do r1 = pick(rng);
            while (r1 == i || r1 == best);
            do r2 = pick(rng);
            while (r2 == i || r2 == best || r2 == r1);
            const auto mutant = mutate_best1(pop[best], pop[r1], pop[r2], trial_F[i]);
            trials[i] = repair(crossover_bin(pop[i], mutant, trial_CR[i], rng), b);
        }
        const std::vector<double> trial_cost = eval_batch(f, trials);
        evals += NP;
        for (int i = 0; i < NP; ++i) {
            if (trial_cost[i] <= cost[i]) {
                pop[i] = trials[i];
                cost[i] = trial_cost[i];
                Fi[i] = trial_F[i];
                CRi[i] = trial_CR[i];
            }
        }
        best = argmin(cost);
        run.history.push_back(cost[best]);
    }

    run.best_x = pop[best];
    run.best_cost = cost[best];
    run.evaluations_used = evals;
    return run;
}

}  // namespace

std::string algorithm_name(Algorithm a) {
    switch (a) {
        case Algorithm::de_best1bin: return "de-best1bin";
        case Algorithm::de_adaptive: return "de-adaptive";
        case Algorithm::de_multistart: return "de-multistart";
        case Algorithm::gwo: return "gwo";
        case Algorithm::woa: return "woa";
        case Algorithm::sa: return "sa";
        case Algorithm::random_search: return "random-search";
    }
    return "unknown";
}

std::optional<Algorithm> parse_algorithm(const std::string& name) {
    for (Algorithm a :
         {Algorithm::de_best1bin, Algorithm::de_adaptive, Algorithm::de_multistart,
          Algorithm::gwo, Algorithm::woa, Algorithm::sa, Algorithm::random_search})
        if (algorithm_name(a) == name) return a;
    return std::nullopt;
}

std::vector<double> mutate_best1(std::span<const double> best,
                                 std::span<const double> r1,
                                 std::span<const double> r2, double F) {
    if (best.size() != r1.size() || best.size() != r2.size())
        throw std::invalid_argument("mutation vectors must have equal length");
    std::vector<double> v(best.size());
    for (std::size_t d = 0; d < v.size(); ++d) v[d] = best[d] + F * (r1[d] - r2[d]);
    return v;
}

std::vector<double> crossover_bin(std::span<const double> target,
                                  std::span<const double> mutant, double CR,
                                  std::mt19937_64& rng) {
    if (target.size() != mutant.size())
        throw std::invalid_argument("crossover vectors must have equal length");
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<std::size_t> pick(0, target.size() - 1);
    const std::size_t forced = pick(rng);
    std::vector<double> trial(target.size());
    for (std::size_t d = 0; d < trial.size(); ++d) {
        const bool from_mutant = unit(rng) < CR || d == forced;
        trial[d] = from_mutant ? mutant[d] : target[d];
    }
    return trial;
}

OptRun de_optimize(const Objective& f, const Bounds& b, const OptimizerConfig& cfg) {
    return de_run(f, b, cfg, false);
}

OptRun adaptive_de_optimize(const Objective& f, const Bounds& b,
                            const OptimizerConfig& cfg) {
    return de_run(f, b, cfg, true);
}

OptRun multi_start_de(const Objective& f, const Bounds& b,
                      const OptimizerConfig& cfg) {
    if (cfg.ensemble_size < 1)
        throw std::invalid_argument("ensemble_size must be >= 1");
    const long budget = effective_budget(cfg);

    OptimizerConfig member_cfg = cfg;
    member_cfg.algorithm = Algorithm::de_adaptive;
    member_cfg.max_evaluations = budget / cfg.ensemble_size;

    OptRun run;
    run.member_runs.reserve(cfg.ensemble_size);
    for (int k = 0; k < cfg.ensemble_size; ++k) {
        member_cfg.seed = cfg.seed + static_cast<std::uint64_t>(k);
        run.member_runs.push_back(adaptive_de_optimize(f, b, member_cfg));
    }

    std::size_t best = 0;
    std::size_t longest = 0;
    for (std::size_t k = 0; k < run.member_runs.size(); ++k) {
        run.evaluations_used += run.member_runs[k].evaluations_used;
        longest = std::max(longest, run.member_runs[k].history.size());
        if (run.member_runs[k].best_cost < run.member_runs[best].best_cost) best = k;
    }
    run.best_x = run.member_runs[best].best_x;
    run.best_cost = run.member_runs[best].best_cost;

    // Generation-wise minimum across members; exhausted members contribute
    // their final value, so the envelope stays non-increasing.
    run.history.resize(longest);
    for (std::size_t g = 0; g < longest; ++g) {
        double m = std::numeric_limits<double>::infinity();
        for (const OptRun& member : run.member_runs) {
            const auto& h = member.history;
            m = std::min(m, h[std::min(g, h.size() - 1)]);
        }
        run.history[g] = m;
    }
    return run;
}

OptRun gwo_optimize(const Objective& f, const Bounds& b, const OptimizerConfig& cfg) {
    validate_common(b, cfg);
    if (cfg.population < 3)
        throw std::invalid_argument("gwo needs population >= 3");
    const int NP = cfg.population;
    const int D = static_cast<int>(b.size());
    const long budget = effective_budget(cfg);
    if (budget < NP)
        throw std::invalid_argument("evaluation budget smaller than one population");

    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    auto pop = random_population(b, NP, rng);
    std::vector<double> cost = eval_batch(f, pop);
    long evals = NP;

    std::vector<double> alpha, beta, delta;
    double fa = std::numeric_limits<double>::infinity(), fb = fa, fd = fa;
    auto offer = [&](const std::vector<double>& x, double c) {
        if (c < fa) {
            delta = beta; fd = fb;
            beta = alpha; fb = fa;
            alpha = x; fa = c;
        } else if (c < fb) {
            delta = beta; fd = fb;
            beta = x; fb = c;
        } else if (c < fd) {
            delta = x; fd = c;
        }
    };
    for (int i = 0; i < NP; ++i) offer(pop[i], cost[i]);

    OptRun run;
    run.history.push_back(fa);

    const long iters = std::min<long>(cfg.generations, (budget - NP) / NP);
    for (long t = 0; t < iters; ++t) {
        const double a = 2.0 - 2.0 * static_cast<double>(t) / static_cast<double>(iters);
        for (int i = 0; i < NP; ++i) {
            for (int d = 0; d < D; ++d) {
                double guided = 0.0;
                for (const std::vector<double>* leader : {&alpha, &beta, &delta}) {
                    const double A = 2.0 * a * unit(rng) - a;
                    const double C = 2.0 * unit(rng);
                    const double dist = std::abs(C * (*leader)[d] - pop[i][d]);
                    guided += (*leader)[d] - A * dist;
                }
                pop[i][d] = guided / 3.0;
            }
            pop[i] = repair(std::move(pop[i]), b);
        }
        cost = eval_batch(f, pop);
        evals += NP;
        for (int i = 0; i < NP; ++i) offer(pop[i], cost[i]);
        run.history.push_back(fa);
    }

    run.best_x = alpha;
    run.best_cost = fa;
    run.evaluations_used = evals;
    return run;
}

OptRun woa_optimize(const Objective& f, const Bounds& b, const OptimizerConfig& cfg) {
    validate_common(b, cfg);
    const int NP = cfg.population;
    const int D = static_cast<int>(b.size());
    const long budget = effective_budget(cfg);
    if (budget < NP)
        throw std::invalid_argument("evaluation budget smaller than one population");

    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<int> pick(0, NP - 1);

    auto pop = random_population(b, NP, rng);
    std::vector<double> cost = eval_batch(f, pop);
    long evals = NP;

    int best = argmin(cost);
    std::vector<double> leader = pop[best];
    double leader_cost = cost[best];

    OptRun run;
    run.history.push_back(leader_cost);

    const long iters = std::min<long>(cfg.generations, (budget - NP) / NP);
    for (long t = 0; t < iters; ++t) {
        const double frac = static_cast<double>(t) / static_cast<double>(iters);
        const double a = 2.0 - 2.0 * frac;    // encircling coefficient decay
        const double a2 = -1.0 - frac;        // spiral parameter range drift
        for (int i = 0; i < NP; ++i) {
            const double r1 = unit(rng), r2 = unit(rng);
            const double A = 2.0 * a * r1 - a;
            const double C = 2.0 * r2;
            const double l = (a2 - 1.0) * unit(rng) + 1.0;
            const double p = unit(rng);
            for (int d = 0; d < D; ++d) {
                if (p < 0.5) {
                    if (std::abs(A) >= 1.0) {
                        const int r = pick(rng);  // explore around a random whale
                        const double dist = std::abs(C * pop[r][d] - pop[i][d]);
                        pop[i][d] = pop[r][d] - A * dist;
                    } else {
                        const double dist = std::abs(C * leader[d] - pop[i][d]);
                        pop[i][d] = leader[d] - A * dist;
                    }
                } else {
                    const double dist = std::abs(leader[d] - pop[i][d]);
                    pop[i][d] =
                        dist * std::exp(l) * std::cos(6.283185307179586 * l) +
                        leader[d];
                }
            }
            pop[i] = repair(std::move(pop[i]), b);
        }
        cost = eval_batch(f, pop);
        evals += NP;
        for (int i = 0; i < NP; ++i) {
            if (cost[i] < leader_cost) {
                leader_cost = cost[i];
                leader = pop[i];
            }
        }
        run.history.push_back(leader_cost);
    }

    run.best_x = leader;
    run.best_cost = leader_cost;
    run.evaluations_used = evals;
    return run;
}

OptRun sa_optimize(const Objective& f, const Bounds& b, const OptimizerConfig& cfg) {
    validate_common(b, cfg);
    const long budget = effective_budget(cfg);
    if (budget < 2)
        throw std::invalid_argument("sa needs budget for an initial point and a move");
    const int D = static_cast<int>(b.size());
    const int block = cfg.population;  // evaluations per cooling step

    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);

    std::vector<double> step(D);
    for (int d = 0; d < D; ++d) step[d] = 0.1 * (b.upper[d] - b.lower[d]);

    std::vector<double> x = random_population(b, 1, rng)[0];
    double fx = f.fn(x);
    long evals = 1;

    OptRun run;
    run.best_x = x;
    run.best_cost = fx;
    run.history.push_back(fx);

    // The first few moves are always taken; their uphill deltas size the
    // initial temperature so that roughly 80% of early uphill moves pass.
    const long warmup = std::min<long>(20, budget - 1);
    double uphill_sum = 0.0;
    long uphill_count = 0;
    double T = 0.0;
    bool warm = true;

    std::vector<double> cand(D);
    long proposals = 0;
    while (evals < budget) {
        for (int d = 0; d < D; ++d) cand[d] = x[d] + step[d] * gauss(rng);
        cand = repair(std::move(cand), b);
        const double fc = f.fn(cand);
        ++evals;
        ++proposals;
        const double delta = fc - fx;

        bool accept;
        if (warm) {
            accept = true;
            if (delta > 0.0) {
                uphill_sum += delta;
                ++uphill_count;
            }
            if (proposals >= warmup) {
                warm = false;
                T = uphill_count > 0
                        ? (uphill_sum / uphill_count) / std::log(1.0 / 0.8)
                        : 1.0;
            }
        } else {
            accept = delta <= 0.0 ||
                     unit(rng) < std::exp(-delta / std::max(T, 1e-300));
        }
        if (accept) {
            x = cand;
            fx = fc;
        }
        if (fc < run.best_cost) {
            run.best_cost = fc;
            run.best_x = cand;
        }
        if (proposals % block == 0) {
            if (!warm) T *= 0.95;  // geometric cooling per block
            run.history.push_back(run.best_cost);
        }
    }
    if (run.history.back() != run.best_cost) run.history.push_back(run.best_cost);
    run.evaluations_used = evals;
    return run;
}

OptRun random_search(const Objective& f, const Bounds& b,
                     const OptimizerConfig& cfg) {
    validate_common(b, cfg);
    const long budget = effective_budget(cfg);

    std::mt19937_64 rng(cfg.seed);
    OptRun run;
    long remaining = budget;
    while (remaining > 0) {
        const int m = static_cast<int>(std::min<long>(cfg.population, remaining));
        const auto batch = random_population(b, m, rng);
        const auto cost = eval_batch(f, batch);
        for (int i = 0; i < m; ++i) {
            if (cost[i] < run.best_cost) {
                run.best_cost = cost[i];
                run.best_x = batch[i];
            }
        }
        remaining -= m;
        run.history.push_back(run.best_cost);
    }
    run.evaluations_used = budget;
    return run;
}

OptRun run_optimizer(const Objective& f, const Bounds& b,
                     const OptimizerConfig& cfg) {
    switch (cfg.algorithm) {
        case Algorithm::de_best1bin: return de_optimize(f, b, cfg);
        case Algorithm::de_adaptive: return adaptive_de_optimize(f, b, cfg);
        case Algorithm::de_multistart: return multi_start_de(f, b, cfg);
        case Algorithm::gwo: return gwo_optimize(f, b, cfg);
        case Algorithm::woa: return woa_optimize(f, b, cfg);
        case Algorithm::sa: return sa_optimize(f, b, cfg);
        case Algorithm::random_search: return random_search(f, b, cfg);
    }
    throw std::invalid_argument("unknown algorithm");
}

ComparisonReport compare(const ProductCatalog& catalog, const SimConfig& base_config,
                         FulfillmentMode mode,
                         const std::vector<Algorithm>& algorithms, long budget,
                         const std::vector<std::uint64_t>& seeds,
                         int rescore_replications, int population) {
    if (algorithms.empty())
        throw std::invalid_argument("compare needs at least one algorithm");
    if (seeds.empty()) throw std::invalid_argument("compare needs at least one seed");
    if (budget <= 0) throw std::invalid_argument("compare needs budget > 0");

    ComparisonReport report;
    report.budget_per_run = budget;
    report.seeds = seeds;
    report.rescore_replications = rescore_replications;

    const Bounds bounds = Bounds::stock_bounds(catalog);
    const StockObjective scorer(catalog, base_config, mode);

    for (Algorithm a : algorithms) {
        struct SeedRun {
            double cost;
            long evals;
            std::vector<double> x;
        };
        std::vector<SeedRun> runs;
        runs.reserve(seeds.size());
        for (std::uint64_t s : seeds) {
            SimConfig run_cfg = base_config;
            run_cfg.seed = s;
            const StockObjective objective(catalog, run_cfg, mode);

            OptimizerConfig cfg;
            cfg.algorithm = a;
            cfg.population = population;
            cfg.generations = std::numeric_limits<int>::max();
            cfg.seed = s;
            cfg.max_evaluations = budget;
            const OptRun r = run_optimizer(objective.as_objective(), bounds, cfg);
            runs.push_back({r.best_cost, r.evaluations_used, r.best_x});
        }
        std::vector<std::size_t> order(runs.size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t i, std::size_t j) {
                             return runs[i].cost < runs[j].cost;
                         });
        const SeedRun& median = runs[order[(order.size() - 1) / 2]];
        report.rows.push_back({algorithm_name(a), median.x,
                               scorer.rescore(median.x, rescore_replications),
                               median.evals});
    }

    std::stable_sort(report.rows.begin(), report.rows.end(),
                     [](const ComparisonRow& a, const ComparisonRow& b) {
                         return a.total_cost < b.total_cost;
                     });
    return report;
}

}  // namespace invopt
