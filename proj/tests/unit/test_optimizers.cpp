#include <atomic>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "invopt/optimizers.hpp"

using namespace invopt;
using testutil::expect_error;

namespace {

Bounds box(std::vector<double> lo, std::vector<double> hi) {
    Bounds b;
    b.lower = std::move(lo);
    b.upper = std::move(hi);
    return b;
}

Bounds cube(double lo, double hi, int dims) {
    return box(std::vector<double>(dims, lo), std::vector<double>(dims, hi));
}

Objective sphere() {
    return {[](std::span<const double> x) {
                double s = 0.0;
                for (double v : x) s += v * v;
                return s;
            },
            true};
}

Objective parabola_at_3() {
    return {[](std::span<const double> x) { return (x[0] - 3.0) * (x[0] - 3.0); },
            true};
}

Objective constant(double value) {
    return {[value](std::span<const double>) { return value; }, true};
}

struct CountedObjective {
    std::shared_ptr<std::atomic<long>> calls = std::make_shared<std::atomic<long>>(0);
    Objective fn;
    CountedObjective() {
        auto c = calls;
        fn = {[c](std::span<const double> x) {
                  c->fetch_add(1, std::memory_order_relaxed);
                  double s = 0.0;
                  for (double v : x) s += (v - 1.0) * (v - 1.0);
                  return s;
              },
              true};
    }
};

const std::vector<Algorithm> kAllAlgorithms{
    Algorithm::de_best1bin, Algorithm::de_adaptive, Algorithm::de_multistart,
    Algorithm::gwo,         Algorithm::woa,         Algorithm::sa,
    Algorithm::random_search};

}  // namespace

TEST_SUITE("optimizers") {

TEST_CASE("algorithm names round-trip through the parser") {
    for (Algorithm a : kAllAlgorithms) {
        const auto parsed = parse_algorithm(algorithm_name(a));
        REQUIRE(parsed.has_value());
        CHECK(*parsed == a);
    }
    CHECK(!parse_algorithm("gradient-descent").has_value());
    CHECK(!parse_algorithm("").has_value());
    CHECK(algorithm_name(Algorithm::de_best1bin) == "de-best1bin");
    CHECK(algorithm_name(Algorithm::random_search) == "random-search");
}

TEST_CASE("best/1 mutation arithmetic") {
    const std::vector<double> best{1.0, -2.0};
    const std::vector<double> r1{3.0, 0.5};
    const std::vector<double> r2{2.0, 0.5};

    SUBCASE("zero weight copies the best point") {
        CHECK(mutate_best1(best, r1, r2, 0.0) == best);
    }
    SUBCASE("identical donors cancel") {
        CHECK(mutate_best1(best, r1, r1, 0.7) == best);
    }
    SUBCASE("v = best + F * (r1 - r2)") {
        const auto v = mutate_best1(std::vector<double>{0.0},
                                    std::vector<double>{2.0},
                                    std::vector<double>{0.0}, 0.5);
        CHECK(v == std::vector<double>{1.0});
        const auto w = mutate_best1(best, r1, r2, 2.0);
        CHECK(w[0] == 3.0);   // 1 + 2*(3-2)
        CHECK(w[1] == -2.0);  // -2 + 2*0
    }
    SUBCASE("length mismatch throws") {
        expect_error<std::invalid_argument>(
            [&] { mutate_best1(best, std::vector<double>{1.0}, r2, 0.5); },
            "equal length");
    }
}

TEST_CASE("binomial crossover") {
    std::mt19937_64 rng(7);
    const std::vector<double> target(6, 0.0);
    const std::vector<double> mutant(6, 1.0);

    SUBCASE("CR=1 takes every coordinate from the mutant") {
        for (int rep = 0; rep < 20; ++rep)
            CHECK(crossover_bin(target, mutant, 1.0, rng) == mutant);
    }
    SUBCASE("CR=0 still forces exactly one mutant coordinate") {
        for (int rep = 0; rep < 50; ++rep) {
            const auto trial = crossover_bin(target, mutant, 0.0, rng);
            int from_mutant = 0;
            for (double v : trial) from_mutant += (v == 1.0);
            CHECK(from_mutant == 1);
        }
    }
    SUBCASE("one-dimensional trials always equal the mutant") {
        for (int rep = 0; rep < 10; ++rep)
            CHECK(crossover_bin(std::vector<double>{0.0}, std::vector<double>{1.0},
                                0.0, rng) == std::vector<double>{1.0});
    }
    SUBCASE("length mismatch throws") {
        expect_error<std::invalid_argument>(
            [&] { crossover_bin(target, std::vector<double>{1.0}, 0.5, rng); },
            "equal length");
    }
}

TEST_CASE("DE drives a sphere to numerical zero") {
    OptimizerConfig cfg;
    cfg.population = 50;
    cfg.generations = 200;
    cfg.seed = 1;
    const Bounds b = cube(-5.0, 5.0, 5);

    const OptRun plain = de_optimize(sphere(), b, cfg);
    CHECK(plain.best_cost < 1e-6);
    CHECK(plain.evaluations_used == 50 * 201);

    const OptRun adaptive = adaptive_de_optimize(sphere(), b, cfg);
    CHECK(adaptive.best_cost < 1e-6);
}

TEST_CASE("DE locates an off-center parabola minimum") {
    OptimizerConfig cfg;
    cfg.population = 20;
    cfg.generations = 100;
    cfg.seed = 3;
    const OptRun r = de_optimize(parabola_at_3(), cube(0.0, 10.0, 1), cfg);
    CHECK(std::abs(r.best_x[0] - 3.0) < 1e-3);
}

TEST_CASE("zero adaptation probability reproduces plain DE bit for bit") {
    OptimizerConfig cfg;
    cfg.population = 12;
    cfg.generations = 40;
    cfg.seed = 9;
    cfg.F = 0.6;
    cfg.CR = 0.85;
    cfg.adapt_probability = 0.0;
    const Bounds b = cube(-4.0, 4.0, 6);
    const OptRun plain = de_optimize(sphere(), b, cfg);
    const OptRun adapted = adaptive_de_optimize(sphere(), b, cfg);
    CHECK(plain.best_cost == adapted.best_cost);
    CHECK(plain.best_x == adapted.best_x);
    CHECK(plain.history == adapted.history);
    CHECK(plain.evaluations_used == adapted.evaluations_used);
}

TEST_CASE("adaptation with nonzero probability changes the run") {
    OptimizerConfig cfg;
    cfg.population = 12;
    cfg.generations = 40;
    cfg.seed = 9;
    cfg.adapt_probability = 0.5;
    const Bounds b = cube(-4.0, 4.0, 6);
    OptimizerConfig plain_cfg = cfg;
    plain_cfg.adapt_probability = 0.0;
    const OptRun tuned = adaptive_de_optimize(sphere(), b, cfg);
    const OptRun plain = adaptive_de_optimize(sphere(), b, plain_cfg);
    CHECK(tuned.history != plain.history);
}

TEST_CASE("multi-start returns the best member and its envelope history") {
    OptimizerConfig cfg;
    cfg.population = 10;
    cfg.generations = 30;
    cfg.ensemble_size = 3;
    cfg.seed = 100;
    cfg.max_evaluations = 3 * 10 * 31;
    const Bounds b = cube(-5.0, 5.0, 4);
    const OptRun run = multi_start_de(sphere(), b, cfg);

    REQUIRE(run.member_runs.size() == 3);
    double member_min = run.member_runs[0].best_cost;
    long member_evals = 0;
    for (const OptRun& m : run.member_runs) {
        member_min = std::min(member_min, m.best_cost);
        member_evals += m.evaluations_used;
    }
    CHECK(run.best_cost == member_min);
    CHECK(run.evaluations_used == member_evals);
    CHECK(run.evaluations_used <= cfg.max_evaluations);

    // Member k is an independent adaptive run at seed+k on a third of the
    // budget.
    OptimizerConfig solo = cfg;
    solo.ensemble_size = 1;
    solo.seed = 102;
    solo.max_evaluations = cfg.max_evaluations / 3;
    const OptRun third = adaptive_de_optimize(sphere(), b, solo);
    CHECK(third.best_cost == run.member_runs[2].best_cost);
    CHECK(third.best_x == run.member_runs[2].best_x);

    // The envelope is the generation-wise minimum over members.
    for (std::size_t g = 0; g < run.history.size(); ++g) {
        double expect = std::numeric_limits<double>::infinity();
        for (const OptRun& m : run.member_runs) {
            const auto& h = m.history;
            expect = std::min(expect, h[std::min(g, h.size() - 1)]);
        }
        CHECK(run.history[g] == expect);
    }
}

TEST_CASE("single-member ensemble equals one adaptive run") {
    OptimizerConfig cfg;
    cfg.population = 8;
    cfg.generations = 25;
    cfg.ensemble_size = 1;
    cfg.seed = 42;
    const Bounds b = cube(-3.0, 3.0, 3);
    const OptRun multi = multi_start_de(sphere(), b, cfg);
    const OptRun solo = adaptive_de_optimize(sphere(), b, cfg);
    CHECK(multi.best_cost == solo.best_cost);
    CHECK(multi.best_x == solo.best_x);
    CHECK(multi.history == solo.history);
}

TEST_CASE("every algorithm respects its evaluation budget exactly") {
    const Bounds b = cube(-2.0, 6.0, 3);
    for (Algorithm a : kAllAlgorithms) {
        CAPTURE(algorithm_name(a));
        CountedObjective counted;
        OptimizerConfig cfg;
        cfg.algorithm = a;
        cfg.population = 7;
        cfg.generations = 1000000;
        cfg.ensemble_size = 2;
        cfg.seed = 17;
        cfg.max_evaluations = 193;
        const OptRun r = run_optimizer(counted.fn, b, cfg);
        CHECK(r.evaluations_used == counted.calls->load());
        CHECK(r.evaluations_used <= 193);
        CHECK(r.evaluations_used >= 193 - 2L * cfg.population);
    }
}

TEST_CASE("histories never increase and end at the reported best") {
    const Bounds b = cube(-2.0, 6.0, 3);
    for (Algorithm a : kAllAlgorithms) {
        CAPTURE(algorithm_name(a));
        OptimizerConfig cfg;
        cfg.algorithm = a;
        cfg.population = 8;
        cfg.generations = 50;
        cfg.ensemble_size = 2;
        cfg.seed = 23;
        cfg.max_evaluations = 800;
        CountedObjective counted;
        const OptRun r = run_optimizer(counted.fn, b, cfg);
        REQUIRE(!r.history.empty());
        for (std::size_t i = 1; i < r.history.size(); ++i)
            CHECK(r.history[i] <= r.history[i - 1]);
        CHECK(r.history.back() == r.best_cost);
        // The best point re-evaluates to the reported cost.
        CHECK(counted.fn.fn(r.best_x) == r.best_cost);
        // And it lies inside the box.
        for (std::size_t d = 0; d < r.best_x.size(); ++d) {
            CHECK(r.best_x[d] >= b.lower[d]);
            CHECK(r.best_x[d] <= b.upper[d]);
        }
    }
}

TEST_CASE("every algorithm is deterministic under a fixed seed") {
    const Bounds b = cube(-2.0, 6.0, 3);
    for (Algorithm a : kAllAlgorithms) {
        CAPTURE(algorithm_name(a));
        OptimizerConfig cfg;
        cfg.algorithm = a;
        cfg.population = 8;
        cfg.generations = 40;
        cfg.ensemble_size = 2;
        cfg.seed = 5;
        const OptRun r1 = run_optimizer(sphere(), b, cfg);
        const OptRun r2 = run_optimizer(sphere(), b, cfg);
        CHECK(r1.best_cost == r2.best_cost);
        CHECK(r1.best_x == r2.best_x);
        CHECK(r1.history == r2.history);

        // Far enough apart that multi-start member seed ranges cannot overlap.
        cfg.seed = 60;
        const OptRun r3 = run_optimizer(sphere(), b, cfg);
        CHECK(r1.best_x != r3.best_x);
    }
}

TEST_CASE("all algorithms solve a one-dimensional parabola adequately") {
    // Coarse sanity floor: within 1e-2 of the optimum given 10k evaluations.
    const Bounds b = cube(0.0, 10.0, 1);
    for (Algorithm a : kAllAlgorithms) {
        CAPTURE(algorithm_name(a));
        OptimizerConfig cfg;
        cfg.algorithm = a;
        cfg.population = 20;
        cfg.generations = 1000000;
        cfg.ensemble_size = 5;
        cfg.seed = 11;
        cfg.max_evaluations = 10000;
        const OptRun r = run_optimizer(parabola_at_3(), b, cfg);
        CHECK(r.best_cost < 1e-2);
    }
}

TEST_CASE("optimum pinned to a box face is found") {
    // Minimum of (x-10)^2 over [0,5] sits on the upper bound.
    Objective f{[](std::span<const double> x) {
                    return (x[0] - 10.0) * (x[0] - 10.0);
                },
                true};
    const Bounds b = cube(0.0, 5.0, 1);
    for (Algorithm a : {Algorithm::de_best1bin, Algorithm::de_adaptive,
                        Algorithm::gwo, Algorithm::woa, Algorithm::sa}) {
        CAPTURE(algorithm_name(a));
        OptimizerConfig cfg;
        cfg.algorithm = a;
        cfg.population = 15;
        cfg.generations = 200;
        cfg.seed = 2;
        const OptRun r = run_optimizer(f, b, cfg);
        CHECK(r.best_x[0] == doctest::Approx(5.0).epsilon(1e-3));
    }
}

TEST_CASE("a constant landscape stays flat") {
    const Bounds b = cube(-1.0, 1.0, 2);
    for (Algorithm a : kAllAlgorithms) {
        CAPTURE(algorithm_name(a));
        OptimizerConfig cfg;
        cfg.algorithm = a;
        cfg.population = 6;
        cfg.generations = 10;
        cfg.ensemble_size = 2;
        cfg.seed = 1;
        const OptRun r = run_optimizer(constant(5.0), b, cfg);
        CHECK(r.best_cost == 5.0);
        for (double h : r.history) CHECK(h == 5.0);
    }
}

TEST_CASE("random search honors a budget of one") {
    OptimizerConfig cfg;
    cfg.population = 50;
    cfg.generations = 10;
    cfg.seed = 77;
    cfg.max_evaluations = 1;
    const OptRun r = random_search(sphere(), cube(-1.0, 1.0, 2), cfg);
    CHECK(r.evaluations_used == 1);
    REQUIRE(r.history.size() == 1);
    CHECK(r.history[0] == r.best_cost);
    CHECK(sphere().fn(r.best_x) == r.best_cost);
}

TEST_CASE("configuration validation") {
    const Bounds b = cube(0.0, 1.0, 2);
    OptimizerConfig cfg;

    SUBCASE("empty or inverted bounds") {
        expect_error<std::invalid_argument>(
            [&] { de_optimize(sphere(), Bounds{}, cfg); }, "non-empty");
        expect_error<std::invalid_argument>(
            [&] { de_optimize(sphere(), box({1.0}, {0.0}), cfg); },
            "lower <= upper");
    }
    SUBCASE("population and generations") {
        OptimizerConfig bad = cfg;
        bad.population = 0;
        expect_error<std::invalid_argument>(
            [&] { random_search(sphere(), b, bad); }, "population");
        bad = cfg;
        bad.generations = 0;
        expect_error<std::invalid_argument>(
            [&] { random_search(sphere(), b, bad); }, "generations");
        bad = cfg;
        bad.population = 3;
        expect_error<std::invalid_argument>(
            [&] { de_optimize(sphere(), b, bad); }, "population >= 4");
        bad = cfg;
        bad.population = 2;
        expect_error<std::invalid_argument>(
            [&] { gwo_optimize(sphere(), b, bad); }, "population >= 3");
    }
    SUBCASE("DE parameter ranges") {
        OptimizerConfig bad = cfg;
        bad.F = 0.0;
        expect_error<std::invalid_argument>([&] { de_optimize(sphere(), b, bad); },
                                            "F must lie in (0, 2]");
        bad = cfg;
        bad.F = 2.5;
        expect_error<std::invalid_argument>([&] { de_optimize(sphere(), b, bad); },
                                            "F must lie in (0, 2]");
        bad = cfg;
        bad.CR = -0.1;
        expect_error<std::invalid_argument>([&] { de_optimize(sphere(), b, bad); },
                                            "CR must lie in [0, 1]");
        bad = cfg;
        bad.adapt_probability = 1.5;
        expect_error<std::invalid_argument>(
            [&] { adaptive_de_optimize(sphere(), b, bad); }, "adapt_probability");
    }
    SUBCASE("budgets too small to start") {
        OptimizerConfig bad = cfg;
        bad.population = 10;
        bad.max_evaluations = 19;  // less than two DE generations' worth
        expect_error<std::invalid_argument>(
            [&] { de_optimize(sphere(), b, bad); }, "before one full DE generation");
        bad.max_evaluations = 9;
        expect_error<std::invalid_argument>(
            [&] { gwo_optimize(sphere(), b, bad); }, "smaller than one population");
        expect_error<std::invalid_argument>(
            [&] { woa_optimize(sphere(), b, bad); }, "smaller than one population");
        bad.max_evaluations = 1;
        expect_error<std::invalid_argument>(
            [&] { sa_optimize(sphere(), b, bad); }, "initial point");
        bad = cfg;
        bad.ensemble_size = 0;
        expect_error<std::invalid_argument>(
            [&] { multi_start_de(sphere(), b, bad); }, "ensemble_size");
    }
}

TEST_CASE("comparison benchmark ranks algorithms by re-scored cost") {
    const ProductCatalog catalog = builtin_catalog();
    SimConfig base;
    base.horizon_days = 15;
    base.num_simulations = 5;
    base.seed = 4;

    const std::vector<Algorithm> algos{Algorithm::de_best1bin,
                                       Algorithm::random_search};
    const std::vector<std::uint64_t> seeds{1, 2, 3};
    const ComparisonReport report =
        compare(catalog, base, FulfillmentMode::continuous_review, algos, 64,
                seeds, 10, 8);

    REQUIRE(report.rows.size() == 2);
    CHECK(report.budget_per_run == 64);
    CHECK(report.seeds == seeds);
    CHECK(report.rescore_replications == 10);
    CHECK(report.rows[0].total_cost <= report.rows[1].total_cost);
    const Bounds bounds = Bounds::stock_bounds(catalog);
    for (const ComparisonRow& row : report.rows) {
        CHECK((row.algorithm == "de-best1bin" || row.algorithm == "random-search"));
        CHECK(row.evaluations <= 64);
        REQUIRE(row.stocks.size() == 4);
        for (std::size_t d = 0; d < 4; ++d) {
            CHECK(row.stocks[d] >= bounds.lower[d]);
            CHECK(row.stocks[d] <= bounds.upper[d]);
        }
    }

    // Deterministic end to end.
    const ComparisonReport again =
        compare(catalog, base, FulfillmentMode::continuous_review, algos, 64,
                seeds, 10, 8);
    REQUIRE(again.rows.size() == report.rows.size());
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
        CHECK(again.rows[i].algorithm == report.rows[i].algorithm);
        CHECK(again.rows[i].total_cost == report.rows[i].total_cost);
        CHECK(again.rows[i].stocks == report.rows[i].stocks);
    }

    expect_error<std::invalid_argument>(
        [&] {
            compare(catalog, base, FulfillmentMode::continuous_review, {}, 64,
                    seeds, 10, 8);
        },
        "at least one algorithm");
    expect_error<std::invalid_argument>(
        [&] {
            compare(catalog, base, FulfillmentMode::continuous_review, algos, 0,
                    seeds, 10, 8);
        },
        "budget");
}

}  // TEST_SUITE
