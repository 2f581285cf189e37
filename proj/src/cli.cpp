#include "invopt/cli.hpp"

#include <filesystem>
#include <fstream>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "CLI11.hpp"
#ifdef _OPENMP
#include <omp.h>
#endif

#include "invopt/analysis.hpp"
#include "invopt/catalog.hpp"
#include "invopt/demand.hpp"
#include "invopt/objective.hpp"
#include "invopt/optimizers.hpp"
#include "invopt/report.hpp"
#include "invopt/simulator.hpp"

namespace invopt {
namespace {

// Replication count the optimizers evaluate candidates at; final reports are
// re-scored at the --samples fidelity.
constexpr int kFitReplications = 30;

struct CliState {
    std::string catalog_spec{"builtin"};
    std::uint64_t seed = 0;
    int days = 365;
    int samples = -1;  // per-command default applied at dispatch
    int threads = 0;
    std::string out_path;
    std::string cost_model{"breakdown"};
    std::string arrival{"pipeline"};
    std::string mode{"cr"};

    std::string algo{"de-best1bin"};
    std::vector<std::string> algos;
    int pop = 50;
    int gens = 100;
    long budget = -1;  // per-command default applied at dispatch
    int ensemble = 5;
    int runs = 3;
    int rows = 27;
    std::vector<int> pops{10, 20, 50, 100};

    std::vector<double> reorder, qty, safety;

    int bins = 30;
    std::string product;
};

CostModel parse_cost_model(const std::string& s) {
    return s == "paper-loop" ? CostModel::legacy_loop : CostModel::breakdown;
}

ArrivalModel parse_arrival(const std::string& s) {
    return s == "immediate" ? ArrivalModel::immediate : ArrivalModel::pipeline;
}

FulfillmentMode parse_mode(const std::string& s) {
    return s == "cross-dock" ? FulfillmentMode::cross_dock
                             : FulfillmentMode::continuous_review;
}

ProductCatalog load_spec(const std::string& spec, std::ostream& err) {
    if (spec == "builtin") return builtin_catalog();
    std::vector<std::string> warnings;
    ProductCatalog catalog = load_catalog(spec, &warnings);
    for (const std::string& w : warnings) err << "note: " << w << '\n';
    return catalog;
}

std::vector<double> starting_stocks(const ProductCatalog& catalog) {
    std::vector<double> s(catalog.size());
    for (std::size_t i = 0; i < catalog.size(); ++i) s[i] = catalog[i].starting_stock;
    return s;
}

struct OutPaths {
    std::filesystem::path json, csv;
};

OutPaths out_paths(const std::string& given) {
    std::filesystem::path p(given);
    const std::string ext = p.extension().string();
    std::string stem = (ext == ".json" || ext == ".csv")
                           ? (p.parent_path() / p.stem()).string()
                           : p.string();
    return {std::filesystem::path(stem + ".json"), std::filesystem::path(stem + ".csv")};
}

template <typename CsvWriter>
void write_reports(const RunManifest& manifest, const ordered_json& doc,
                   CsvWriter&& write_csv) {
    if (manifest.outputs.empty()) return;
    std::ofstream jf(manifest.outputs[0], std::ios::binary);
    if (!jf) throw std::invalid_argument("cannot write " + manifest.outputs[0]);
    jf << doc.dump(2) << '\n';
    std::ofstream cf(manifest.outputs[1], std::ios::binary);
    if (!cf) throw std::invalid_argument("cannot write " + manifest.outputs[1]);
    write_csv(cf);
}

RunManifest make_manifest(const std::string& command, const CliState& st,
                          const std::vector<std::string>& argv) {
    RunManifest m;
    m.command = command;
    m.argv = argv;
    m.catalog = st.catalog_spec;
    if (!st.out_path.empty()) {
        const OutPaths paths = out_paths(st.out_path);
        m.outputs = {paths.json.string(), paths.csv.string()};
    }
    return m;
}

int effective_samples(const CliState& st, int fallback) {
    return st.samples < 0 ? fallback : st.samples;
}

// --- subcommand bodies -------------------------------------------------------

int cmd_simulate(const CliState& st, const std::vector<std::string>& argv,
                 std::ostream& out, std::ostream& err) {
    const ProductCatalog catalog = load_spec(st.catalog_spec, err);
    const int samples = effective_samples(st, 1000);

    const std::vector<double> starting = starting_stocks(catalog);
    std::vector<double> reorder =
        st.reorder.empty() ? derive_reorder_levels(catalog) : st.reorder;
    if (reorder.size() != catalog.size())
        throw std::invalid_argument("--reorder needs one value per product");
    std::vector<double> qty =
        st.qty.empty() ? derive_order_quantities(reorder, starting) : st.qty;
    if (qty.size() != catalog.size())
        throw std::invalid_argument("--qty needs one value per product");
    std::vector<double> safety =
        st.safety.empty() ? std::vector<double>(catalog.size(), 0.0) : st.safety;
    if (safety.size() != catalog.size())
        throw std::invalid_argument("--safety needs one value per product");

    PolicyParams policy{reorder, qty, safety, parse_mode(st.mode)};
    SimConfig cfg;
    cfg.horizon_days = st.days;
    cfg.num_simulations = samples;
    cfg.seed = st.seed;
    cfg.cost_model = parse_cost_model(st.cost_model);
    cfg.arrival_model = parse_arrival(st.arrival);

    RunManifest manifest = make_manifest("simulate", st, argv);
    manifest.config = ordered_json{{"catalog", st.catalog_spec},
                                   {"seed", st.seed},
                                   {"days", st.days},
                                   {"samples", samples},
                                   {"cost_model", st.cost_model},
                                   {"arrival", st.arrival},
                                   {"mode", st.mode},
                                   {"reorder", reorder},
                                   {"qty", qty},
                                   {"safety", safety},
                                   {"threads", st.threads}};

    const McsSummary summary = run_mcs(catalog, starting, policy, cfg);

    write_reports(manifest, simulate_report_json(manifest, summary),
                  [&](std::ostream& cs) { write_replications_csv(cs, summary); });

    out << "simulate: " << catalog.size() << " products, " << samples
        << " replications, " << st.days << " days\n";
    out << "  mean cost:         " << format_number(summary.mean_cost) << '\n';
    out << "  average cost/day:  " << format_number(summary.average_cost) << '\n';
    out << "  avg inventory:     " << format_number(summary.average_inventory_level)
        << '\n';
    const CostBreakdown& c = summary.mean_components;
    out << "  components: purchase " << format_number(c.purchase) << ", order "
        << format_number(c.order) << ", holding " << format_number(c.holding)
        << ", stockout " << format_number(c.stockout) << '\n';
    return 0;
}

int cmd_optimize(const CliState& st, const std::vector<std::string>& argv,
                 std::ostream& out, std::ostream& err) {
    const ProductCatalog catalog = load_spec(st.catalog_spec, err);
    const int rescore_samples = effective_samples(st, 1000);

    SimConfig fit_cfg;
    fit_cfg.horizon_days = st.days;
    fit_cfg.num_simulations = kFitReplications;
    fit_cfg.seed = st.seed;
    fit_cfg.cost_model = parse_cost_model(st.cost_model);
    fit_cfg.arrival_model = parse_arrival(st.arrival);

    const StockObjective objective(catalog, fit_cfg, parse_mode(st.mode));

    const long budget = st.budget < 0 ? 0 : st.budget;
    OptimizerConfig cfg;
    cfg.algorithm = *parse_algorithm(st.algo);  // flag membership pre-checked
    cfg.population = st.pop;
    cfg.generations = st.gens;
    cfg.ensemble_size = st.ensemble;
    cfg.seed = st.seed;
    cfg.max_evaluations = budget;

    RunManifest manifest = make_manifest("optimize", st, argv);
    manifest.config = ordered_json{{"catalog", st.catalog_spec},
                                   {"seed", st.seed},
                                   {"days", st.days},
                                   {"samples", rescore_samples},
                                   {"fit_samples", kFitReplications},
                                   {"algo", st.algo},
                                   {"pop", st.pop},
                                   {"gens", st.gens},
                                   {"budget", budget},
                                   {"ensemble", st.ensemble},
                                   {"cost_model", st.cost_model},
                                   {"arrival", st.arrival},
                                   {"mode", st.mode},
                                   {"threads", st.threads}};

    const OptRun run = run_optimizer(objective.as_objective(), objective.bounds(), cfg);
    const double rescored = objective.rescore(run.best_x, rescore_samples);

    write_reports(manifest,
                  optimize_report_json(manifest, run, catalog, rescored,
                                       rescore_samples),
                  [&](std::ostream& cs) { write_history_csv(cs, run); });

    out << "optimize: " << st.algo << ", " << run.evaluations_used
        << " evaluations\n";
    out << "  best cost (" << kFitReplications
        << " reps): " << format_number(run.best_cost) << '\n';
    out << "  rescored (" << rescore_samples
        << " reps): " << format_number(rescored) << '\n';
    for (std::size_t i = 0; i < catalog.size(); ++i)
        out << "  stock " << catalog[i].id << ": " << format_number(run.best_x[i])
            << '\n';
    return 0;
}

int cmd_compare(const CliState& st, const std::vector<std::string>& argv,
                std::ostream& out, std::ostream& err) {
    const ProductCatalog catalog = load_spec(st.catalog_spec, err);
    const int rescore_samples = effective_samples(st, 1000);
    const long budget = st.budget < 0 ? 5000 : st.budget;
    if (st.runs < 1) throw std::invalid_argument("--runs must be >= 1");

    std::vector<Algorithm> algorithms;
    for (const std::string& name : st.algos) algorithms.push_back(*parse_algorithm(name));

    std::vector<std::uint64_t> seeds;
    for (int k = 0; k < st.runs; ++k) seeds.push_back(st.seed + static_cast<std::uint64_t>(k));

    SimConfig base_cfg;
    base_cfg.horizon_days = st.days;
    base_cfg.num_simulations = kFitReplications;
    base_cfg.seed = st.seed;
    base_cfg.cost_model = parse_cost_model(st.cost_model);
    base_cfg.arrival_model = parse_arrival(st.arrival);

    RunManifest manifest = make_manifest("compare", st, argv);
    manifest.config = ordered_json{{"catalog", st.catalog_spec},
                                   {"seed", st.seed},
                                   {"seeds", seeds},
                                   {"days", st.days},
                                   {"samples", rescore_samples},
                                   {"fit_samples", kFitReplications},
                                   {"algo", st.algos},
                                   {"pop", st.pop},
                                   {"budget", budget},
                                   {"runs", st.runs},
                                   {"cost_model", st.cost_model},
                                   {"arrival", st.arrival},
                                   {"mode", st.mode},
                                   {"threads", st.threads}};

    const ComparisonReport report =
        compare(catalog, base_cfg, parse_mode(st.mode), algorithms, budget, seeds,
                rescore_samples, st.pop);

    write_reports(manifest, compare_report_json(manifest, report, catalog),
                  [&](std::ostream& cs) { write_compare_csv(cs, report, catalog); });

    out << "compare: budget " << budget << " evaluations per run, " << st.runs
        << " seed(s), rescored at " << rescore_samples << " reps\n";
    for (const ComparisonRow& row : report.rows)
        out << "  " << row.algorithm << ": " << format_number(row.total_cost)
            << " (" << row.evaluations << " evals)\n";
    return 0;
}

int cmd_calibrate(const CliState& st, const std::vector<std::string>& argv,
                  std::ostream& out, std::ostream& err) {
    const ProductCatalog catalog = load_spec(st.catalog_spec, err);
    const int samples = effective_samples(st, 30);

    CalibrationSpace space;
    space.n_rows = st.rows;
    space.design_seed = st.seed;

    SimConfig cfg;
    cfg.horizon_days = st.days;
    cfg.num_simulations = samples;
    cfg.seed = st.seed;
    cfg.cost_model = parse_cost_model(st.cost_model);
    cfg.arrival_model = parse_arrival(st.arrival);

    RunManifest manifest = make_manifest("calibrate", st, argv);
    manifest.config = ordered_json{{"catalog", st.catalog_spec},
                                   {"seed", st.seed},
                                   {"days", st.days},
                                   {"samples", samples},
                                   {"rows", st.rows},
                                   {"reorder_scales", space.reorder_scales},
                                   {"safety_fractions", space.safety_fractions},
                                   {"lead_scales", space.lead_scales},
                                   {"quantity_scales", space.quantity_scales},
                                   {"cost_model", st.cost_model},
                                   {"arrival", st.arrival},
                                   {"mode", st.mode},
                                   {"threads", st.threads}};

    const CalibrationReport report =
        calibrate(catalog, space, cfg, parse_mode(st.mode));

    write_reports(manifest, calibrate_report_json(manifest, report, catalog),
                  [&](std::ostream& cs) { write_calibration_csv(cs, report, catalog); });

    const CalibrationRow& best = report.rows[report.best_index];
    out << "calibrate: " << report.rows.size() << " design rows, best row "
        << report.best_index << '\n';
    out << "  multipliers: reorder " << format_number(best.reorder_scale)
        << ", safety " << format_number(best.safety_fraction) << ", lead "
        << format_number(best.lead_scale) << ", quantity "
        << format_number(best.quantity_scale) << '\n';
    out << "  mean cost: " << format_number(best.mean_cost) << '\n';
    if (!report.design_exactly_balanced)
        out << "  (design is near-balanced: some level counts differ by one)\n";
    return 0;
}

int cmd_abc(const CliState& st, const std::vector<std::string>& argv,
            std::ostream& out, std::ostream& err) {
    const ProductCatalog catalog = load_spec(st.catalog_spec, err);

    RunManifest manifest = make_manifest("abc", st, argv);
    manifest.config = ordered_json{{"catalog", st.catalog_spec},
                                   {"cutoff_a", 0.8},
                                   {"cutoff_b", 0.95}};

    const std::vector<AbcRow> rows = abc_analysis(catalog);

    write_reports(manifest, abc_report_json(manifest, rows),
                  [&](std::ostream& cs) { write_abc_csv(cs, rows); });

    out << "abc: " << rows.size() << " products by consumption value\n";
    for (const AbcRow& row : rows)
        out << "  " << row.product_id << ": value " << format_number(row.consumption_value)
            << ", share " << format_number(row.share) << ", cumulative "
            << format_number(row.cumulative_share) << ", class " << row.category
            << '\n';
    return 0;
}

int cmd_sensitivity(const CliState& st, const std::vector<std::string>& argv,
                    std::ostream& out, std::ostream& err) {
    const ProductCatalog catalog = load_spec(st.catalog_spec, err);
    const int rescore_samples = effective_samples(st, 1000);

    SimConfig cfg;
    cfg.horizon_days = st.days;
    cfg.num_simulations = kFitReplications;
    cfg.seed = st.seed;
    cfg.cost_model = parse_cost_model(st.cost_model);
    cfg.arrival_model = parse_arrival(st.arrival);

    RunManifest manifest = make_manifest("sensitivity", st, argv);
    manifest.config = ordered_json{{"catalog", st.catalog_spec},
                                   {"seed", st.seed},
                                   {"days", st.days},
                                   {"samples", rescore_samples},
                                   {"fit_samples", kFitReplications},
                                   {"pops", st.pops},
                                   {"gens", st.gens},
                                   {"ensemble", st.ensemble},
                                   {"cost_model", st.cost_model},
                                   {"arrival", st.arrival},
                                   {"mode", st.mode},
                                   {"threads", st.threads}};

    const SensitivityReport report =
        sensitivity(catalog, cfg, parse_mode(st.mode), st.pops, {st.seed}, st.gens,
                    st.ensemble, rescore_samples);

    write_reports(manifest, sensitivity_report_json(manifest, report, catalog),
                  [&](std::ostream& cs) { write_sensitivity_csv(cs, report, catalog); });

    out << "sensitivity: populations";
    for (int p : st.pops) out << ' ' << p;
    out << '\n';
    for (const SensitivityRow& row : report.rows)
        out << "  pop " << row.population << ": cost "
            << format_number(row.total_cost) << " (" << row.evaluations_used
            << " evals)\n";
    out << "  relative spread: " << format_number(report.relative_spread) << '\n';
    return 0;
}

int cmd_demand_hist(const CliState& st, const std::vector<std::string>& argv,
                    std::ostream& out, std::ostream& err) {
    const ProductCatalog catalog = load_spec(st.catalog_spec, err);
    const int samples = effective_samples(st, 10000);

    HistogramSet hists;
    for (std::size_t i = 0; i < catalog.size(); ++i) {
        if (!st.product.empty() && catalog[i].id != st.product) continue;
        DemandStream stream;
        stream.seed = st.seed;
        stream.product_index = static_cast<int>(i);
        stream.mean = catalog[i].demand_mean;
        stream.stddev = catalog[i].demand_std;
        hists.emplace_back(catalog[i].id, demand_histogram(stream, samples, st.bins));
    }
    if (hists.empty())
        throw std::invalid_argument("unknown product id '" + st.product + "'");

    RunManifest manifest = make_manifest("demand-hist", st, argv);
    manifest.config = ordered_json{{"catalog", st.catalog_spec},
                                   {"seed", st.seed},
                                   {"samples", samples},
                                   {"bins", st.bins},
                                   {"product", st.product.empty() ? "all" : st.product}};

    write_reports(manifest, histogram_report_json(manifest, hists),
                  [&](std::ostream& cs) { write_histogram_csv(cs, hists); });

    for (const auto& [id, bins] : hists) {
        long total = 0;
        for (const HistogramBin& b : bins) total += b.count;
        out << "demand-hist " << id << ": " << bins.size() << " bins over ["
            << format_number(bins.front().lo) << ", "
            << format_number(bins.back().hi) << "), " << total << " samples\n";
    }
    return 0;
}

}  // namespace

int run_command(const std::vector<std::string>& argv, std::ostream& out,
                std::ostream& err) {
    CliState st;
    CLI::App app{"inventory policy simulation and optimization toolkit", "invopt"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    const auto algo_names = {std::string("de-best1bin"), std::string("de-adaptive"),
                             std::string("de-multistart"), std::string("gwo"),
                             std::string("woa"), std::string("sa"),
                             std::string("random-search")};
    st.algos.assign(algo_names.begin(), algo_names.end());

    auto add_catalog = [&](CLI::App* sub) {
        sub->add_option("--catalog", st.catalog_spec, "Product catalog CSV path, or 'builtin'")
            ->capture_default_str();
        sub->add_option("--out", st.out_path,
                        "Report base path; writes <base>.json and <base>.csv");
    };
    auto add_common = [&](CLI::App* sub, const char* samples_help) {
        add_catalog(sub);
        sub->add_option("--seed", st.seed, "Base random seed")->capture_default_str();
        sub->add_option("--days", st.days, "Simulation horizon in days")
            ->capture_default_str();
        sub->add_option("--samples", st.samples, samples_help);
        sub->add_option("--threads", st.threads,
                        "Cap worker threads (0 = library default)");
        sub->add_option("--cost-model", st.cost_model, "Cost accounting variant")
            ->check(CLI::IsMember({"breakdown", "paper-loop"}))
            ->capture_default_str();
        sub->add_option("--arrival", st.arrival, "Order arrival model")
            ->check(CLI::IsMember({"pipeline", "immediate"}))
            ->capture_default_str();
        sub->add_option("--mode", st.mode, "Fulfillment mode")
            ->check(CLI::IsMember({"cr", "cross-dock"}))
            ->capture_default_str();
    };

    CLI::App* simulate =
        app.add_subcommand("simulate", "Monte Carlo simulation of one policy");
    add_common(simulate, "Replications (default 1000)");
    simulate->add_option("--reorder", st.reorder,
                         "Reorder triggers per product (default derived)")
        ->delimiter(',');
    simulate->add_option("--qty", st.qty,
                         "Order quantities per product (default derived)")
        ->delimiter(',');
    simulate->add_option("--safety", st.safety,
                         "Safety stocks per product, reporting only (default 0)")
        ->delimiter(',');

    CLI::App* optimize =
        app.add_subcommand("optimize", "Optimize starting stocks with one algorithm");
    add_common(optimize, "Final-scoring replications (default 1000)");
    optimize->add_option("--algo", st.algo, "Algorithm")
        ->check(CLI::IsMember(std::vector<std::string>(algo_names)))
        ->capture_default_str();
    optimize->add_option("--pop", st.pop, "Population size")->capture_default_str();
    optimize->add_option("--gens", st.gens, "Generations")->capture_default_str();
    optimize->add_option("--budget", st.budget,
                         "Max objective evaluations (0 = pop*(gens+1))");
    optimize->add_option("--ensemble", st.ensemble,
                         "Members for de-multistart")
        ->capture_default_str();

    CLI::App* cmp = app.add_subcommand(
        "compare", "Rank algorithms under an equal evaluation budget");
    add_common(cmp, "Final-scoring replications (default 1000)");
    cmp->add_option("--algo", st.algos, "Comma-separated algorithm list")
        ->delimiter(',')
        ->check(CLI::IsMember(std::vector<std::string>(algo_names)));
    cmp->add_option("--pop", st.pop, "Population size")->capture_default_str();
    cmp->add_option("--budget", st.budget, "Evaluations per run (default 5000)");
    cmp->add_option("--runs", st.runs, "Independent seeds per algorithm")
        ->capture_default_str();

    CLI::App* cal = app.add_subcommand(
        "calibrate", "Policy-multiplier calibration over a Latin hypercube design");
    add_common(cal, "Replications per design row (default 30)");
    cal->add_option("--rows", st.rows, "Design rows")->capture_default_str();

    CLI::App* abc =
        app.add_subcommand("abc", "Pareto classification by consumption value");
    add_catalog(abc);

    CLI::App* sens = app.add_subcommand(
        "sensitivity", "Best cost across population sizes at matched generations");
    add_common(sens, "Final-scoring replications (default 1000)");
    sens->add_option("--pops", st.pops, "Population sizes")
        ->delimiter(',')
        ->capture_default_str();
    sens->add_option("--gens", st.gens, "Generations per size")->capture_default_str();
    sens->add_option("--ensemble", st.ensemble, "Ensemble members per size")
        ->capture_default_str();

    CLI::App* hist =
        app.add_subcommand("demand-hist", "Export demand histograms per product");
    add_catalog(hist);
    hist->add_option("--seed", st.seed, "Base random seed")->capture_default_str();
    hist->add_option("--samples", st.samples, "Draws per product (default 10000)");
    hist->add_option("--bins", st.bins, "Histogram bins")->capture_default_str();
    hist->add_option("--product", st.product, "Restrict to one product id");

    try {
        std::vector<std::string> reversed(argv.rbegin(), argv.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

#ifdef _OPENMP
    if (st.threads > 0) omp_set_num_threads(st.threads);
#endif

    try {
        if (*simulate) return cmd_simulate(st, argv, out, err);
        if (*optimize) return cmd_optimize(st, argv, out, err);
        if (*cmp) return cmd_compare(st, argv, out, err);
        if (*cal) return cmd_calibrate(st, argv, out, err);
        if (*abc) return cmd_abc(st, argv, out, err);
        if (*sens) return cmd_sensitivity(st, argv, out, err);
        if (*hist) return cmd_demand_hist(st, argv, out, err);
        err << "error: no subcommand selected\n";
        return 1;
    } catch (const CatalogError& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace invopt
