#include "invopt/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

#include "invopt/objective.hpp"
#include "invopt/optimizers.hpp"

namespace invopt {

std::vector<AbcRow> abc_analysis(const ProductCatalog& catalog, double cutoff_a,
                                 double cutoff_b) {
    if (!(cutoff_a > 0.0) || !(cutoff_a < cutoff_b) || !(cutoff_b <= 1.0))
        throw std::invalid_argument("cutoffs must satisfy 0 < cutoff_a < cutoff_b <= 1");

    std::vector<AbcRow> rows;
    rows.reserve(catalog.size());
    double total = 0.0;
    for (const Product& p : catalog) {
        AbcRow row;
        row.product_id = p.id;
        row.consumption_value = p.demand_lead * p.selling_price;
        total += row.consumption_value;
        rows.push_back(std::move(row));
    }
    if (total <= 0.0)
        throw std::domain_error("every consumption value is zero; cannot rank products");

    std::stable_sort(rows.begin(), rows.end(), [](const AbcRow& a, const AbcRow& b) {
        return a.consumption_value > b.consumption_value;
    });

    double cumulative = 0.0;
    for (AbcRow& row : rows) {
        row.share = row.consumption_value / total;
        cumulative += row.share;
        row.cumulative_share = cumulative;
        row.category = cumulative <= cutoff_a ? 'A' : cumulative <= cutoff_b ? 'B' : 'C';
    }
    return rows;
}

namespace {

std::vector<double> dedupe_levels(const std::vector<double>& levels) {
    std::vector<double> out;
    for (double v : levels)
        if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
    return out;
}

}  // namespace

LhsDesign lhs_design(const std::vector<LhsFactor>& factors, int n_rows,
                     std::uint64_t seed, bool allow_near_balance) {
    if (factors.empty()) throw std::invalid_argument("design needs at least one factor");
    if (n_rows < 1) throw std::invalid_argument("n_rows must be >= 1");

    LhsDesign design;
    design.n_rows = n_rows;
    design.factors.reserve(factors.size());
    for (const LhsFactor& f : factors) {
        LhsFactor cleaned{f.name, dedupe_levels(f.levels)};
        if (cleaned.levels.empty())
            throw std::invalid_argument("factor '" + f.name + "' has no levels");
        const int count = static_cast<int>(cleaned.levels.size());
        if (n_rows % count != 0) {
            if (!allow_near_balance)
                throw std::invalid_argument(
                    "factor '" + f.name + "' has " + std::to_string(count) +
                    " levels, which does not divide n_rows=" + std::to_string(n_rows));
            design.exactly_balanced = false;
        }
        design.factors.push_back(std::move(cleaned));
    }

    // Distinct-combination capacity; saturate instead of overflowing.
    double combos = 1.0;
    for (const LhsFactor& f : design.factors) {
        combos *= static_cast<double>(f.levels.size());
        if (combos > 1e18) {
            combos = 1e18;
            break;
        }
    }
    if (combos < static_cast<double>(n_rows))
        throw std::invalid_argument(
            "cannot build " + std::to_string(n_rows) +
            " unique rows from fewer distinct level combinations");

    const std::size_t n_factors = design.factors.size();

    // When the capacity equals n_rows, the only duplicate-free design is the
    // full factorial itself (which is automatically balanced); sampling
    // reduces to shuffling its row order. Rejection below would almost never
    // hit that single admissible multiset.
    {
        std::uint64_t exact = 1;
        bool tight = true;
        for (const LhsFactor& f : design.factors) {
            exact *= f.levels.size();
            if (exact > static_cast<std::uint64_t>(n_rows)) {
                tight = false;
                break;
            }
        }
        if (tight && exact == static_cast<std::uint64_t>(n_rows)) {
            design.rows.assign(static_cast<std::size_t>(n_rows),
                               std::vector<int>(n_factors));
            for (int r = 0; r < n_rows; ++r) {
                int rem = r;
                for (std::size_t f = n_factors; f-- > 0;) {
                    const int count = static_cast<int>(design.factors[f].levels.size());
                    design.rows[static_cast<std::size_t>(r)][f] = rem % count;
                    rem /= count;
                }
            }
            std::mt19937_64 rng(seed);
            std::shuffle(design.rows.begin(), design.rows.end(), rng);
            return design;
        }
    }

    // Column template per factor: each level index repeated n/L times, the
    // first n%L levels once more when near-balance is allowed.
    std::vector<std::vector<int>> columns(n_factors);
    for (std::size_t f = 0; f < n_factors; ++f) {
        const int count = static_cast<int>(design.factors[f].levels.size());
        const int base = n_rows / count;
        const int extra = n_rows % count;
        for (int level = 0; level < count; ++level) {
            const int reps = base + (level < extra ? 1 : 0);
            columns[f].insert(columns[f].end(), static_cast<std::size_t>(reps), level);
        }
    }

    // Whether row tuples fit a mixed-radix 64-bit key (cheap uniqueness check).
    const bool keyable = combos < 9e18;

    std::mt19937_64 rng(seed);
    constexpr int kMaxRedraws = 1'000'000;
    std::vector<std::uint64_t> keys(static_cast<std::size_t>(n_rows));
    for (int attempt = 0; attempt < kMaxRedraws; ++attempt) {
        for (auto& column : columns) std::shuffle(column.begin(), column.end(), rng);

        bool unique;
        if (keyable) {
            for (int r = 0; r < n_rows; ++r) {
                std::uint64_t key = 0;
                for (std::size_t f = 0; f < n_factors; ++f)
                    key = key * design.factors[f].levels.size() +
                          static_cast<std::uint64_t>(columns[f][static_cast<std::size_t>(r)]);
                keys[static_cast<std::size_t>(r)] = key;
            }
            std::sort(keys.begin(), keys.end());
            unique = std::adjacent_find(keys.begin(), keys.end()) == keys.end();
        } else {
            std::set<std::vector<int>> seen;
            unique = true;
            for (int r = 0; r < n_rows && unique; ++r) {
                std::vector<int> row(n_factors);
                for (std::size_t f = 0; f < n_factors; ++f)
                    row[f] = columns[f][static_cast<std::size_t>(r)];
                unique = seen.insert(std::move(row)).second;
            }
        }
        if (!unique) continue;

        design.rows.assign(static_cast<std::size_t>(n_rows),
                           std::vector<int>(n_factors));
        for (int r = 0; r < n_rows; ++r)
            for (std::size_t f = 0; f < n_factors; ++f)
                design.rows[static_cast<std::size_t>(r)][f] =
                    columns[f][static_cast<std::size_t>(r)];
        return design;
    }
    throw std::runtime_error("no duplicate-free design found within the retry limit");
}

CalibrationReport calibrate(const ProductCatalog& catalog,
                            const CalibrationSpace& space, const SimConfig& config,
                            FulfillmentMode mode) {
    const std::vector<LhsFactor> factors{
        {"reorder_scale", space.reorder_scales},
        {"safety_fraction", space.safety_fractions},
        {"lead_scale", space.lead_scales},
        {"quantity_scale", space.quantity_scales},
    };
    const LhsDesign design = lhs_design(factors, space.n_rows, space.design_seed,
                                        /*allow_near_balance=*/true);

    const DemandTable table = DemandTable::generate(
        catalog, config.seed, config.num_simulations, config.horizon_days);

    CalibrationReport report;
    report.design_exactly_balanced = design.exactly_balanced;
    report.rows.reserve(design.rows.size());

    const std::size_t n = catalog.size();
    std::vector<double> starting(n);
    for (std::size_t i = 0; i < n; ++i) starting[i] = catalog[i].starting_stock;
    for (std::size_t r = 0; r < design.rows.size(); ++r) {
        CalibrationRow row;
        row.reorder_scale = design.value(r, 0);
        row.safety_fraction = design.value(r, 1);
        row.lead_scale = design.value(r, 2);
        row.quantity_scale = design.value(r, 3);

        std::vector<Product> scaled(catalog.begin(), catalog.end());
        row.reorder_points.resize(n);
        row.safety_stocks.resize(n);
        row.order_quantities.resize(n);
        row.lead_times.resize(n);
        PolicyParams policy;
        policy.mode = mode;
        policy.reorder_levels.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            const int lead = std::max(
                1, static_cast<int>(std::floor(
                       row.lead_scale * static_cast<double>(catalog[i].lead_time) + 0.5)));
            scaled[i].lead_time = lead;
            const double base = catalog[i].demand_mean * static_cast<double>(lead);
            row.lead_times[i] = lead;
            row.reorder_points[i] = row.reorder_scale * base;
            row.safety_stocks[i] = row.safety_fraction * row.reorder_points[i];
            row.order_quantities[i] = row.quantity_scale * base;
            policy.reorder_levels[i] = row.reorder_points[i] + row.safety_stocks[i];
        }
        policy.order_quantities = row.order_quantities;
        policy.safety_stocks = row.safety_stocks;

        const ProductCatalog effective(scaled);
        const McsSummary summary = run_mcs(effective, starting, policy, config, &table);
        row.mean_cost = summary.mean_cost;
        row.average_cost = summary.average_cost;

        if (!report.rows.empty() && row.mean_cost < report.rows[report.best_index].mean_cost)
            report.best_index = report.rows.size();
        report.rows.push_back(std::move(row));
    }
    return report;
}

SensitivityReport sensitivity(const ProductCatalog& catalog, const SimConfig& config,
                              FulfillmentMode mode, const std::vector<int>& pop_sizes,
                              const std::vector<std::uint64_t>& seeds,
                              int generations, int ensemble,
                              int rescore_replications) {
    if (pop_sizes.empty())
        throw std::invalid_argument("sensitivity needs at least one population size");
    if (seeds.size() != 1 && seeds.size() != pop_sizes.size())
        throw std::invalid_argument(
            "seeds must hold one shared seed or one seed per population size");
    if (rescore_replications < 1)
        throw std::invalid_argument("rescore_replications must be >= 1");

    SensitivityReport report;
    report.generations = generations;
    report.rescore_replications = rescore_replications;

    const Bounds bounds = Bounds::stock_bounds(catalog);
    const StockObjective scorer(catalog, config, mode);

    for (std::size_t k = 0; k < pop_sizes.size(); ++k) {
        const std::uint64_t seed = seeds[seeds.size() == 1 ? 0 : k];
        SimConfig run_cfg = config;
        run_cfg.seed = seed;
        const StockObjective objective(catalog, run_cfg, mode);

        OptimizerConfig cfg;
        cfg.algorithm = Algorithm::de_multistart;
        cfg.population = pop_sizes[k];
        cfg.generations = generations;
        cfg.ensemble_size = ensemble;
        cfg.seed = seed;
        const OptRun run = multi_start_de(objective.as_objective(), bounds, cfg);

        SensitivityRow row;
        row.population = pop_sizes[k];
        row.stocks = run.best_x;
        row.total_cost = scorer.rescore(run.best_x, rescore_replications);
        row.evaluations_used = run.evaluations_used;
        report.rows.push_back(std::move(row));
    }

    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (const SensitivityRow& row : report.rows) {
        lo = std::min(lo, row.total_cost);
        hi = std::max(hi, row.total_cost);
    }
    if (hi > lo && lo > 0.0)
        report.relative_spread = (hi - lo) / lo;
    else if (hi > lo)
        report.relative_spread = std::numeric_limits<double>::infinity();
    return report;
}

}  // namespace invopt
