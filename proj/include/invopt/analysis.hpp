#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "invopt/catalog.hpp"
#include "invopt/simulator.hpp"

namespace invopt {

// --- ABC / Pareto classification -------------------------------------------

struct AbcRow {
    std::string product_id;
    double consumption_value = 0.0;  // demand_lead * selling_price
    double share = 0.0;
    double cumulative_share = 0.0;
    char category = 'C';
};

// Rows come back sorted by descending consumption value. Category is 'A'
// while the running cumulative share stays <= cutoff_a, 'B' while <= cutoff_b,
// 'C' afterwards. Throws std::invalid_argument on bad cutoffs and
// std::domain_error when every consumption value is zero.
std::vector<AbcRow> abc_analysis(const ProductCatalog& catalog,
                                 double cutoff_a = 0.8, double cutoff_b = 0.95);

// --- Latin hypercube designs ------------------------------------------------

struct LhsFactor {
    std::string name;
    std::vector<double> levels;
};

struct LhsDesign {
    std::vector<LhsFactor> factors;
    std::vector<std::vector<int>> rows;  // n_rows x n_factors, level indices
    int n_rows = 0;
    // False when some factor's level count does not divide n_rows; such
    // factors are spread as evenly as possible (counts differ by one).
    bool exactly_balanced = true;

    double value(std::size_t row, std::size_t factor) const {
        return factors[factor].levels[static_cast<std::size_t>(rows[row][factor])];
    }
};

// Stratified design: each factor's column holds every level equally often
// (n_rows must be a multiple of the level count unless allow_near_balance is
// set), shuffled under the seed. Duplicate rows are resolved by redrawing the
// whole permutation set; std::runtime_error after the retry limit.
LhsDesign lhs_design(const std::vector<LhsFactor>& factors, int n_rows,
                     std::uint64_t seed, bool allow_near_balance = false);

// --- Policy calibration over an LHS design ----------------------------------

struct CalibrationSpace {
    std::vector<double> reorder_scales{0.8, 1.0, 1.2};
    std::vector<double> safety_fractions{0.5, 1.0};
    std::vector<double> lead_scales{0.8, 1.0, 1.2};
    std::vector<double> quantity_scales{0.8, 1.0, 1.2};
    int n_rows = 27;
    std::uint64_t design_seed = 1;
};

struct CalibrationRow {
    double reorder_scale = 1.0;
    double safety_fraction = 1.0;
    double lead_scale = 1.0;
    double quantity_scale = 1.0;
    std::vector<double> reorder_points;    // reorder_scale * mu_i * lead_i
    std::vector<double> safety_stocks;     // safety_fraction * reorder point
    std::vector<double> order_quantities;  // quantity_scale * mu_i * lead_i
    std::vector<int> lead_times;           // scaled, >= 1
    double mean_cost = 0.0;
    double average_cost = 0.0;  // per simulated day
};

struct CalibrationReport {
    std::vector<CalibrationRow> rows;  // design order
    std::size_t best_index = 0;        // lowest mean cost, first on ties
    bool design_exactly_balanced = true;
};

// Simulates every design row with run_mcs under `config`. The replenishment
// trigger for a row is reorder_point + safety_stock per product; order
// quantities are fixed lots.
CalibrationReport calibrate(const ProductCatalog& catalog,
                            const CalibrationSpace& space, const SimConfig& config,
                            FulfillmentMode mode = FulfillmentMode::continuous_review);

// --- Population-size sensitivity ---------------------------------------------

struct SensitivityRow {
    int population = 0;
    std::vector<double> stocks;
    double total_cost = 0.0;  // rescored at reporting fidelity
    long evaluations_used = 0;
};

struct SensitivityReport {
    std::vector<SensitivityRow> rows;     // one per requested size, input order
    double relative_spread = 0.0;         // (max - min) / min over total_cost
    int generations = 0;
    int rescore_replications = 0;
};

// Runs the multi-start DE ensemble once per population size with the same
// generation budget, then rescores each winner on the base-seed demand at
// `rescore_replications`. `seeds` holds either one seed shared by all sizes
// or exactly one seed per size.
SensitivityReport sensitivity(const ProductCatalog& catalog, const SimConfig& config,
                              FulfillmentMode mode,
                              const std::vector<int>& pop_sizes,
                              const std::vector<std::uint64_t>& seeds,
                              int generations = 100, int ensemble = 5,
                              int rescore_replications = 1000);

}  // namespace invopt
