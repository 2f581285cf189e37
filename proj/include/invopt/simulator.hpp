#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "invopt/catalog.hpp"

namespace invopt {

// continuous_review sells only from on-hand stock; cross_dock additionally
// lets units arriving on a day satisfy that day's unmet demand before they
// enter stock. The distinction applies to the breakdown cost model's sales
// step; the legacy loop has no explicit sales step to split.
enum class FulfillmentMode { continuous_review, cross_dock };

// breakdown charges per day: order cost plus purchase on placement, holding on
// end-of-day stock, stockout per unfilled unit. legacy_loop reproduces an
// older spreadsheet-style loop verbatim: negative stock is clamped to zero at
// half a unit holding penalty, and every lead_time-th day applies a second
// demand decrement plus a holding charge on whatever (possibly negative)
// stock remains. Its oddities are intentional and covered by tests.
enum class CostModel { breakdown, legacy_loop };

// pipeline delivers an order lead_time days after placement; immediate adds it
// to stock in the same step it is placed.
enum class ArrivalModel { pipeline, immediate };

struct PolicyParams {
    std::vector<double> reorder_levels;    // order trigger per product
    std::vector<double> order_quantities;  // fixed lot size per product
    std::vector<double> safety_stocks;     // carried for reporting; triggers
                                           // that include safety are built by
                                           // the calibration layer
    FulfillmentMode mode = FulfillmentMode::continuous_review;
};

struct SimConfig {
    int horizon_days = 365;
    int num_simulations = 1;
    std::uint64_t seed = 0;
    CostModel cost_model = CostModel::breakdown;
    ArrivalModel arrival_model = ArrivalModel::pipeline;
    bool collect_trace = false;
};

struct CostBreakdown {
    double purchase = 0.0;
    double order = 0.0;
    double holding = 0.0;
    double stockout = 0.0;
    double total = 0.0;  // always purchase + order + holding + stockout
};

struct TraceRow {
    int day = 0;
    int product = 0;
    double on_hand = 0.0;   // end of day
    double on_order = 0.0;  // end of day
    int demand = 0;
    double sold = 0.0;
    double ordered = 0.0;   // units ordered this day (0 when no order)
    double cost_total = 0.0;  // this product's cost contribution today
};

struct SimResult {
    CostBreakdown cost;
    double total_inventory_level = 0.0;  // unit-days of end-of-day stock
    double revenue = 0.0;
    std::vector<double> units_sold;     // per product
    std::vector<double> orders_placed;  // per product
    std::vector<TraceRow> trace;        // filled when SimConfig::collect_trace
};

struct McsSummary {
    double mean_cost = 0.0;     // mean of per-replication totals
    double average_cost = 0.0;  // sum of totals / (replications * horizon)
    double average_inventory_level = 0.0;
    CostBreakdown mean_components;
    std::vector<double> replication_costs;
};

// Pre-generated demand for every (replication, day, product) cell of one
// (seed, horizon) block. Demand does not depend on the policy or stocks, so
// optimizers evaluating many candidates against common random numbers reuse
// one table; values are bit-identical to on-the-fly sampling.
class DemandTable {
public:
    static DemandTable generate(const ProductCatalog& catalog, std::uint64_t seed,
                                int replications, int horizon_days);

    std::span<const int> replication(int rep) const {
        const std::size_t n = static_cast<std::size_t>(horizon_) * products_;
        return {values_.data() + n * rep, n};
    }
    int replications() const { return replications_; }
    int horizon() const { return horizon_; }

private:
    int replications_ = 0;
    int horizon_ = 0;
    int products_ = 0;
    std::vector<int> values_;  // [rep][day][product]
};

// One replication of the daily loop: per product, (1) place an order of the
// fixed lot when inventory position (on hand + on order) sits below the
// trigger, (2) receive arrivals, (3) meet demand, (4) charge costs per the
// cost model. Sales are lost, never backordered.
SimResult simulate_once(const ProductCatalog& catalog,
                        std::span<const double> starting_stocks,
                        const PolicyParams& policy, const SimConfig& config,
                        int replication);

// Runs config.num_simulations independent replications and aggregates them.
// `table` optionally supplies precomputed demand for exactly this
// (seed, replications, horizon) block.
McsSummary run_mcs(const ProductCatalog& catalog,
                   std::span<const double> starting_stocks,
                   const PolicyParams& policy, const SimConfig& config,
                   const DemandTable* table = nullptr);

// Revenue minus annualized holding, order and purchase costs, computed from
// the daily trace (throws std::invalid_argument when the trace is missing):
//   sum_i [ SP_i * sold_i - ((annual_rate * V_i / 365) * stock_days_i
//           + orders_i * C_i + Pc_i * purchased_i) ]
double profit_report(const SimResult& result, const ProductCatalog& catalog,
                     double annual_rate = 20.0);

}  // namespace invopt
