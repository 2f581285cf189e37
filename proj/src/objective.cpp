#include "invopt/objective.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace invopt {

Bounds Bounds::stock_bounds(const ProductCatalog& catalog) {
    Bounds b;
    b.lower.assign(catalog.size(), 0.0);
    b.upper.reserve(catalog.size());
    for (const Product& p : catalog) b.upper.push_back(p.starting_stock);
    return b;
}

std::vector<double> derive_reorder_levels(const ProductCatalog& catalog) {
    std::vector<double> r;
    r.reserve(catalog.size());
    for (const Product& p : catalog)
        r.push_back(p.demand_mean * p.lead_time +
                    std::sqrt(static_cast<double>(p.lead_time)) * p.demand_std);
    return r;
}

std::vector<double> derive_order_quantities(std::span<const double> reorder_levels,
                                            std::span<const double> stocks) {
    if (reorder_levels.size() != stocks.size())
        throw std::invalid_argument("reorder levels and stocks must have equal length");
    std::vector<double> q(reorder_levels.size());
    for (std::size_t i = 0; i < q.size(); ++i)
        q[i] = std::max(reorder_levels[i] - stocks[i], 0.0);
    return q;
}

std::vector<double> repair(std::vector<double> x, const Bounds& bounds) {
    if (x.size() != bounds.size())
        throw std::invalid_argument("point and bounds must have equal length");
    for (std::size_t i = 0; i < x.size(); ++i)
        x[i] = std::clamp(x[i], bounds.lower[i], bounds.upper[i]);
    return x;
}

StockObjective::StockObjective(ProductCatalog catalog, SimConfig config,
                               FulfillmentMode mode)
    : catalog_(std::move(catalog)),
      config_(config),
      mode_(mode),
      bounds_(Bounds::stock_bounds(catalog_)),
      reorder_(derive_reorder_levels(catalog_)),
      table_(DemandTable::generate(catalog_, config.seed, config.num_simulations,
                                   config.horizon_days)) {
    if (config_.num_simulations < 1)
        throw std::invalid_argument("objective needs num_simulations >= 1");
}

double StockObjective::evaluate_with(std::span<const double> x, const SimConfig& cfg,
                                     const DemandTable* table) const {
    if (x.size() != catalog_.size())
        throw std::invalid_argument("decision vector must have one entry per product");
    PolicyParams policy;
    policy.reorder_levels = reorder_;
    policy.order_quantities = derive_order_quantities(reorder_, x);
    policy.mode = mode_;
    std::vector<double> stocks(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) stocks[i] = std::floor(x[i] + 0.5);
    return run_mcs(catalog_, stocks, policy, cfg, table).mean_cost;
}

double StockObjective::operator()(std::span<const double> x) const {
    evaluations_.fetch_add(1, std::memory_order_relaxed);
    return evaluate_with(x, config_, &table_);
}

double StockObjective::rescore(std::span<const double> x, int replications) const {
    SimConfig cfg = config_;
    cfg.num_simulations = replications;
    return evaluate_with(x, cfg, nullptr);
}

}  // namespace invopt
