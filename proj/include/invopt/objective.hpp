#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "invopt/catalog.hpp"
#include "invopt/simulator.hpp"

namespace invopt {

// Search box for decision vectors: per product, starting stock in
// [0, catalog starting_stock].
struct Bounds {
    std::vector<double> lower;
    std::vector<double> upper;

    static Bounds stock_bounds(const ProductCatalog& catalog);
    std::size_t size() const { return lower.size(); }
};

// r_i = mean_i * lead_i + sqrt(lead_i) * std_i
std::vector<double> derive_reorder_levels(const ProductCatalog& catalog);

// q_i = max(r_i - x_i, 0); throws std::invalid_argument on size mismatch
std::vector<double> derive_order_quantities(std::span<const double> reorder_levels,
                                            std::span<const double> stocks);

// Componentwise clip into the box. Idempotent.
std::vector<double> repair(std::vector<double> x, const Bounds& bounds);

// Generic objective handle for the optimizers. `fn` must be pure for a fixed
// configuration; `thread_safe` permits batched parallel evaluation.
struct Objective {
    std::function<double(std::span<const double>)> fn;
    bool thread_safe = true;
};

// Mean simulated cost of running the catalog with starting stocks x, the
// derived reorder levels and lot sizes q_i = max(r_i - x_i, 0). Stocks are
// rounded to whole units at simulation entry. All evaluations share the
// demand table generated from config.seed (common random numbers), so the
// value is a pure function of x; callers are expected to pass repaired
// (in-bounds) points. config.num_simulations is the per-evaluation
// replication count (the optimizers' default fidelity is 30).
class StockObjective {
public:
    StockObjective(ProductCatalog catalog, SimConfig config,
                   FulfillmentMode mode = FulfillmentMode::continuous_review);

    double operator()(std::span<const double> x) const;

    // High-fidelity re-evaluation (same base seed, more replications); does
    // not count toward evaluations().
    double rescore(std::span<const double> x, int replications) const;

    long evaluations() const { return evaluations_.load(std::memory_order_relaxed); }
    const Bounds& bounds() const { return bounds_; }
    const ProductCatalog& catalog() const { return catalog_; }
    const std::vector<double>& reorder_levels() const { return reorder_; }
    const SimConfig& config() const { return config_; }

    Objective as_objective() const {
        return {[this](std::span<const double> x) { return (*this)(x); }, true};
    }

private:
    double evaluate_with(std::span<const double> x, const SimConfig& cfg,
                         const DemandTable* table) const;

    ProductCatalog catalog_;
    SimConfig config_;
    FulfillmentMode mode_;
    Bounds bounds_;
    std::vector<double> reorder_;
    DemandTable table_;
    mutable std::atomic<long> evaluations_{0};
};

}  // namespace invopt
