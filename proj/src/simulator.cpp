#include "invopt/simulator.hpp"

#include <algorithm>
#include <stdexcept>

#include "invopt/demand.hpp"

namespace invopt {
namespace {

void validate_inputs(const ProductCatalog& catalog, std::span<const double> starting,
                     const PolicyParams& policy, const SimConfig& cfg) {
    const std::size_t n = catalog.size();
    if (starting.size() != n)
        throw std::invalid_argument("starting stocks: expected one entry per product");
    if (policy.reorder_levels.size() != n)
        throw std::invalid_argument("policy reorder_levels: expected one entry per product");
    if (policy.order_quantities.size() != n)
        throw std::invalid_argument("policy order_quantities: expected one entry per product");
    if (!policy.safety_stocks.empty() && policy.safety_stocks.size() != n)
        throw std::invalid_argument("policy safety_stocks: expected empty or one entry per product");
    for (double s : starting)
        if (!(s >= 0.0)) throw std::invalid_argument("starting stocks must be >= 0");
    if (cfg.horizon_days < 0) throw std::invalid_argument("horizon_days must be >= 0");
    if (cfg.num_simulations < 1) throw std::invalid_argument("num_simulations must be >= 1");
}

// One replication over a prepared demand block laid out [day][product].
SimResult simulate_core(const ProductCatalog& catalog,
                        std::span<const double> starting,
                        const PolicyParams& policy, const SimConfig& cfg,
                        std::span<const int> demand) {
    const int P = static_cast<int>(catalog.size());
    const int H = cfg.horizon_days;

    SimResult res;
    res.units_sold.assign(P, 0.0);
    res.orders_placed.assign(P, 0.0);

    std::vector<double> on_hand(starting.begin(), starting.end());
    std::vector<double> on_order(P, 0.0);

    // Pipeline arrivals per product go through a ring indexed day % (lead+1);
    // an order placed on day d lands in slot (d+lead) % (lead+1), which cannot
    // collide with the slot drained on day d.
    std::vector<int> lead(P), ring_off(P + 1, 0);
    for (int i = 0; i < P; ++i) {
        lead[i] = catalog[i].lead_time;
        ring_off[i + 1] = ring_off[i] + lead[i] + 1;
    }
    std::vector<double> ring(ring_off[P], 0.0);

    double purchase = 0.0, order_cost = 0.0, holding = 0.0, stockout = 0.0;
    const bool pipeline = cfg.arrival_model == ArrivalModel::pipeline;
    const bool legacy = cfg.cost_model == CostModel::legacy_loop;
    const bool cross = policy.mode == FulfillmentMode::cross_dock;

    for (int d = 0; d < H; ++d) {
        for (int i = 0; i < P; ++i) {
            const Product& p = catalog[i];
            double day_cost = 0.0;
            double ordered = 0.0;

            // (1) reorder on inventory position; a zero lot means no resupply
            const double q = policy.order_quantities[i];
            if (q > 0.0 && on_hand[i] + on_order[i] < policy.reorder_levels[i]) {
                ordered = q;
                res.orders_placed[i] += 1.0;
                const double oc = p.order_cost;
                const double pc = p.purchase_cost * q;
                order_cost += oc;
                purchase += pc;
                day_cost += oc + pc;
                if (pipeline) {
                    ring[ring_off[i] + (d + lead[i]) % (lead[i] + 1)] += q;
                    on_order[i] += q;
                } else {
                    on_hand[i] += q;
                }
            }

            // (2) arrivals due today
            double arrived = 0.0;
            if (pipeline) {
                double& slot = ring[ring_off[i] + d % (lead[i] + 1)];
                arrived = slot;
                slot = 0.0;
                on_order[i] -= arrived;
            }

            const int dem = demand[static_cast<std::size_t>(d) * P + i];
            double sold = 0.0;

            if (!legacy) {
                // (3) sales; unmet demand is lost
                if (cross) {
                    const double from_stock =
                        std::min<double>(dem, std::max(on_hand[i], 0.0));
                    const double direct = std::min<double>(dem - from_stock, arrived);
                    sold = from_stock + direct;
                    on_hand[i] += arrived - sold;
                } else {
                    on_hand[i] += arrived;
                    sold = std::min<double>(dem, on_hand[i]);
                    on_hand[i] -= sold;
                }
                // (4) holding on end-of-day stock, stockout per unfilled unit
                const double h = p.holding_cost * on_hand[i];
                const double s = p.holding_cost * (dem - sold);
                holding += h;
                stockout += s;
                day_cost += h + s;
            } else {
                on_hand[i] += arrived;
                sold = std::min<double>(dem, std::max(on_hand[i], 0.0));
                on_hand[i] -= dem;
                if (on_hand[i] < 0.0) {
                    on_hand[i] = 0.0;
                    holding += p.holding_cost * 0.5;
                    day_cost += p.holding_cost * 0.5;
                }
                if ((d + 1) % lead[i] == 0) {
                    // Verbatim quirk: a second decrement and a holding charge
                    // on the remainder, even if it has gone negative.
                    on_hand[i] -= dem;
                    holding += p.holding_cost * on_hand[i];
                    day_cost += p.holding_cost * on_hand[i];
                }
            }

            res.units_sold[i] += sold;
            res.revenue += p.selling_price * sold;
            res.total_inventory_level += on_hand[i];
            if (cfg.collect_trace)
                res.trace.push_back(
                    {d, i, on_hand[i], on_order[i], dem, sold, ordered, day_cost});
        }
    }

    res.cost.purchase = purchase;
    res.cost.order = order_cost;
    res.cost.holding = holding;
    res.cost.stockout = stockout;
    res.cost.total = purchase + order_cost + holding + stockout;
    return res;
}

std::vector<int> demand_block(const ProductCatalog& catalog, std::uint64_t seed,
                              int replication, int horizon) {
    const int P = static_cast<int>(catalog.size());
    std::vector<int> block(static_cast<std::size_t>(horizon) * P);
    for (int i = 0; i < P; ++i) {
        DemandStream s{seed, i, replication, catalog[i].demand_mean,
                       catalog[i].demand_std};
        for (int d = 0; d < horizon; ++d)
            block[static_cast<std::size_t>(d) * P + i] = sample_day(s, d);
    }
    return block;
}

}  // namespace

DemandTable DemandTable::generate(const ProductCatalog& catalog, std::uint64_t seed,
                                  int replications, int horizon_days) {
    DemandTable t;
    t.replications_ = replications;
    t.horizon_ = horizon_days;
    t.products_ = static_cast<int>(catalog.size());
    t.values_.resize(static_cast<std::size_t>(replications) * horizon_days *
                     t.products_);
    const std::size_t per_rep = static_cast<std::size_t>(horizon_days) * t.products_;
    for (int r = 0; r < replications; ++r) {
        auto block = demand_block(catalog, seed, r, horizon_days);
        std::copy(block.begin(), block.end(), t.values_.begin() + per_rep * r);
    }
    return t;
}

SimResult simulate_once(const ProductCatalog& catalog,
                        std::span<const double> starting_stocks,
                        const PolicyParams& policy, const SimConfig& config,
                        int replication) {
    validate_inputs(catalog, starting_stocks, policy, config);
    const auto block =
        demand_block(catalog, config.seed, replication, config.horizon_days);
    return simulate_core(catalog, starting_stocks, policy, config, block);
}

McsSummary run_mcs(const ProductCatalog& catalog,
                   std::span<const double> starting_stocks,
                   const PolicyParams& policy, const SimConfig& config,
                   const DemandTable* table) {
    validate_inputs(catalog, starting_stocks, policy, config);
    const int n = config.num_simulations;
    const int H = config.horizon_days;
    if (table && (table->replications() < n || table->horizon() != H))
        throw std::invalid_argument("demand table does not cover this configuration");

    SimConfig rep_cfg = config;
    rep_cfg.collect_trace = false;  // summaries never carry traces

    struct RepAgg {
        double purchase, order, holding, stockout, total, inventory;
    };
    std::vector<RepAgg> agg(n);

#pragma omp parallel for schedule(static)
    for (int r = 0; r < n; ++r) {
        SimResult res;
        if (table) {
            res = simulate_core(catalog, starting_stocks, policy, rep_cfg,
                                table->replication(r));
        } else {
            const auto block = demand_block(catalog, config.seed, r, H);
            res = simulate_core(catalog, starting_stocks, policy, rep_cfg, block);
        }
        agg[r] = {res.cost.purchase, res.cost.order,   res.cost.holding,
                  res.cost.stockout, res.cost.total,   res.total_inventory_level};
    }

    // Fixed-order reduction keeps results identical across thread counts.
    McsSummary out;
    out.replication_costs.resize(n);
    double sum_total = 0.0, sum_inventory = 0.0;
    double sum_p = 0.0, sum_o = 0.0, sum_h = 0.0, sum_s = 0.0;
    for (int r = 0; r < n; ++r) {
        out.replication_costs[r] = agg[r].total;
        sum_total += agg[r].total;
        sum_inventory += agg[r].inventory;
        sum_p += agg[r].purchase;
        sum_o += agg[r].order;
        sum_h += agg[r].holding;
        sum_s += agg[r].stockout;
    }
    out.mean_cost = sum_total / n;
    const double cells = static_cast<double>(n) * H;
    out.average_cost = H > 0 ? sum_total / cells : 0.0;
    out.average_inventory_level = H > 0 ? sum_inventory / cells : 0.0;
    out.mean_components.purchase = sum_p / n;
    out.mean_components.order = sum_o / n;
    out.mean_components.holding = sum_h / n;
    out.mean_components.stockout = sum_s / n;
    out.mean_components.total =
        out.mean_components.purchase + out.mean_components.order +
        out.mean_components.holding + out.mean_components.stockout;
    return out;
}

double profit_report(const SimResult& result, const ProductCatalog& catalog,
                     double annual_rate) {
    if (result.trace.empty())
        throw std::invalid_argument(
            "profit report needs a daily trace (run with SimConfig::collect_trace)");
    const std::size_t P = catalog.size();
    std::vector<double> sold(P, 0.0), stock_days(P, 0.0), orders(P, 0.0),
        purchased(P, 0.0);
    for (const TraceRow& t : result.trace) {
        sold[t.product] += t.sold;
        stock_days[t.product] += t.on_hand;
        if (t.ordered > 0.0) {
            orders[t.product] += 1.0;
            purchased[t.product] += t.ordered;
        }
    }
    double profit = 0.0;
    for (std::size_t i = 0; i < P; ++i) {
        const Product& p = catalog[i];
        profit += p.selling_price * sold[i] -
                  ((annual_rate * p.holding_cost / 365.0) * stock_days[i] +
                   orders[i] * p.order_cost + p.purchase_cost * purchased[i]);
    }
    return profit;
}

}  // namespace invopt
