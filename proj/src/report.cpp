#include "invopt/report.hpp"

#include <ostream>

namespace invopt {
namespace {

ordered_json number_array(const std::vector<double>& values) {
    return ordered_json(values);
}

ordered_json stocks_object(const std::vector<double>& stocks,
                           const ProductCatalog& catalog) {
    ordered_json obj = ordered_json::object();
    for (std::size_t i = 0; i < catalog.size() && i < stocks.size(); ++i)
        obj[catalog[i].id] = stocks[i];
    return obj;
}

ordered_json components_json(const CostBreakdown& c) {
    return ordered_json{{"purchase", c.purchase},
                        {"order", c.order},
                        {"holding", c.holding},
                        {"stockout", c.stockout},
                        {"total", c.total}};
}

ordered_json document(const RunManifest& manifest, ordered_json report) {
    return ordered_json{{"manifest", manifest_json(manifest)},
                        {"report", std::move(report)}};
}

}  // namespace

ordered_json manifest_json(const RunManifest& manifest) {
    return ordered_json{{"command", manifest.command},
                        {"argv", manifest.argv},
                        {"catalog", manifest.catalog},
                        {"version", manifest.version},
                        {"config", manifest.config},
                        {"outputs", manifest.outputs}};
}

ordered_json simulate_report_json(const RunManifest& manifest, const McsSummary& s) {
    return document(manifest,
                    ordered_json{{"mean_cost", s.mean_cost},
                                 {"average_cost", s.average_cost},
                                 {"average_inventory_level", s.average_inventory_level},
                                 {"mean_components", components_json(s.mean_components)},
                                 {"replications", s.replication_costs.size()}});
}

ordered_json optimize_report_json(const RunManifest& manifest, const OptRun& run,
                                  const ProductCatalog& catalog, double rescored_cost,
                                  int rescore_replications) {
    ordered_json members = ordered_json::array();
    for (const OptRun& m : run.member_runs)
        members.push_back(ordered_json{{"best_cost", m.best_cost},
                                       {"evaluations_used", m.evaluations_used}});
    ordered_json report{{"stocks", stocks_object(run.best_x, catalog)},
                        {"best_cost", run.best_cost},
                        {"rescored_cost", rescored_cost},
                        {"rescore_replications", rescore_replications},
                        {"evaluations_used", run.evaluations_used},
                        {"history", number_array(run.history)}};
    if (!members.empty()) report["members"] = std::move(members);
    return document(manifest, std::move(report));
}

ordered_json compare_report_json(const RunManifest& manifest,
                                 const ComparisonReport& report,
                                 const ProductCatalog& catalog) {
    ordered_json rows = ordered_json::array();
    for (const ComparisonRow& row : report.rows)
        rows.push_back(ordered_json{{"algorithm", row.algorithm},
                                    {"stocks", stocks_object(row.stocks, catalog)},
                                    {"total_cost", row.total_cost},
                                    {"evaluations", row.evaluations}});
    return document(manifest,
                    ordered_json{{"budget_per_run", report.budget_per_run},
                                 {"seeds", report.seeds},
                                 {"rescore_replications", report.rescore_replications},
                                 {"rows", std::move(rows)}});
}

ordered_json calibrate_report_json(const RunManifest& manifest,
                                   const CalibrationReport& report,
                                   const ProductCatalog& catalog) {
    ordered_json rows = ordered_json::array();
    for (const CalibrationRow& row : report.rows) {
        ordered_json per_product = ordered_json::object();
        for (std::size_t i = 0; i < catalog.size(); ++i)
            per_product[catalog[i].id] =
                ordered_json{{"reorder", row.reorder_points[i]},
                             {"safety", row.safety_stocks[i]},
                             {"quantity", row.order_quantities[i]},
                             {"lead_time", row.lead_times[i]}};
        rows.push_back(ordered_json{{"reorder_scale", row.reorder_scale},
                                    {"safety_fraction", row.safety_fraction},
                                    {"lead_scale", row.lead_scale},
                                    {"quantity_scale", row.quantity_scale},
                                    {"policy", std::move(per_product)},
                                    {"mean_cost", row.mean_cost},
                                    {"average_cost", row.average_cost}});
    }
    return document(manifest,
                    ordered_json{{"best_index", report.best_index},
                                 {"design_exactly_balanced", report.design_exactly_balanced},
                                 {"rows", std::move(rows)}});
}

ordered_json abc_report_json(const RunManifest& manifest, const std::vector<AbcRow>& rows) {
    ordered_json arr = ordered_json::array();
    for (const AbcRow& row : rows)
        arr.push_back(ordered_json{{"product_id", row.product_id},
                                   {"cv_annual", row.consumption_value},
                                   {"share", row.share},
                                   {"cumulative_share", row.cumulative_share},
                                   {"category", std::string(1, row.category)}});
    return document(manifest, ordered_json{{"rows", std::move(arr)}});
}

ordered_json sensitivity_report_json(const RunManifest& manifest,
                                     const SensitivityReport& report,
                                     const ProductCatalog& catalog) {
    ordered_json rows = ordered_json::array();
    for (const SensitivityRow& row : report.rows)
        rows.push_back(ordered_json{{"population", row.population},
                                    {"stocks", stocks_object(row.stocks, catalog)},
                                    {"total_cost", row.total_cost},
                                    {"evaluations_used", row.evaluations_used}});
    return document(manifest,
                    ordered_json{{"relative_spread", report.relative_spread},
                                 {"generations", report.generations},
                                 {"rescore_replications", report.rescore_replications},
                                 {"rows", std::move(rows)}});
}

ordered_json histogram_report_json(const RunManifest& manifest, const HistogramSet& hists) {
    ordered_json arr = ordered_json::array();
    for (const auto& [id, bins] : hists) {
        ordered_json jb = ordered_json::array();
        for (const HistogramBin& bin : bins)
            jb.push_back(ordered_json{{"lo", bin.lo}, {"hi", bin.hi}, {"count", bin.count}});
        arr.push_back(ordered_json{{"product_id", id}, {"bins", std::move(jb)}});
    }
    return document(manifest, ordered_json{{"histograms", std::move(arr)}});
}

void write_abc_csv(std::ostream& out, const std::vector<AbcRow>& rows) {
    out << "product_id,cv_annual,share,cumulative_share,category\n";
    for (const AbcRow& row : rows)
        out << row.product_id << ',' << format_number(row.consumption_value) << ','
            << format_number(row.share) << ',' << format_number(row.cumulative_share)
            << ',' << row.category << '\n';
}

void write_replications_csv(std::ostream& out, const McsSummary& summary) {
    out << "replication,total_cost\n";
    for (std::size_t r = 0; r < summary.replication_costs.size(); ++r)
        out << r << ',' << format_number(summary.replication_costs[r]) << '\n';
}

void write_history_csv(std::ostream& out, const OptRun& run) {
    out << "generation,best_cost\n";
    for (std::size_t g = 0; g < run.history.size(); ++g)
        out << g << ',' << format_number(run.history[g]) << '\n';
}

void write_compare_csv(std::ostream& out, const ComparisonReport& report,
                       const ProductCatalog& catalog) {
    out << "algorithm";
    for (const Product& p : catalog) out << ",stock_" << p.id;
    out << ",total_cost,evaluations\n";
    for (const ComparisonRow& row : report.rows) {
        out << row.algorithm;
        for (std::size_t i = 0; i < catalog.size(); ++i)
            out << ',' << format_number(row.stocks[i]);
        out << ',' << format_number(row.total_cost) << ',' << row.evaluations << '\n';
    }
}

void write_calibration_csv(std::ostream& out, const CalibrationReport& report,
                           const ProductCatalog& catalog) {
    out << "row,reorder_scale,safety_fraction,lead_scale,quantity_scale";
    for (const Product& p : catalog)
        out << ",reorder_" << p.id << ",safety_" << p.id << ",qty_" << p.id
            << ",lead_" << p.id;
    out << ",mean_cost,average_cost,best\n";
    for (std::size_t r = 0; r < report.rows.size(); ++r) {
        const CalibrationRow& row = report.rows[r];
        out << r << ',' << format_number(row.reorder_scale) << ','
            << format_number(row.safety_fraction) << ','
            << format_number(row.lead_scale) << ','
            << format_number(row.quantity_scale);
        for (std::size_t i = 0; i < catalog.size(); ++i)
            out << ',' << format_number(row.reorder_points[i]) << ','
                << format_number(row.safety_stocks[i]) << ','
                << format_number(row.order_quantities[i]) << ',' << row.lead_times[i];
        out << ',' << format_number(row.mean_cost) << ','
            << format_number(row.average_cost) << ','
            << (r == report.best_index ? 1 : 0) << '\n';
    }
}

void write_sensitivity_csv(std::ostream& out, const SensitivityReport& report,
                           const ProductCatalog& catalog) {
    out << "population";
    for (const Product& p : catalog) out << ",stock_" << p.id;
    out << ",total_cost,evaluations\n";
    for (const SensitivityRow& row : report.rows) {
        out << row.population;
        for (std::size_t i = 0; i < catalog.size(); ++i)
            out << ',' << format_number(row.stocks[i]);
        out << ',' << format_number(row.total_cost) << ',' << row.evaluations_used
            << '\n';
    }
}

void write_histogram_csv(std::ostream& out, const HistogramSet& hists) {
    out << "product_id,bin_lo,bin_hi,count\n";
    for (const auto& [id, bins] : hists)
        for (const HistogramBin& bin : bins)
            out << id << ',' << format_number(bin.lo) << ',' << format_number(bin.hi)
                << ',' << bin.count << '\n';
}

void write_trace_csv(std::ostream& out, const SimResult& result,
                     const ProductCatalog& catalog) {
    out << "day,product_id,on_hand,on_order,demand,sold,ordered,cost_total\n";
    for (const TraceRow& row : result.trace)
        out << row.day << ',' << catalog[static_cast<std::size_t>(row.product)].id
            << ',' << format_number(row.on_hand) << ',' << format_number(row.on_order)
            << ',' << row.demand << ',' << format_number(row.sold) << ','
            << format_number(row.ordered) << ',' << format_number(row.cost_total)
            << '\n';
}

}  // namespace invopt
