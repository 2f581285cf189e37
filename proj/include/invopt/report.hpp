#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "invopt/analysis.hpp"
#include "invopt/catalog.hpp"
#include "invopt/demand.hpp"
#include "invopt/optimizers.hpp"
#include "invopt/simulator.hpp"

namespace invopt {

inline constexpr char kToolVersion[] = "1.0.0";

using ordered_json = nlohmann::ordered_json;

// Everything needed to reproduce a report byte-for-byte: replaying `argv`
// rewrites identical files. `config` echoes every effective flag value,
// defaults included, so nothing about the run is implicit.
struct RunManifest {
    std::string command;
    std::vector<std::string> argv;
    std::string catalog;  // "builtin" or the path given
    std::string version = kToolVersion;
    ordered_json config = ordered_json::object();
    std::vector<std::string> outputs;
};

ordered_json manifest_json(const RunManifest& manifest);

// Per-product demand histograms, as exported by the demand-hist command.
using HistogramSet = std::vector<std::pair<std::string, std::vector<HistogramBin>>>;

// Full JSON documents: {"manifest": ..., "report": ...}.
ordered_json simulate_report_json(const RunManifest& manifest, const McsSummary& summary);
ordered_json optimize_report_json(const RunManifest& manifest, const OptRun& run,
                                  const ProductCatalog& catalog, double rescored_cost,
                                  int rescore_replications);
ordered_json compare_report_json(const RunManifest& manifest,
                                 const ComparisonReport& report,
                                 const ProductCatalog& catalog);
ordered_json calibrate_report_json(const RunManifest& manifest,
                                   const CalibrationReport& report,
                                   const ProductCatalog& catalog);
ordered_json abc_report_json(const RunManifest& manifest, const std::vector<AbcRow>& rows);
ordered_json sensitivity_report_json(const RunManifest& manifest,
                                     const SensitivityReport& report,
                                     const ProductCatalog& catalog);
ordered_json histogram_report_json(const RunManifest& manifest, const HistogramSet& hists);

// CSV companions. All numbers go through format_number, so identical inputs
// produce identical bytes.
void write_abc_csv(std::ostream& out, const std::vector<AbcRow>& rows);
void write_replications_csv(std::ostream& out, const McsSummary& summary);
void write_history_csv(std::ostream& out, const OptRun& run);
void write_compare_csv(std::ostream& out, const ComparisonReport& report,
                       const ProductCatalog& catalog);
void write_calibration_csv(std::ostream& out, const CalibrationReport& report,
                           const ProductCatalog& catalog);
void write_sensitivity_csv(std::ostream& out, const SensitivityReport& report,
                           const ProductCatalog& catalog);
void write_histogram_csv(std::ostream& out, const HistogramSet& hists);
void write_trace_csv(std::ostream& out, const SimResult& result,
                     const ProductCatalog& catalog);

}  // namespace invopt
