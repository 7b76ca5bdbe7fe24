#pragma once

#include <string>

#include "json.hpp"
#include "paracalc/experiments.hpp"

namespace paracalc {

using json = nlohmann::ordered_json;

/// Report schema v1: {"schema": "paracalc-report-v1", id, theorem, config,
/// ratios[], c_emp, degenerate_zero, slope|null, terms{}, pass, note}.
json report_to_json(const EstimateReport& rep);
json sweep_to_json(const SweepReport& sweep);
json config_to_json(const ExperimentConfig& cfg);
ExperimentConfig config_from_json(const json& j);

/// Writes text atomically (temp file in the same directory, then rename).
void write_text_atomic(const std::string& path, const std::string& text);

void write_report_json(const std::string& path, const EstimateReport& rep);

/// RFC-4180 CSV, one row per probe:
/// id,theorem,probe,label,numerator,denominator,ratio
void write_report_csv(const std::string& path, const EstimateReport& rep);

/// Two-column plot data: j vs log2 residual for slope experiments, probe
/// index vs ratio otherwise. A gnuplot stub is written next to it.
void write_plot_data(const std::string& path, const EstimateReport& rep);

/// Re-reads a JSON report and revalidates schema and internal consistency
/// (c_emp equals the max row ratio, slope deviation matches, pass flag).
/// Returns an empty string when valid, else the failure description.
std::string verify_report_file(const std::string& path);

}  // namespace paracalc
