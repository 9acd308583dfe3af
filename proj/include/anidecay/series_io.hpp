#pragma once

#include "anidecay/decay_fit.hpp"
#include "anidecay/solver.hpp"

#include <map>
#include <string>
#include <vector>

namespace anidecay {

/// Fixed column set of the series CSV schema (version 1). Floats are
/// serialized with 17 significant digits, so CSV round-trips are bit-exact.
const std::vector<std::string>& series_columns();
double series_value(const SeriesRow& row, const std::string& column);

std::string series_csv(const TrajectoryRecord& record);
void write_series_csv(const std::string& path, const TrajectoryRecord& record);

/// Generic numeric CSV (header + double cells), for the fit subcommand.
struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> cells; // row-major
  std::vector<double> column_values(const std::string& name) const;
  bool has_column(const std::string& name) const;
};
CsvTable read_csv(const std::string& path);

/// Rebuilds the monitored rows of a trajectory from a schema-v1 CSV (fields
/// the CSV does not carry stay default). Used by the report subcommand.
TrajectoryRecord record_from_csv(const CsvTable& table, const RunConfig& config);

std::string format_double(double x); ///< %.17g

// ---- JSON reports ---------------------------------------------------------

std::string acceptance_json(const AcceptanceReport& rep);
std::string acceptance_text(const AcceptanceReport& rep);
/// Validates the documented acceptance-report schema; returns false and
/// fills why on the first violation.
bool validate_acceptance_json(const std::string& text, std::string* why);

std::string initial_report_json(const InitialDataReport& rep);
std::string decay_fit_json(const DecayFit& fit);

// ---- SVG sparkline --------------------------------------------------------

/// Minimal log-log polyline for quick inspection of a decay series.
std::string sparkline_svg(const std::vector<double>& t, const std::vector<double>& y,
                          const std::string& label);

// ---- file helpers ---------------------------------------------------------

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

} // namespace anidecay
