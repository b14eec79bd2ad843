#pragma once

// Report rows shared by every CLI experiment, with CSV and JSON writers.

#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace glab {

struct ReportRow {
  std::string experiment;
  double n = 0.0;
  double truth = 0.0;
  double formula = 0.0;
  double residual = 0.0;
  double envelope = 0.0;
  double constant = 0.0;
  bool pass = true;
  /// Parameters needed to recompute the row (T, n_cut, M, family, ...).
  std::vector<std::pair<std::string, std::string>> provenance;
};

struct Report {
  std::string command;
  std::vector<ReportRow> rows;
  /// Written as a leading comment (CSV) or field (JSON) when set.
  std::optional<std::string> timestamp;

  bool all_pass() const;
};

inline constexpr const char* kCsvHeader = "experiment,N,truth,formula,residual,envelope,constant,pass";

/// Floats are printed with 17 significant digits. Provenance is appended to
/// the experiment column as `name;key=value;...`.
void write_csv(std::ostream& out, const Report& report);
void write_json(std::ostream& out, const Report& report);

/// %.17g, which reads back to the same double.
std::string format_double(double v);

}  // namespace glab
