#include "glab/report.hpp"

#include <algorithm>
#include <cstdio>

#include "json.hpp"

namespace glab {

bool Report::all_pass() const {
  return std::all_of(rows.begin(), rows.end(), [](const ReportRow& r) { return r.pass; });
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv(std::ostream& out, const Report& report) {
  if (report.timestamp) out << "# generated " << *report.timestamp << '\n';
  out << kCsvHeader << '\n';
  for (const auto& row : report.rows) {
    std::string id = row.experiment;
    for (const auto& [key, value] : row.provenance) id += ';' + key + '=' + value;
    out << id << ',' << format_double(row.n) << ',' << format_double(row.truth) << ','
        << format_double(row.formula) << ',' << format_double(row.residual) << ','
        << format_double(row.envelope) << ',' << format_double(row.constant) << ','
        << (row.pass ? "true" : "false") << '\n';
  }
}

void write_json(std::ostream& out, const Report& report) {
  nlohmann::ordered_json doc;
  doc["command"] = report.command;
  if (report.timestamp) doc["generated"] = *report.timestamp;
  doc["pass"] = report.all_pass();
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : report.rows) {
    nlohmann::ordered_json j;
    j["experiment"] = row.experiment;
    j["N"] = row.n;
    j["truth"] = row.truth;
    j["formula"] = row.formula;
    j["residual"] = row.residual;
    j["envelope"] = row.envelope;
    j["constant"] = row.constant;
    j["pass"] = row.pass;
    auto prov = nlohmann::ordered_json::object();
    for (const auto& [key, value] : row.provenance) prov[key] = value;
    j["provenance"] = prov;
    rows.push_back(std::move(j));
  }
  doc["rows"] = std::move(rows);
  out << doc.dump(2) << '\n';
}

}  // namespace glab
