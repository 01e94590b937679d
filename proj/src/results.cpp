#include "pfgate/results.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

#include <json.hpp>

#include "pfgate/errors.hpp"

namespace pfgate {

const char* tool_version() { return PFGATE_VERSION; }

void SweepResult::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) throw InvalidArgument("row width does not match columns");
  rows.push_back(std::move(row));
}

Format parse_format(const std::string& s) {
  if (s == "csv") return Format::Csv;
  if (s == "json") return Format::Json;
  throw InvalidArgument("unknown format '" + s + "' (csv|json)");
}

namespace {
std::string g12(double v) {
  if (std::isnan(v)) return "NaN";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += (c == '"') ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}
}  // namespace

std::string format_cell(const Cell& c) {
  if (const double* d = std::get_if<double>(&c)) return g12(*d);
  return std::get<std::string>(c);
}

void export_results(const SweepResult& sweep, Format format, std::ostream& out) {
  if (format == Format::Csv) {
    out << "# " << sweep.name << '\n';
    for (const auto& [k, v] : sweep.metadata) out << "# " << k << ": " << v << '\n';
    for (std::size_t i = 0; i < sweep.columns.size(); ++i)
      out << (i ? "," : "") << csv_escape(sweep.columns[i]);
    out << '\n';
    for (const auto& row : sweep.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_escape(format_cell(row[i]));
      out << '\n';
    }
    return;
  }
  nlohmann::ordered_json j;
  j["name"] = sweep.name;
  j["metadata"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : sweep.metadata) j["metadata"][k] = v;
  j["columns"] = sweep.columns;
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : sweep.rows) {
    auto r = nlohmann::ordered_json::array();
    for (const auto& c : row) {
      if (const double* d = std::get_if<double>(&c)) {
        if (std::isfinite(*d))
          r.push_back(std::stod(g12(*d)));
        else
          r.push_back(nullptr);
      } else {
        r.push_back(std::get<std::string>(c));
      }
    }
    j["rows"].push_back(std::move(r));
  }
  out << j.dump(2) << '\n';
}

void export_results(const SweepResult& sweep, Format format, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw InvalidArgument("cannot write '" + path + "'");
  export_results(sweep, format, f);
}

}  // namespace pfgate
