#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace pfgate {

using Cell = std::variant<double, std::string>;

struct SweepResult {
  std::string name;
  std::vector<std::pair<std::string, std::string>> metadata;  // emitted in insertion order
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);
};

enum class Format { Csv, Json };

Format parse_format(const std::string& s);
// Floats use 12 significant digits.
std::string format_cell(const Cell& c);
void export_results(const SweepResult& sweep, Format format, std::ostream& out);
void export_results(const SweepResult& sweep, Format format, const std::string& path);

const char* tool_version();

}  // namespace pfgate
