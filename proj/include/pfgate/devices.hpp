#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "pfgate/circuit.hpp"
#include "pfgate/coherence.hpp"

namespace pfgate {

enum class Unit { GHz, MHz, us, ns, None };

struct Quantity {
  double value = 0.0;  // in `unit`
  Unit unit = Unit::None;
  std::string text;    // non-numeric fields
};

struct DeviceRecord {
  std::string id;
  std::string note;
  CircuitParams params;     // couplers at the reference frequency
  CoherenceSpec coherence;
  // Fields as written in the source document, kept so saving reproduces the input exactly.
  std::map<std::string, Quantity> source;
};

// Key-value device document: `key = number unit` per line, `#` starts a comment.
DeviceRecord parse_device(std::istream& in, const std::string& origin = "<stream>");
DeviceRecord load_device_file(const std::string& path);
// Builtin id ("device1".."device7" or "1".."7"), then a file path, then
// `<dir>/<name>.dev` in `search_dir` when given.
DeviceRecord load_device(const std::string& source, const std::string& search_dir = "");
void save_device(const DeviceRecord& record, std::ostream& out);

std::vector<std::string> builtin_device_ids();
bool is_builtin_device(const std::string& id);

}  // namespace pfgate
