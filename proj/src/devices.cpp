#include "pfgate/devices.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <set>
#include <sstream>

#include "pfgate/errors.hpp"

namespace pfgate {

void CoherenceSpec::validate() const {
  for (int m = 0; m < 3; ++m) {
    if (!(t1[m] > 0) || !(t2[m] > 0)) throw InvalidArgument("coherence times must be positive");
    if (t2[m] > 2.0 * t1[m] * (1 + 1e-12)) throw InvalidArgument("coherence requires T2 <= 2 T1");
  }
}

CoherenceSpec CoherenceSpec::uniform(double t1_us, double t2_us) {
  CoherenceSpec c;
  c.t1 = {t1_us, t1_us, t1_us};
  c.t2 = {t2_us, t2_us, t2_us};
  c.validate();
  return c;
}

CoherenceSpec CoherenceSpec::closed() {
  const double inf = std::numeric_limits<double>::infinity();
  CoherenceSpec c;
  c.t1 = {inf, inf, inf};
  c.t2 = {inf, inf, inf};
  return c;
}

double CoherenceSpec::decay_rate(int mode) const { return 1.0 / (t1.at(mode) * 1e3); }

double CoherenceSpec::dephasing_rate(int mode) const {
  const double r = 1.0 / (t2.at(mode) * 1e3) - 0.5 / (t1.at(mode) * 1e3);
  return r < 0 ? 0.0 : r;
}

namespace {

const char* kBuiltin[7] = {
    "4.25 4.20 3.76 -100 -250 -250", "4.25 4.20 6.48 -100 -250 -250",
    "4.25 4.20 6.48 -200 -250 -250", "4.25 4.20 6.48 -100 -320 -320",
    "4.00 4.20 9.48 -100 500 -250",  "4.40 4.20 9.48 -100 -320 -320",
    "4.50 4.20 6.48 200 -250 -250"};

std::string builtin_document(int n) {
  std::istringstream row(kBuiltin[n - 1]);
  std::string w1, w2, g12, dc, d1, d2;
  row >> w1 >> w2 >> g12 >> dc >> d1 >> d2;
  std::ostringstream os;
  os << "# builtin device " << n << "\n"
     << "id = device" << n << "\n"
     << "note = builtin table row " << n << "\n"
     << "q1.frequency = " << w1 << " GHz\n"
     << "q2.frequency = " << w2 << " GHz\n"
     << "coupler.frequency = 4.8 GHz\n"
     << "q1.anharmonicity = " << d1 << " MHz\n"
     << "coupler.anharmonicity = " << dc << " MHz\n"
     << "q2.anharmonicity = " << d2 << " MHz\n"
     << "g1c = 95 MHz\n"
     << "g2c = 95 MHz\n"
     << "g12 = " << g12 << " MHz\n"
     << "coupling = geometric\n";
  return os.str();
}

const std::vector<std::string>& field_order() {
  static const std::vector<std::string> order = {
      "id", "note", "q1.frequency", "q2.frequency", "coupler.frequency", "q1.anharmonicity",
      "coupler.anharmonicity", "q2.anharmonicity", "g1c", "g2c", "g12", "coupling",
      "q1.t1", "q1.t2", "coupler.t1", "coupler.t2", "q2.t1", "q2.t2"};
  return order;
}

enum class Kind { Text, Frequency, Time };

Kind field_kind(const std::string& key) {
  if (key == "id" || key == "note" || key == "coupling") return Kind::Text;
  if (key.size() > 3 && (key.ends_with(".t1") || key.ends_with(".t2"))) return Kind::Time;
  return Kind::Frequency;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

Unit parse_unit(const std::string& key, const std::string& u, Kind kind) {
  if (kind == Kind::Frequency) {
    if (u == "GHz") return Unit::GHz;
    if (u == "MHz") return Unit::MHz;
    throw SchemaError(key, "expected unit GHz or MHz, got '" + u + "'");
  }
  if (u == "us") return Unit::us;
  if (u == "ns") return Unit::ns;
  throw SchemaError(key, "expected unit us or ns, got '" + u + "'");
}

const char* unit_name(Unit u) {
  switch (u) {
    case Unit::GHz: return "GHz";
    case Unit::MHz: return "MHz";
    case Unit::us: return "us";
    case Unit::ns: return "ns";
    case Unit::None: return "";
  }
  return "";
}

// GHz for frequencies, microseconds for times.
double canonical(const Quantity& q) {
  switch (q.unit) {
    case Unit::GHz: return q.value;
    case Unit::MHz: return q.value / 1000.0;
    case Unit::us: return q.value;
    case Unit::ns: return q.value / 1000.0;
    case Unit::None: break;
  }
  return q.value;
}

std::string format_number(double v) {
  // Shortest representation that parses back to the same double.
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

DeviceRecord build_record(std::map<std::string, Quantity> fields) {
  static const std::set<std::string> required = {
      "q1.frequency", "q2.frequency", "coupler.frequency", "q1.anharmonicity",
      "coupler.anharmonicity", "q2.anharmonicity", "g1c", "g2c", "g12"};
  for (const auto& k : required)
    if (!fields.count(k)) throw SchemaError(k, "missing required field");

  auto get = [&](const std::string& k) { return canonical(fields.at(k)); };
  DeviceRecord rec;
  rec.id = fields.count("id") ? fields.at("id").text : "custom";
  rec.note = fields.count("note") ? fields.at("note").text : "";
  auto& p = rec.params;
  p.q1 = {get("q1.frequency"), get("q1.anharmonicity"), 3};
  p.q2 = {get("q2.frequency"), get("q2.anharmonicity"), 3};
  p.coupler = {get("coupler.frequency"), get("coupler.anharmonicity"), 3};
  p.g1c = get("g1c");
  p.g2c = get("g2c");
  p.g12 = get("g12");
  for (const char* k : {"q1.frequency", "q2.frequency", "coupler.frequency"})
    if (!(get(k) > 0)) throw SchemaError(k, "frequency must be positive");

  const std::string coupling = fields.count("coupling") ? fields.at("coupling").text : "geometric";
  if (coupling == "geometric") {
    try {
      p.geometry = CouplingGeometry::from_couplings(p.g1c, p.g2c, p.g12, p.q1.frequency,
                                                    p.q2.frequency, p.coupler.frequency);
    } catch (const InvalidArgument& e) {
      throw SchemaError("coupling", e.what());
    }
  } else if (coupling != "fixed") {
    throw SchemaError("coupling", "expected 'geometric' or 'fixed'");
  }

  const char* modes[3] = {"q1", "coupler", "q2"};
  for (int m = 0; m < 3; ++m) {
    const std::string t1 = std::string(modes[m]) + ".t1", t2 = std::string(modes[m]) + ".t2";
    if (fields.count(t1)) rec.coherence.t1[m] = get(t1);
    if (fields.count(t2)) rec.coherence.t2[m] = get(t2);
    if (!(rec.coherence.t1[m] > 0)) throw SchemaError(t1, "T1 must be positive");
    if (!(rec.coherence.t2[m] > 0)) throw SchemaError(t2, "T2 must be positive");
    if (rec.coherence.t2[m] > 2.0 * rec.coherence.t1[m]) throw SchemaError(t2, "T2 exceeds 2 T1");
  }
  try {
    p.validate();
  } catch (const InvalidArgument& e) {
    throw SchemaError("params", e.what());
  }
  rec.source = std::move(fields);
  return rec;
}

}  // namespace

DeviceRecord parse_device(std::istream& in, const std::string& origin) {
  std::map<std::string, Quantity> fields;
  std::set<std::string> known(field_order().begin(), field_order().end());
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw SchemaError(origin + ":" + std::to_string(lineno), "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!known.count(key)) throw SchemaError(key, "unknown field");
    if (fields.count(key)) throw SchemaError(key, "duplicate field");

    Quantity q;
    const Kind kind = field_kind(key);
    if (kind == Kind::Text) {
      if (value.empty()) throw SchemaError(key, "empty value");
      q.text = value;
    } else {
      std::istringstream vs(value);
      std::string num, unit, extra;
      vs >> num >> unit >> extra;
      if (unit.empty()) throw SchemaError(key, "missing unit");
      if (!extra.empty()) throw SchemaError(key, "trailing text '" + extra + "'");
      const char* b = num.data();
      if (!num.empty() && num[0] == '+') ++b;
      auto r = std::from_chars(b, num.data() + num.size(), q.value);
      if (r.ec != std::errc() || r.ptr != num.data() + num.size() || !std::isfinite(q.value))
        throw SchemaError(key, "not a number: '" + num + "'");
      q.unit = parse_unit(key, unit, kind);
    }
    fields.emplace(key, q);
  }
  return build_record(std::move(fields));
}

DeviceRecord load_device_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InvalidArgument("cannot open device file '" + path + "'");
  return parse_device(f, path);
}

std::vector<std::string> builtin_device_ids() {
  std::vector<std::string> ids;
  for (int n = 1; n <= 7; ++n) ids.push_back("device" + std::to_string(n));
  return ids;
}

bool is_builtin_device(const std::string& id) {
  for (const auto& b : builtin_device_ids())
    if (id == b || id == b.substr(6)) return true;
  return false;
}

DeviceRecord load_device(const std::string& source, const std::string& search_dir) {
  if (is_builtin_device(source)) {
    const int n = source.back() - '0';
    std::istringstream doc(builtin_document(n));
    return parse_device(doc, "builtin:" + source);
  }
  if (std::filesystem::is_regular_file(source)) return load_device_file(source);
  if (!search_dir.empty()) {
    const auto p = std::filesystem::path(search_dir) / (source + ".dev");
    if (std::filesystem::is_regular_file(p)) return load_device_file(p.string());
  }
  throw InvalidArgument("unknown device '" + source + "'");
}

void save_device(const DeviceRecord& record, std::ostream& out) {
  out << "# device file: key = value unit\n";
  for (const auto& key : field_order()) {
    auto it = record.source.find(key);
    if (it == record.source.end()) continue;
    const Quantity& q = it->second;
    out << key << " = ";
    if (q.unit == Unit::None)
      out << q.text;
    else
      out << format_number(q.value) << ' ' << unit_name(q.unit);
    out << '\n';
  }
}

}  // namespace pfgate
