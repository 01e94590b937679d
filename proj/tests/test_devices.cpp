#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "pfgate/devices.hpp"
#include "pfgate/errors.hpp"
#include "pfgate/results.hpp"

using namespace pfgate;

namespace {
const char* kDoc =
    "# test device\n"
    "id = t\n"
    "q1.frequency = 4.25 GHz\n"
    "q2.frequency = 4200 MHz\n"
    "coupler.frequency = 4.8 GHz\n"
    "q1.anharmonicity = -250 MHz\n"
    "coupler.anharmonicity = -100 MHz\n"
    "q2.anharmonicity = -250 MHz   # trailing comment\n"
    "g1c = 95 MHz\n"
    "g2c = 95 MHz\n"
    "g12 = 6.48 MHz\n";

DeviceRecord parse(const std::string& s) {
  std::istringstream in(s);
  return parse_device(in);
}

std::string without(const std::string& doc, const std::string& key) {
  std::istringstream in(doc);
  std::string line, out;
  while (std::getline(in, line))
    if (line.rfind(key + " =", 0) != 0) out += line + "\n";
  return out;
}

std::string field_of(const std::string& doc) {
  try {
    parse(doc);
  } catch (const SchemaError& e) {
    return e.field();
  }
  return "";
}
}  // namespace

TEST_CASE("builtin devices reproduce the table rows") {
  DeviceRecord d2 = load_device("device2");
  CHECK(d2.params.q1.frequency == 4.25);
  CHECK(d2.params.q2.frequency == 4.2);
  CHECK(d2.params.g12 == doctest::Approx(0.00648).epsilon(1e-14));
  CHECK(d2.params.coupler.anharmonicity == -0.1);
  CHECK(d2.params.g1c == 0.095);

  DeviceRecord d5 = load_device("5");
  CHECK(d5.params.q1.frequency == 4.0);
  CHECK(d5.params.g12 == doctest::Approx(0.00948).epsilon(1e-14));
  CHECK(d5.params.q1.anharmonicity == 0.5);
  CHECK(d5.params.q2.anharmonicity == -0.25);

  CHECK(load_device("device7").params.coupler.anharmonicity == 0.2);
  CHECK(builtin_device_ids().size() == 7);
  CHECK_THROWS_AS(load_device("device8"), InvalidArgument);
}

TEST_CASE("device documents: units and schema errors") {
  DeviceRecord r = parse(kDoc);
  CHECK(r.params.q2.frequency == 4.2);
  CHECK(r.params.q2.anharmonicity == -0.25);
  CHECK(r.params.geometry.has_value());

  CHECK(field_of(without(kDoc, "q2.anharmonicity")) == "q2.anharmonicity");
  CHECK(field_of(std::string(kDoc) + "q3.frequency = 1 GHz\n") == "q3.frequency");
  CHECK(field_of(std::string(kDoc) + "g12 = 6.48 MHz\n") == "g12");
  CHECK(field_of(without(kDoc, "g1c") + "g1c = 95 Hz\n") == "g1c");
  CHECK(field_of(without(kDoc, "g1c") + "g1c = 95\n") == "g1c");
  CHECK(field_of(without(kDoc, "q1.frequency") + "q1.frequency = -4 GHz\n") == "q1.frequency");
  CHECK(field_of(std::string(kDoc) + "q1.t1 = 100 us\nq1.t2 = 250 us\n") == "q1.t2");
  CHECK(field_of(std::string(kDoc) + "q1.t1 = 100 GHz\n") == "q1.t1");

  DeviceRecord t = parse(std::string(kDoc) + "coupler.t1 = 2 us\ncoupler.t2 = 2000 ns\n");
  CHECK(t.coherence.t1[1] == 2.0);
  CHECK(t.coherence.t2[1] == 2.0);
  CHECK(t.coherence.t1[0] == 200.0);
}

TEST_CASE("save and reload round-trips bit-identically") {
  for (const auto& id : builtin_device_ids()) {
    DeviceRecord a = load_device(id);
    std::ostringstream s1;
    save_device(a, s1);
    DeviceRecord b = parse(s1.str());
    std::ostringstream s2;
    save_device(b, s2);
    CHECK(s1.str() == s2.str());
    CHECK(b.params.q1.frequency == a.params.q1.frequency);
    CHECK(b.params.g12 == a.params.g12);
    CHECK(b.params.coupler.anharmonicity == a.params.coupler.anharmonicity);
    CHECK(b.params.geometry->alpha12 == a.params.geometry->alpha12);
  }
}

TEST_CASE("device lookup by path and search directory") {
  const auto dir = std::filesystem::temp_directory_path() / "pfgate_devices_test";
  std::filesystem::create_directories(dir);
  {
    std::ofstream f(dir / "mine.dev");
    f << kDoc;
  }
  CHECK(load_device((dir / "mine.dev").string()).id == "t");
  CHECK(load_device("mine", dir.string()).params.g12 == doctest::Approx(0.00648).epsilon(1e-14));
  CHECK_THROWS_AS(load_device("mine"), InvalidArgument);
  std::filesystem::remove_all(dir);
}

TEST_CASE("result export") {
  CHECK(format_cell(1.0 / 3.0) == "0.333333333333");
  CHECK(format_cell(6.5793e-6) == "6.5793e-06");
  CHECK(format_cell(std::string("NA")) == "NA");

  SweepResult r;
  r.name = "static-zz";
  r.metadata = {{"device", "device2"}, {"levels", "4,3,4"}, {"version", tool_version()}};
  r.columns = {"wc_ghz", "zeta_ghz", "note"};
  r.add_row({4.8, 5.1537e-4, std::string("a,b")});
  r.add_row({6.5, -1.0 / 7.0, std::string("")});
  CHECK_THROWS_AS(r.add_row({1.0}), InvalidArgument);

  std::ostringstream csv;
  export_results(r, Format::Csv, csv);
  CHECK(csv.str() ==
        "# static-zz\n# device: device2\n# levels: 4,3,4\n# version: " + std::string(tool_version()) +
            "\nwc_ghz,zeta_ghz,note\n4.8,0.00051537,\"a,b\"\n6.5,-0.142857142857,\n");

  std::ostringstream js;
  export_results(r, Format::Json, js);
  auto j = nlohmann::json::parse(js.str());
  CHECK(j["columns"][1] == "zeta_ghz");
  CHECK(j["metadata"]["device"] == "device2");
  CHECK(j["rows"][1][1].get<double>() == -0.142857142857);
  CHECK(parse_format("json") == Format::Json);
  CHECK_THROWS_AS(parse_format("xml"), InvalidArgument);
}
