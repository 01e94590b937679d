#include <doctest.h>

#include <cmath>

#include "pfgate/devices.hpp"
#include "pfgate/spectral.hpp"
#include "pfgate/sweep.hpp"

using namespace pfgate;

TEST_CASE("serial and parallel static sweeps agree exactly") {
  CircuitParams p = load_device("device3").params.with_levels({3, 3, 3});
  std::vector<double> wc;
  for (double w = 4.5; w <= 7.0; w += 0.05) wc.push_back(w);
  auto a = sweep::static_zz(p, wc, sweep::Exec::Serial);
  auto b = sweep::static_zz(p, wc, sweep::Exec::Parallel);
  REQUIRE(a.size() == wc.size());
  for (std::size_t i = 0; i < wc.size(); ++i) {
    CHECK(a[i] == b[i]);
    CHECK(a[i] == static_zz(p.at_coupler_frequency(wc[i])));
  }
}

TEST_CASE("serial and parallel Pauli sweeps agree exactly") {
  CircuitParams p = load_device("device6").params.with_levels({3, 3, 3});
  std::vector<double> omegas = {0.0, 0.01, 0.02, 0.04, 0.06};
  std::vector<double> wc = {4.8, 5.3, 6.0};
  auto s = sweep::pauli_grid(p, wc, omegas, sweep::Exec::Serial);
  auto q = sweep::pauli_grid(p, wc, omegas, sweep::Exec::Parallel);
  for (std::size_t i = 0; i < wc.size(); ++i) {
    auto row = sweep::pauli_vs_amplitude(p.at_coupler_frequency(wc[i]), omegas, sweep::Exec::Parallel);
    for (std::size_t j = 0; j < omegas.size(); ++j) {
      CHECK(s[i][j].c == q[i][j].c);
      CHECK(row[j].c == s[i][j].c);
    }
  }
}

TEST_CASE("labeling failures become NaN in sweeps") {
  CircuitParams p = load_device("device2").params.with_levels({3, 3, 3});
  // Coupler exactly resonant with a qubit while that qubit is decoupled: degenerate bare labels.
  p.geometry.reset();
  p.g1c = 0.0;
  p.g2c = 0.0;
  p.g12 = 0.0;
  p.q2.frequency = p.q1.frequency;
  double v = sweep::static_zz_or_nan(p);
  CHECK((std::isnan(v) || v == 0.0));
}
