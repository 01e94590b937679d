#include <doctest.h>

#include <cmath>

#include "pfgate/devices.hpp"
#include "pfgate/errors.hpp"
#include "pfgate/search.hpp"

using namespace pfgate;

namespace {
CircuitParams device(int k) { return load_device("device" + std::to_string(k)).params.with_levels({3, 3, 3}); }
}  // namespace

TEST_CASE("operating points re-verify through the LA pipeline") {
  CircuitParams p = device(2);
  auto pts = find_static_zz_zeros(p, default_coupler_range(p));
  REQUIRE(pts.size() == 3);
  for (const auto& op : pts) CHECK(std::abs(op.zeta) < 1e-6);
  CHECK(pts.back().kind == ZeroKind::Genuine);
}

TEST_CASE("freedom amplitude at the genuine point is the zero-drive branch") {
  CircuitParams p = device(2);
  auto gi = genuine_idle_frequency(p, IdleMethod::Numeric);
  REQUIRE(gi);
  auto w = freedom_amplitudes(p.at_coupler_frequency(*gi));
  REQUIRE(w.size() == 1);
  CHECK(w[0] == 0.0);
}

TEST_CASE("freedom amplitudes: device 1 near its affine point, device 6 gap") {
  auto d1 = freedom_amplitude(device(1).at_coupler_frequency(4.46));
  REQUIRE(d1);
  CHECK(*d1 < 0.060);
  for (double wc : {5.15, 5.25, 5.35, 5.45}) CHECK_FALSE(freedom_amplitude(device(6).at_coupler_frequency(wc)));
}

TEST_CASE("freedom amplitude is stable under a finer bisection") {
  CircuitParams p = device(1).at_coupler_frequency(4.46);
  FreedomOptions fine;
  fine.tolerance = 0.5e-5;
  auto a = freedom_amplitude(p), b = freedom_amplitude(p, fine);
  REQUIRE(a);
  REQUIRE(b);
  CHECK(std::abs(*a - *b) < 1e-4);
  DrivenModel m(p);
  CHECK(std::abs(driven_point(m, *a).pauli.zeta()) < 1e-6);
}

TEST_CASE("power-law fit recovers a synthetic correction") {
  auto f = [](double w) { return -3 * w * w + 0.7 * w * w * w * w; };
  PowerFit fit = fit_power_correction(f, 2, log_grid(0.01, 0.1, 10), 0.0025);
  CHECK(fit.leading == doctest::Approx(-3.0).epsilon(1e-6));
  CHECK(std::abs(fit.exponent - 4.0) < 0.02);
  CHECK(fit.coefficient == doctest::Approx(0.7).epsilon(1e-3));

  auto g = [](double w) { return 2.0 * w - 0.4 * w * w * w; };
  PowerFit fg = fit_power_correction(g, 1, log_grid(0.01, 0.1, 10), 0.0025);
  CHECK(fg.leading == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(std::abs(fg.exponent - 3.0) < 0.02);

  CHECK_THROWS_AS(fit_power_correction(f, 2, log_grid(0.01, 0.05, 10), 0.0025), InvalidArgument);
  CHECK_THROWS_AS(fit_power_correction(f, 2, log_grid(0.01, 0.1, 5), 0.0025), InvalidArgument);
}

TEST_CASE("small-drive exponents of the driven block") {
  CircuitParams p = device(2).at_coupler_frequency(5.0);
  DrivenModel m(p);
  const double z0 = driven_point(m, 0.0).pauli.zeta();
  auto grid = log_grid(0.001, 0.01, 8);
  CHECK(std::abs(log_log_slope([&](double w) { return driven_point(m, w).pauli.zeta() - z0; }, grid) - 2.0) < 0.1);
  CHECK(std::abs(log_log_slope([&](double w) { return driven_point(m, w).pauli.alpha_zx(); }, grid) - 1.0) < 0.05);
}

TEST_CASE("quadratic factor sign by device family") {
  for (int k : {1, 2, 3, 4}) CHECK(quadratic_factor(device(k).at_coupler_frequency(5.0)).value < 0.0);
  for (int k : {5, 6}) CHECK(quadratic_factor(device(k).at_coupler_frequency(5.8)).value > 0.0);
  QuadraticFactor q = quadratic_factor(device(2).at_coupler_frequency(5.0));
  CHECK(q.richardson == doctest::Approx(q.value).epsilon(1e-3));
}

TEST_CASE("gate length") {
  CHECK(gate_length(0.005).tau == doctest::Approx(50.0));
  CHECK(gate_length(0.005).total == doctest::Approx(90.0));
  CHECK(gate_length(0.0025).total == doctest::Approx(140.0));
  CHECK_THROWS_AS(gate_length(0.0), InvalidArgument);
  CHECK_THROWS_AS(gate_length(-0.001), InvalidArgument);
}
