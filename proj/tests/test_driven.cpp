#include <doctest.h>

#include <cmath>
#include <random>

#include "pfgate/devices.hpp"
#include "pfgate/driven.hpp"
#include "pfgate/errors.hpp"
#include "pfgate/spectral.hpp"

using namespace pfgate;

namespace {
CircuitParams device(int k) { return load_device("device" + std::to_string(k)).params.with_levels({3, 3, 3}); }

// Device-2 circuit with the symmetry the transition-rate table assumes.
CircuitParams symmetric_device2(double wc) {
  CircuitParams p = device(2).at_coupler_frequency(wc);
  p.geometry.reset();
  p.g2c = p.g1c;
  p.g12 = 0.0;
  return p;
}
}  // namespace

TEST_CASE("LA transform is the identity for a block-diagonal input") {
  CircuitParams p = device(2);
  p.g1c = p.g2c = p.g12 = 0.0;
  p.geometry.reset();
  HilbertSpace s = p.space();
  LaResult r = la_block_diagonalize(build_static_hamiltonian(p), s, computational_partition(s));
  CHECK((r.transform - RealMatrix::Identity(s.size(), s.size())).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(r.off_block == 0.0);
}

TEST_CASE("LA transform of a single mixing pair is the Givens rotation") {
  HilbertSpace s({2, 2, 2});
  RealMatrix h = RealMatrix::Zero(8, 8);
  for (int i = 0; i < 8; ++i) h(i, i) = 1.3 * i;
  const int a = s.index({0, 0, 0}), b = s.index({0, 1, 0});
  const double v = 0.4;
  h(a, b) = h(b, a) = v;
  LaResult r = la_block_diagonalize(h, s, computational_partition(s));
  const double theta = 0.5 * std::atan(2 * v / (h(a, a) - h(b, b)));
  RealMatrix expect = RealMatrix::Identity(8, 8);
  expect(a, a) = expect(b, b) = std::cos(theta);
  expect(b, a) = std::sin(theta);
  expect(a, b) = -std::sin(theta);
  CHECK((r.transform - expect).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(r.unitarity_error < 1e-12);
}

TEST_CASE("LA on the driven device 2 decouples to numerical precision") {
  DrivenModel m(device(2).at_coupler_frequency(4.8));
  DrivenPoint d = driven_point(m, 0.020);
  CHECK(d.off_block < 1e-10);
  CHECK(d.unitarity_error < 1e-10);
  // The block keeps the spectrum of the full matrix restricted to the dressed comp states.
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(d.effective);
  Eigen::SelfAdjointEigenSolver<RealMatrix> full(m.hamiltonian(0.020));
  for (int i = 0; i < 4; ++i) {
    double best = 1e9;
    for (int j = 0; j < full.eigenvalues().size(); ++j)
      best = std::min(best, std::abs(full.eigenvalues()(j) - es.eigenvalues()(i)));
    CHECK(best < 1e-12);
  }
}

TEST_CASE("Pauli decomposition rebuilds the matrix") {
  std::mt19937 rng(3);
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::Matrix4cd h;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) h(i, j) = {n(rng), n(rng)};
  h = (h + h.adjoint()).eval();
  PauliCoefficients c = PauliCoefficients::from_matrix(h);
  CHECK((c.reconstruct() - h).cwiseAbs().maxCoeff() < 1e-13);

  Eigen::Matrix4cd d = Eigen::Matrix4cd::Zero();
  d.diagonal() << 0.0, 1.0, 2.0, 3.5;
  CHECK(PauliCoefficients::from_matrix(d).zeta() == doctest::Approx(0.0 - 1.0 - 2.0 + 3.5));
}

TEST_CASE("undriven limit reproduces the static ZZ") {
  for (double wc : {4.8, 5.5, 6.2}) {
    CircuitParams p = device(2).at_coupler_frequency(wc);
    PauliCoefficients c = effective_pauli_coefficients(p, {0.0});
    CHECK(std::abs(c.zeta() - static_zz(p)) < 1e-9);
    CHECK(std::abs(c.alpha_zx()) < 1e-15);
    CHECK(dynamic_zz(p, {0.0}) == 0.0);
  }
}

TEST_CASE("dynamic ZZ sign per device family") {
  for (double wc : {4.8, 5.2, 5.6}) CHECK(dynamic_zz(device(2).at_coupler_frequency(wc), {0.005}) < 0.0);
  CHECK(dynamic_zz(device(6).at_coupler_frequency(5.0), {0.005}) > 0.0);
}

TEST_CASE("transition rates") {
  CircuitParams free = symmetric_device2(6.0);
  free.g1c = free.g2c = 0.0;
  for (int i = 1; i <= 11; ++i) CHECK(transition_rates(free)[i] == 0.0);

  // lambda_4 = -g / (2 Delta_1) with g = 95 MHz and Delta_1 = -0.55 GHz.
  CircuitParams p = symmetric_device2(4.8);
  p.g1c = p.g2c = 0.095;
  CHECK(p.detuning1() == doctest::Approx(-0.55));
  CHECK(transition_rates(p)[4] == doctest::Approx(0.0864).epsilon(1e-3));

  CHECK_THROWS_AS(transition_rates(device(2)), UnsupportedParameters);
}

TEST_CASE("ZX rate slope against the leading transition rate") {
  // The LA block carries (alpha_zx / 2) ZX, so the small-drive slope of alpha_zx is 2 lambda_1.
  CircuitParams p = symmetric_device2(5.5);
  const double omega = 1e-3;
  const double slope = effective_pauli_coefficients(p, {omega}).alpha_zx() / omega;
  const double l1 = transition_rates(p)[1];
  CHECK(std::abs(slope - 2.0 * l1) < 0.1 * std::abs(2.0 * l1));
}
