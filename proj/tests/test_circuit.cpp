#include <doctest.h>

#include <cmath>

#include "pfgate/circuit.hpp"
#include "pfgate/devices.hpp"
#include "pfgate/errors.hpp"
#include "pfgate/labeling.hpp"

using namespace pfgate;

namespace {
CircuitParams two_level_pair(double w1, double w2, double g12) {
  CircuitParams p;
  p.q1 = {w1, 0.0, 2};
  p.coupler = {7.0, 0.0, 2};
  p.q2 = {w2, 0.0, 2};
  p.g12 = g12;
  return p;
}

CircuitParams device(int k) { return load_device("device" + std::to_string(k)).params.with_levels({3, 3, 3}); }
}  // namespace

TEST_CASE("geometric couplings follow the square-root law") {
  CouplingGeometry geo{0.022, 0.022, 0.002};
  auto g = coupling_strengths(geo, 4.25, 4.2, 4.8);
  CHECK(g.g1c == doctest::Approx(0.022 * std::sqrt(4.25 * 4.8)));
  CHECK(g.g1c == doctest::Approx(0.0993).epsilon(1e-3));

  auto zero = coupling_strengths({0.0, 0.0, 0.002}, 4.25, 4.2, 4.8);
  CHECK(zero.g1c == 0.0);
  CHECK(zero.g2c == 0.0);

  auto g4 = coupling_strengths(geo, 4.25, 4.2, 4 * 4.8);
  CHECK(g4.g1c == doctest::Approx(2 * g.g1c));
  CHECK(g4.g12 == doctest::Approx(g.g12));

  auto back = CouplingGeometry::from_couplings(g.g1c, g.g2c, g.g12, 4.25, 4.2, 4.8);
  CHECK(back.alpha1 == doctest::Approx(0.022));
  CHECK_THROWS_AS((CouplingGeometry{1.2, 0.0, 0.0}.validate()), InvalidArgument);
}

TEST_CASE("uncoupled Hamiltonian is the diagonal Duffing sum") {
  CircuitParams p = device(2);
  p.g1c = p.g2c = p.g12 = 0.0;
  p.geometry.reset();
  HilbertSpace s = p.space();
  RealMatrix h = build_static_hamiltonian(p);
  for (int i = 0; i < s.size(); ++i) {
    BasisLabel l = s.label(i);
    CHECK(h(i, i) == doctest::Approx(p.q1.energy(l.q1) + p.coupler.energy(l.coupler) + p.q2.energy(l.q2)));
  }
  CHECK((h - RealMatrix(h.diagonal().asDiagonal())).norm() == 0.0);
}

TEST_CASE("two-level pair gives the exchange block with counter-rotating terms") {
  CircuitParams p = two_level_pair(4.0, 4.3, 0.01);
  HilbertSpace s = p.space();
  RealMatrix h = build_static_hamiltonian(p);
  CHECK(h(s.index({1, 0, 0}), s.index({0, 0, 1})) == doctest::Approx(0.01));
  CHECK(h(s.index({0, 0, 0}), s.index({1, 0, 1})) == doctest::Approx(0.01));
  CHECK(h(s.index({1, 0, 0}), s.index({0, 1, 0})) == 0.0);
}

TEST_CASE("static Hamiltonian is symmetric with a non-degenerate ground state") {
  for (int k = 1; k <= 7; ++k) {
    CircuitParams base = device(k);
    for (double wc = 4.4; wc <= 7.0; wc += 0.65) {
      RealMatrix h = build_static_hamiltonian(base.at_coupler_frequency(wc));
      CHECK((h - h.transpose()).cwiseAbs().maxCoeff() == 0.0);
      Eigen::SelfAdjointEigenSolver<RealMatrix> es(h);
      CHECK(es.eigenvalues()(1) - es.eigenvalues()(0) > 1.0);
    }
  }
}

TEST_CASE("labeling: uncoupled assignment is the identity") {
  CircuitParams p = device(3);
  p.g1c = p.g2c = p.g12 = 0.0;
  p.geometry.reset();
  DressedSpectrum s = diagonalize_and_label(build_static_hamiltonian(p), p.space());
  for (int i = 0; i < p.space().size(); ++i) {
    BasisLabel l = p.space().label(i);
    CHECK(s.overlap(l) == doctest::Approx(1.0));
    CHECK(s.energies()(i) == doctest::Approx(build_static_hamiltonian(p)(i, i)));
  }
  CHECK_FALSE(s.strongly_hybridized());
}

TEST_CASE("labeling: resonant exchange splits evenly and raises the flag") {
  CircuitParams p = two_level_pair(4.2, 4.2, 0.02);
  DressedSpectrum s = diagonalize_and_label(build_static_hamiltonian(p), p.space());
  CHECK(s.overlap({1, 0, 0}) == doctest::Approx(0.5).epsilon(1e-3));
  CHECK(s.overlap({0, 0, 1}) == doctest::Approx(0.5).epsilon(1e-3));
  CHECK(s.eigen_index({1, 0, 0}) != s.eigen_index({0, 0, 1}));
  CHECK(s.strongly_hybridized());
}

TEST_CASE("labeling: degenerate eigenvectors with tied overlaps are rejected") {
  RealVector e(2);
  e << 1.0, 1.0;
  RealMatrix v(2, 2);
  const double r = std::sqrt(0.5);
  v << r, r, r, -r;
  RealVector bare(2);
  bare << 1.0, 1.0;
  CHECK_THROWS_AS(assign_labels(e, v, bare), AmbiguousLabeling);

  e << 0.9, 1.1;  // same vectors, split energies: resolvable
  CHECK_NOTHROW(assign_labels(e, v, bare));
}

TEST_CASE("labeling: device 2 computational states stay bare-like at 4.8 GHz") {
  CircuitParams p = device(2).at_coupler_frequency(4.8);
  DressedSpectrum s = diagonalize_and_label(build_static_hamiltonian(p), p.space());
  for (const auto& l : kComputational) CHECK(s.overlap(l) > 0.9);
  // Oracle: zeta from independently sorted eigenvalues of the same matrix.
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(build_static_hamiltonian(p));
  CHECK(s.energy({0, 0, 0}) == doctest::Approx(es.eigenvalues()(0)));
}

TEST_CASE("rotating frame: undriven limit and textbook Rabi block") {
  CircuitParams p = device(2).at_coupler_frequency(4.8);
  DrivenModel m(p);
  RealMatrix h0 = m.hamiltonian(0.0);
  const DressedSpectrum& s = m.spectrum();
  RealVector n = excitation_numbers(p.space());
  for (int i = 0; i < p.space().size(); ++i)
    CHECK(h0(i, i) == doctest::Approx(s.energies()(i) - s.energy({0, 0, 0}) - m.drive_frequency() * n(i)));
  CHECK((h0 - RealMatrix(h0.diagonal().asDiagonal())).norm() == 0.0);

  RealMatrix hd = m.hamiltonian(0.03);
  CHECK((hd - hd.transpose()).cwiseAbs().maxCoeff() < 1e-15);
  RealMatrix nn = RealMatrix(n.asDiagonal());
  CHECK((h0 * nn - nn * h0).norm() == 0.0);

  // g = 0, drive at the Q1 frequency: block is (omega / 2) X on Q1.
  CircuitParams free = device(2);
  free.g1c = free.g2c = free.g12 = 0.0;
  free.geometry.reset();
  const double omega = 0.02;
  RealMatrix hr = rotating_frame_hamiltonian(free, {omega, free.q1.frequency, Mode::Q1});
  HilbertSpace hs = free.space();
  CHECK(hr(hs.index({0, 0, 0}), hs.index({1, 0, 0})) == doctest::Approx(omega / 2));
  CHECK(hr(hs.index({0, 0, 1}), hs.index({1, 0, 1})) == doctest::Approx(omega / 2));
  CHECK(hr(hs.index({1, 0, 0}), hs.index({1, 0, 0})) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(hr(hs.index({0, 0, 0}), hs.index({0, 0, 1})) == 0.0);
  CHECK_THROWS_AS(m.hamiltonian(-0.01), InvalidArgument);
}
