#include <doctest.h>

#include <cmath>
#include <random>

#include "pfgate/devices.hpp"
#include "pfgate/errors.hpp"
#include "pfgate/spectral.hpp"

using namespace pfgate;

namespace {
CircuitParams device(int k) { return load_device("device" + std::to_string(k)).params.with_levels({3, 3, 3}); }

CircuitParams uncoupled(CircuitParams p) {
  p.g1c = p.g2c = p.g12 = 0.0;
  p.geometry.reset();
  return p;
}
}  // namespace

TEST_CASE("static ZZ vanishes without coupling") {
  for (int k : {1, 2, 5, 7}) CHECK(std::abs(static_zz(uncoupled(device(k)).at_coupler_frequency(5.5))) < 1e-12);
}

TEST_CASE("static ZZ equals the labeled energy combination") {
  CircuitParams p = device(2).at_coupler_frequency(5.2);
  DressedSpectrum s = diagonalize_and_label(build_static_hamiltonian(p), p.space());
  const double z = s.energy({1, 0, 1}) - s.energy({1, 0, 0}) - s.energy({0, 0, 1}) + s.energy({0, 0, 0});
  CHECK(static_zz(p) == doctest::Approx(z).epsilon(1e-12));
}

TEST_CASE("effective coupling") {
  CircuitParams p = device(2);
  p.g1c = p.g2c = 0.0;
  p.geometry.reset();
  CHECK(g_eff(p) == p.g12);

  // Independent evaluation of g12 + (g1c g2c / 2) sum_i (1/Delta_i - 1/Sigma_i) at 4.8 GHz.
  CircuitParams q = device(2).at_coupler_frequency(4.8);
  const double w1 = q.q1.frequency, w2 = q.q2.frequency, wc = 4.8;
  const double expect = q.g12 + 0.5 * q.g1c * q.g2c *
                                    (1 / (w1 - wc) - 1 / (w1 + wc) + 1 / (w2 - wc) - 1 / (w2 + wc));
  CHECK(g_eff(q) == doctest::Approx(expect).epsilon(1e-14));
  CHECK(g_eff(q) < 0.0);

  // The closed-form genuine point nearly zeroes g_eff (exact only for w1 = w2).
  auto gi = genuine_idle_frequency(device(2), IdleMethod::Perturbative);
  REQUIRE(gi);
  CHECK(std::abs(g_eff(device(2).at_coupler_frequency(*gi))) < 1e-3 * q.g12);
  CircuitParams sym = device(2);
  sym.q2.frequency = sym.q1.frequency;
  sym.geometry = CouplingGeometry{0.02, 0.02, 0.002};
  auto gs = genuine_idle_frequency(sym, IdleMethod::Perturbative);
  REQUIRE(gs);
  CHECK(std::abs(g_eff(sym.at_coupler_frequency(*gs))) < 1e-15);
}

TEST_CASE("perturbative ZZ tracks the exact value in the dispersive band") {
  for (int k : {2, 3, 4}) {
    auto b = zz_perturbative(device(k).at_coupler_frequency(6.9));
    CHECK(std::abs(b.perturbative - b.exact) < 0.25 * std::abs(b.exact));
    CHECK(b.perturbative == doctest::Approx(b.zeta_s1 + b.zeta_s2));
  }
}

TEST_CASE("perturbative ZZ limits and poles") {
  // Without qubit anharmonicity the first term vanishes.
  CircuitParams p = device(2).at_coupler_frequency(6.5);
  p.q1.anharmonicity = p.q2.anharmonicity = 0.0;
  CHECK(zz_perturbative(p).zeta_s1 == 0.0);
  // A two-level coupler still mediates ZZ: the second term tends to 8 g12 (g_eff - g12) / (Delta1 + Delta2).
  CircuitParams hard = device(2).at_coupler_frequency(6.5);
  hard.coupler.anharmonicity = -1e7;
  const auto hb = zz_perturbative(hard);
  const double lim = 8.0 * hard.g12 * (hb.g_eff - hard.g12) / (hard.detuning1() + hard.detuning2());
  CHECK(hb.zeta_s2 == doctest::Approx(lim).epsilon(1e-5));

  CircuitParams pole = device(2).at_coupler_frequency(6.5);
  pole.q1.frequency = pole.q2.frequency + pole.q2.anharmonicity;
  CHECK_THROWS_AS(zz_perturbative(pole), SingularPoint);
}

TEST_CASE("idle points: perturbative column") {
  CHECK_FALSE(genuine_idle_frequency(device(1), IdleMethod::Perturbative));
  CHECK(*genuine_idle_frequency(device(2), IdleMethod::Perturbative) == doctest::Approx(6.522).epsilon(1e-4));
  CHECK(*genuine_idle_frequency(device(5), IdleMethod::Perturbative) == doctest::Approx(5.278).epsilon(1e-4));
  CHECK(*affine_idle_frequency(device(2), IdleMethod::Perturbative) == doctest::Approx(4.515).epsilon(1e-4));
  CHECK(*affine_idle_frequency(device(4), IdleMethod::Perturbative) == doctest::Approx(4.587).epsilon(1e-4));
  for (int k : {5, 6, 7}) CHECK_FALSE(affine_idle_frequency(device(k), IdleMethod::Perturbative));
}

TEST_CASE("idle points: numeric zeros verify and classify") {
  auto zs = static_zz_zeros(device(2), default_coupler_range(device(2)));
  REQUIRE(zs.size() == 3);
  CHECK(zs[0].kind == ZeroKind::Affine);
  CHECK(zs[1].kind == ZeroKind::Trivial);
  CHECK(zs[2].kind == ZeroKind::Genuine);
  for (const auto& z : zs) CHECK(std::abs(static_zz(device(2).at_coupler_frequency(z.coupler_frequency))) < 1e-6);
  CHECK(zs[2].coupler_frequency == doctest::Approx(6.577).epsilon(5e-3 / 6.577));

  auto one = static_zz_zeros(device(1), default_coupler_range(device(1)));
  REQUIRE(one.size() == 1);
  CHECK(one[0].kind == ZeroKind::Affine);
  CHECK_FALSE(genuine_idle_frequency(device(1), IdleMethod::Numeric));

  CircuitParams free = uncoupled(device(2));
  CHECK(static_zz_zeros(free, {4.5, 7.0}).empty());
}

TEST_CASE("residual offset arithmetic") {
  CircuitParams p = device(2);
  const double wc = 6.5;
  const double d = p.q1.frequency + p.q2.frequency - 2 * wc;
  CHECK(residual_offset(p, wc) == doctest::Approx(8 * p.g12 * p.g12 * p.coupler.anharmonicity / (d * d)));
  CircuitParams no_g12 = p;
  no_g12.g12 = 0.0;
  CHECK(residual_offset(no_g12, wc) == 0.0);
  CircuitParams harmonic = p;
  harmonic.coupler.anharmonicity = 0.0;
  CHECK(residual_offset(harmonic, wc) == 0.0);
}

TEST_CASE("NPAD leaves a decoupled block untouched") {
  CircuitParams p = uncoupled(device(2));
  HilbertSpace s = p.space();
  RealMatrix h = build_static_hamiltonian(p);
  auto r = npad_decouple(h, s, {kComputational.begin(), kComputational.end()});
  CHECK(r.rotations == 0);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) CHECK(r.block(a, b) == h(s.index(kComputational[a]), s.index(kComputational[b])));
}

TEST_CASE("NPAD matches exact diagonalization on random circuits") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> wq(4.0, 4.6), wc(5.4, 7.0), anh(-0.35, -0.15), g(0.02, 0.1), g12(0.0, 0.01);
  for (int trial = 0; trial < 12; ++trial) {
    CircuitParams p;
    p.q1 = {wq(rng), anh(rng), 3};
    p.q2 = {wq(rng), anh(rng), 3};
    p.coupler = {wc(rng), anh(rng), 3};
    p.g1c = g(rng);
    p.g2c = g(rng);
    p.g12 = g12(rng);
    if (std::abs(p.q1.frequency - p.q2.frequency) < 0.02) continue;
    CHECK(std::abs(npad_static_zz(p) - static_zz(p)) < 1e-9);
  }
}
