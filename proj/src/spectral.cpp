#include "pfgate/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pfgate/errors.hpp"
#include "pfgate/sweep.hpp"

namespace pfgate {

namespace {
constexpr double kGenuineGeff = 1e-3;  // 1 MHz
constexpr double kQuasiDispersive = 10.0;

void require_nonzero(double d, const char* what) {
  if (std::abs(d) < 1e-12) throw SingularPoint(std::string("resonance: ") + what + " = 0");
}
}  // namespace

const char* zero_kind_name(ZeroKind k) {
  switch (k) {
    case ZeroKind::Genuine: return "genuine";
    case ZeroKind::Affine: return "affine";
    case ZeroKind::Trivial: return "trivial";
    case ZeroKind::Dynamic: return "dynamic";
  }
  return "?";
}

double static_zz(const CircuitParams& params) {
  const HilbertSpace space = params.space();
  return zz_from_spectrum(diagonalize_and_label(build_static_hamiltonian(params, space), space));
}

double g_eff(const CircuitParams& p) {
  const double s = 1.0 / p.detuning1() - 1.0 / p.sum1() + 1.0 / p.detuning2() - 1.0 / p.sum2();
  return p.g12 + 0.5 * p.g1c * p.g2c * s;
}

StaticZZBreakdown zz_perturbative(const CircuitParams& p) {
  const double d12 = p.delta12();
  const double d1 = p.q1.anharmonicity, d2 = p.q2.anharmonicity, dc = p.coupler.anharmonicity;
  require_nonzero(d12 - d2, "Delta12 - delta2");
  require_nonzero(d12 + d1, "Delta12 + delta1");
  const double dsum = p.detuning1() + p.detuning2();
  require_nonzero(dsum - dc, "Delta1 + Delta2 - delta_c");
  require_nonzero(dsum, "Delta1 + Delta2");

  StaticZZBreakdown out;
  out.g_eff = g_eff(p);
  out.zeta_s1 = 2.0 * out.g_eff * out.g_eff * (d1 + d2) / ((d12 - d2) * (d12 + d1));
  out.zeta_s2 = 8.0 * (out.g_eff - p.chi() * p.g12) * (out.g_eff - p.g12) / (dsum - dc);
  out.perturbative = out.zeta_s1 + out.zeta_s2;
  out.exact = static_zz(p);
  return out;
}

CouplerRange default_coupler_range(const CircuitParams& p) {
  const double wq = std::max(p.q1.frequency, p.q2.frequency);
  const CircuitParams at = p.at_coupler_frequency(wq);
  return {wq + std::max(at.g1c, at.g2c), 7.0};
}

std::vector<StaticZero> static_zz_zeros(const CircuitParams& params, const CouplerRange& range,
                                        const RootScanOptions& opt) {
  if (!(range.hi > range.lo)) throw InvalidArgument("empty coupler range");
  const int n = static_cast<int>(std::floor((range.hi - range.lo) / opt.step + 1e-9)) + 1;
  std::vector<double> grid(n);
  for (int i = 0; i < n; ++i) grid[i] = range.lo + i * opt.step;
  const std::vector<double> values = sweep::static_zz(params, grid, sweep::Exec::Parallel);

  auto f = [&](double wc) { return sweep::static_zz_or_nan(params.at_coupler_frequency(wc)); };
  const std::vector<double> roots = refine_sampled_roots(f, grid, values, opt);

  std::vector<StaticZero> zeros;
  const double wq = std::max(params.q1.frequency, params.q2.frequency);
  // Several roots can pass the |g_eff| test; only the one closest to g_eff = 0 is genuine.
  int genuine = -1;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    const double ge = std::abs(g_eff(params.at_coupler_frequency(roots[i])));
    if (ge < kGenuineGeff &&
        (genuine < 0 || ge < std::abs(g_eff(params.at_coupler_frequency(roots[genuine])))))
      genuine = static_cast<int>(i);
  }
  bool affine_found = false;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    const double r = roots[i];
    const CircuitParams at = params.at_coupler_frequency(r);
    StaticZero z;
    z.coupler_frequency = r;
    z.g_eff = g_eff(at);
    z.zeta = f(r);
    const double g = std::max(at.g1c, at.g2c);
    if (static_cast<int>(i) == genuine) {
      z.kind = ZeroKind::Genuine;
    } else if (!affine_found && r - wq < kQuasiDispersive * g) {
      z.kind = ZeroKind::Affine;
      affine_found = true;
    } else {
      z.kind = ZeroKind::Trivial;
    }
    zeros.push_back(z);
  }
  return zeros;
}

std::optional<double> genuine_idle_frequency(const CouplingGeometry& geometry, double w1,
                                             double w2) {
  geometry.validate();
  if (geometry.alpha12 <= 0.0) return std::nullopt;
  const double r = 2.0 * geometry.alpha1 * geometry.alpha2 / geometry.alpha12;
  if (r >= 1.0) return std::nullopt;
  return (w1 + w2) / (2.0 * std::sqrt(1.0 - r));
}

std::optional<double> genuine_idle_frequency(const CircuitParams& params, IdleMethod method) {
  if (method == IdleMethod::Perturbative) {
    const CouplingGeometry geo =
        params.geometry ? *params.geometry
                        : CouplingGeometry::from_couplings(params.g1c, params.g2c, params.g12,
                                                           params.q1.frequency,
                                                           params.q2.frequency,
                                                           params.coupler.frequency);
    return genuine_idle_frequency(geo, params.q1.frequency, params.q2.frequency);
  }
  std::optional<StaticZero> best;
  for (const auto& z : static_zz_zeros(params, default_coupler_range(params)))
    if (z.kind == ZeroKind::Genuine && (!best || std::abs(z.g_eff) < std::abs(best->g_eff)))
      best = z;
  if (!best) return std::nullopt;
  return best->coupler_frequency;
}

std::optional<double> affine_idle_frequency(const CircuitParams& p, IdleMethod method) {
  if (method == IdleMethod::Perturbative) {
    const double d1 = p.q1.anharmonicity, d2 = p.q2.anharmonicity, d12 = p.delta12();
    require_nonzero(d1 + d2, "delta1 + delta2");
    // Sign of the second term follows the tabulated perturbative values.
    const double wc = 0.5 * (p.q1.frequency + p.q2.frequency - p.coupler.anharmonicity) +
                      2.0 * (d12 - d2) * (d12 + d1) / (d1 + d2);
    // Outside the dispersive regime (coupler within 2 g of a qubit) the expansion fails.
    if (!(wc > 0.0)) return std::nullopt;
    const CircuitParams at = p.at_coupler_frequency(wc);
    if (wc - p.q1.frequency < 2.0 * at.g1c || wc - p.q2.frequency < 2.0 * at.g2c)
      return std::nullopt;
    return wc;
  }
  for (const auto& z : static_zz_zeros(p, default_coupler_range(p)))
    if (z.kind == ZeroKind::Affine) return z.coupler_frequency;
  return std::nullopt;
}

double residual_offset(const CircuitParams& p, double wc_genuine) {
  const double d = p.q1.frequency + p.q2.frequency - 2.0 * wc_genuine;
  require_nonzero(d, "w1 + w2 - 2 w_c");
  return 8.0 * p.g12 * p.g12 * p.coupler.anharmonicity / (d * d);
}

NpadResult npad_decouple(const RealMatrix& h, const HilbertSpace& space,
                         const std::vector<BasisLabel>& target, double threshold,
                         int max_rotations) {
  const int n = space.size();
  if (h.rows() != n || h.cols() != n) throw InvalidArgument("npad: matrix does not match space");
  if ((h - h.transpose()).cwiseAbs().maxCoeff() > 1e-12) throw InvalidArgument("npad: H not symmetric");
  std::vector<int> in, out;
  std::vector<bool> is_target(n, false);
  for (const auto& l : target) {
    in.push_back(space.index(l));
    is_target[in.back()] = true;
  }
  for (int i = 0; i < n; ++i)
    if (!is_target[i]) out.push_back(i);

  NpadResult res;
  RealMatrix a = h;
  while (true) {
    int bi = -1, bj = -1;
    double big = 0.0;
    for (int i : in)
      for (int j : out)
        if (std::abs(a(i, j)) > big) {
          big = std::abs(a(i, j));
          bi = i;
          bj = j;
        }
    if (big < threshold) break;
    if (res.rotations >= max_rotations) throw ConvergenceError("npad: rotation budget exhausted");
    // Small-angle branch keeps each basis vector tied to its label.
    const double theta = 0.5 * std::atan(2.0 * a(bi, bj) / (a(bi, bi) - a(bj, bj)));
    const double c = std::cos(theta), s = std::sin(theta);
    for (int k = 0; k < n; ++k) {
      const double x = a(k, bi), y = a(k, bj);
      a(k, bi) = c * x + s * y;
      a(k, bj) = -s * x + c * y;
    }
    for (int k = 0; k < n; ++k) {
      const double x = a(bi, k), y = a(bj, k);
      a(bi, k) = c * x + s * y;
      a(bj, k) = -s * x + c * y;
    }
    a(bi, bj) = a(bj, bi) = 0.0;
    ++res.rotations;
  }
  const int m = static_cast<int>(in.size());
  res.block.resize(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) res.block(i, j) = a(in[i], in[j]);
  res.rotated = std::move(a);
  return res;
}

double npad_static_zz(const CircuitParams& params) {
  const HilbertSpace space = params.space();
  const std::vector<BasisLabel> target(kComputational.begin(), kComputational.end());
  NpadResult r = npad_decouple(build_static_hamiltonian(params, space), space, target);
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(r.block);
  auto lab = assign_labels(es.eigenvalues(), es.eigenvectors(), r.block.diagonal());
  const RealVector& e = es.eigenvalues();
  return e(lab[3]) - e(lab[2]) - e(lab[1]) + e(lab[0]);
}

}  // namespace pfgate
