#include "pfgate/search.hpp"

#include <cmath>

#include "pfgate/errors.hpp"
#include "pfgate/sweep.hpp"

namespace pfgate {

std::vector<OperatingPoint> find_static_zz_zeros(const CircuitParams& params,
                                                 const CouplerRange& range,
                                                 const RootScanOptions& opt) {
  std::vector<OperatingPoint> out;
  for (const StaticZero& z : static_zz_zeros(params, range, opt)) {
    OperatingPoint p;
    p.coupler_frequency = z.coupler_frequency;
    p.kind = z.kind;
    p.omega_star = 0.0;
    p.zeta = driven_point(DrivenModel(params.at_coupler_frequency(z.coupler_frequency)), 0.0)
                 .pauli.zeta();
    out.push_back(p);
  }
  return out;
}

std::vector<double> freedom_amplitudes(const CircuitParams& params, const FreedomOptions& opt) {
  const DrivenModel model(params);
  const double zs = driven_point(model, 0.0).pauli.zeta();
  if (std::abs(zs) < opt.static_zero) return {0.0};

  const int n = static_cast<int>(std::floor(opt.ceiling / opt.step + 1e-9));
  std::vector<double> xs(n), values(n);
  for (int i = 0; i < n; ++i) xs[i] = (i + 1) * opt.step;
  auto f = [&](double w) { return driven_point(model, w).pauli.zeta(); };
  for (int i = 0; i < n; ++i) values[i] = f(xs[i]);

  RootScanOptions ro;
  ro.tolerance = opt.tolerance;
  ro.value_tolerance = 1e-6;
  ro.jump_threshold = 1e-3;
  std::vector<double> roots;
  // Bracket from zeta_s at omega = 0 into the first grid point too.
  if (std::signbit(zs) != std::signbit(values[0]))
    roots.push_back(bisect(f, 0.0, zs, xs[0], values[0], ro));
  for (double r : refine_sampled_roots(f, xs, values, ro)) roots.push_back(r);
  return roots;
}

std::optional<double> freedom_amplitude(const CircuitParams& params, const FreedomOptions& opt) {
  auto roots = freedom_amplitudes(params, opt);
  if (roots.empty()) return std::nullopt;
  return roots.front();
}

std::vector<double> log_grid(double lo, double hi, int n) {
  if (!(lo > 0 && hi > lo) || n < 2) throw InvalidArgument("log_grid: bad bounds");
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
  return g;
}

namespace {
struct Line {
  double slope, intercept, rms;
};

Line fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const int n = static_cast<int>(x.size());
  Eigen::MatrixXd a(n, 2);
  Eigen::VectorXd b(n);
  for (int i = 0; i < n; ++i) {
    a(i, 0) = x[i];
    a(i, 1) = 1.0;
    b(i) = y[i];
  }
  Eigen::Vector2d s = a.colPivHouseholderQr().solve(b);
  const double rms = std::sqrt((a * s - b).squaredNorm() / n);
  return {s(0), s(1), rms};
}

void check_grid(const std::vector<double>& grid) {
  if (grid.size() < 8) throw InvalidArgument("exponent fit needs at least 8 grid points");
  double lo = grid.front(), hi = grid.front();
  for (double g : grid) {
    if (!(g > 0)) throw InvalidArgument("exponent fit grid must be positive");
    lo = std::min(lo, g);
    hi = std::max(hi, g);
  }
  if (hi < 10.0 * lo * (1 - 1e-9)) throw InvalidArgument("exponent fit grid must span a decade");
}
}  // namespace

double log_log_slope(const std::function<double(double)>& f, const std::vector<double>& grid) {
  std::vector<double> x, y;
  for (double g : grid) {
    x.push_back(std::log(g));
    y.push_back(std::log(std::abs(f(g))));
  }
  return fit_line(x, y).slope;
}

PowerFit fit_power_correction(const std::function<double(double)>& f, int p,
                              const std::vector<double>& grid, double h) {
  check_grid(grid);
  PowerFit out;
  out.leading = (4.0 * f(h) / std::pow(h, p) - f(2 * h) / std::pow(2 * h, p)) / 3.0;
  std::vector<double> x, y;
  double sign = 0.0;
  for (double g : grid) {
    const double r = f(g) - out.leading * std::pow(g, p);
    if (r == 0.0) continue;
    sign += r > 0 ? 1.0 : -1.0;
    x.push_back(std::log(g));
    y.push_back(std::log(std::abs(r)));
  }
  if (x.size() < 2) throw ConvergenceError("exponent fit: residual vanishes on the grid");
  const Line line = fit_line(x, y);
  out.exponent = line.slope;
  out.coefficient = (sign >= 0 ? 1.0 : -1.0) * std::exp(line.intercept);
  out.residual = line.rms;
  return out;
}

ExponentFit fit_higher_order_exponents(const CircuitParams& params,
                                       const std::vector<double>& omegas) {
  check_grid(omegas);
  const DrivenModel model(params);
  const double z0 = driven_point(model, 0.0).pauli.zeta();
  auto zeta_d = [&](double w) { return driven_point(model, w).pauli.zeta() - z0; };
  auto alpha = [&](double w) { return driven_point(model, w).pauli.alpha_zx(); };
  double lo = omegas.front();
  for (double w : omegas) lo = std::min(lo, w);
  const double h = lo / 4.0;

  ExponentFit out;
  const PowerFit fz = fit_power_correction(zeta_d, 2, omegas, h);
  out.eta2 = fz.leading;
  out.a = fz.exponent;
  out.eta_a = fz.coefficient;
  out.zeta_residual = fz.residual;

  bool sign_change = false;
  const double s0 = alpha(h);
  for (double w : omegas)
    if (std::signbit(alpha(w)) != std::signbit(s0)) sign_change = true;
  if (!sign_change) {
    const PowerFit fa = fit_power_correction(alpha, 1, omegas, h);
    out.mu1 = fa.leading;
    out.b = fa.exponent;
    out.mu_b = fa.coefficient;
    out.alpha_residual = fa.residual;
  }
  return out;
}

QuadraticFactor quadratic_factor(const CircuitParams& params) {
  const DrivenModel model(params);
  const double z0 = driven_point(model, 0.0).pauli.zeta();
  auto eta = [&](double w) { return (driven_point(model, w).pauli.zeta() - z0) / (w * w); };
  const double e1 = eta(0.001), e2 = eta(0.002);
  return {e2, (4.0 * e1 - e2) / 3.0};
}

GateLength gate_length(double alpha_zx) {
  if (!(alpha_zx > 0.0)) throw InvalidArgument("gate_length: alpha_zx must be positive");
  const double tau = 1.0 / (4.0 * alpha_zx);
  return {tau, 40.0 + tau};
}

}  // namespace pfgate
