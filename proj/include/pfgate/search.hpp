#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "pfgate/driven.hpp"
#include "pfgate/spectral.hpp"

namespace pfgate {

struct OperatingPoint {
  double coupler_frequency = 0.0;
  ZeroKind kind = ZeroKind::Trivial;
  std::optional<double> omega_star;
  double alpha_zx = 0.0;
  double zeta = 0.0;  // total ZZ re-evaluated through the LA pipeline
};

std::vector<OperatingPoint> find_static_zz_zeros(const CircuitParams& params,
                                                 const CouplerRange& range,
                                                 const RootScanOptions& opt = {});

struct FreedomOptions {
  double ceiling = 0.080;  // GHz
  double step = 0.001;     // bracketing grid in omega
  double tolerance = 1e-5; // bisection width in omega
  double static_zero = 1e-6;  // |zeta_s| below this is already ZZ-free
};

// All omega in (0, ceiling] with zeta(omega) = 0, ascending. {0} when zeta_s itself is below
// static_zero.
std::vector<double> freedom_amplitudes(const CircuitParams& params, const FreedomOptions& opt = {});
std::optional<double> freedom_amplitude(const CircuitParams& params, const FreedomOptions& opt = {});

// Fit of f(x) = c x^p + eta_a x^a (p = 2 for zeta_d, 1 for alpha_zx).
struct PowerFit {
  double leading = 0.0;   // c
  double exponent = 0.0;  // a
  double coefficient = 0.0;  // eta_a
  double residual = 0.0;     // rms of the log-log fit
};

// Leading coefficient from Richardson extrapolation of f(x)/x^p at h and 2h, then a
// least-squares line through log|f - c x^p| against log x on the grid.
PowerFit fit_power_correction(const std::function<double(double)>& f, int p,
                              const std::vector<double>& grid, double h);

// Least-squares slope of log|f| against log x.
double log_log_slope(const std::function<double(double)>& f, const std::vector<double>& grid);

struct ExponentFit {
  double eta2 = 0.0;
  double a = 0.0;
  double eta_a = 0.0;
  double zeta_residual = 0.0;
  std::optional<double> mu1;
  std::optional<double> b;
  std::optional<double> mu_b;
  std::optional<double> alpha_residual;
};

std::vector<double> log_grid(double lo, double hi, int n);

ExponentFit fit_higher_order_exponents(const CircuitParams& params,
                                       const std::vector<double>& omegas);

struct QuadraticFactor {
  double value = 0.0;       // zeta_d / omega^2 at 2 MHz
  double richardson = 0.0;  // extrapolated from 1 and 2 MHz
};
QuadraticFactor quadratic_factor(const CircuitParams& params);

struct GateLength {
  double tau = 0.0;    // flat-top, ns
  double total = 0.0;  // 40 ns of ramps + tau
};
GateLength gate_length(double alpha_zx);

}  // namespace pfgate
