#pragma once

#include <cmath>
#include <functional>
#include <vector>

namespace pfgate {

struct RootScanOptions {
  double step = 1e-3;         // bracketing grid, GHz
  double tolerance = 1e-4;    // bisection width target
  double value_tolerance = 1e-6;  // keep refining until |f| is below this
  double jump_threshold = 1e-3;   // |f| at a converged bracket above this is a discontinuity
  int max_iterations = 80;
};

// Grid scan for sign changes of f on [lo, hi] followed by bisection. NaN samples break
// brackets. Returns ascending roots; sign flips that converge onto a jump are dropped.
std::vector<double> scan_roots(const std::function<double(double)>& f, double lo, double hi,
                               const RootScanOptions& opt = {});

// Same scan over precomputed samples on a uniform grid (x0, x0 + step, ...).
std::vector<double> refine_sampled_roots(const std::function<double(double)>& f,
                                         const std::vector<double>& xs,
                                         const std::vector<double>& values,
                                         const RootScanOptions& opt = {});

double bisect(const std::function<double(double)>& f, double a, double fa, double b, double fb,
              const RootScanOptions& opt, double* f_at_root = nullptr);

}  // namespace pfgate
