#include "pfgate/roots.hpp"

#include "pfgate/errors.hpp"

namespace pfgate {

double bisect(const std::function<double(double)>& f, double a, double fa, double b, double fb,
              const RootScanOptions& opt, double* f_at_root) {
  if (std::signbit(fa) == std::signbit(fb)) throw InvalidArgument("bisect: no sign change");
  double m = 0.5 * (a + b), fm = fa;
  for (int it = 0; it < opt.max_iterations; ++it) {
    m = 0.5 * (a + b);
    fm = f(m);
    if (fm == 0.0) break;
    if (std::signbit(fm) == std::signbit(fa)) {
      a = m;
      fa = fm;
    } else {
      b = m;
      fb = fm;
    }
    if (b - a < opt.tolerance && std::abs(fm) < opt.value_tolerance) break;
  }
  if (f_at_root) *f_at_root = fm;
  return m;
}

std::vector<double> refine_sampled_roots(const std::function<double(double)>& f,
                                         const std::vector<double>& xs,
                                         const std::vector<double>& values,
                                         const RootScanOptions& opt) {
  std::vector<double> roots;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    const double fa = values[i], fb = values[i + 1];
    if (std::isnan(fa) || std::isnan(fb)) continue;
    if (fa == 0.0) {
      roots.push_back(xs[i]);
      continue;
    }
    if (std::signbit(fa) == std::signbit(fb) || fb == 0.0) continue;
    double froot = 0.0;
    const double r = bisect(f, xs[i], fa, xs[i + 1], fb, opt, &froot);
    if (std::abs(froot) > opt.jump_threshold) continue;
    roots.push_back(r);
  }
  if (!values.empty() && values.back() == 0.0) roots.push_back(xs.back());
  return roots;
}

std::vector<double> scan_roots(const std::function<double(double)>& f, double lo, double hi,
                               const RootScanOptions& opt) {
  if (!(hi > lo) || !(opt.step > 0)) throw InvalidArgument("scan_roots: empty range");
  const int n = static_cast<int>(std::floor((hi - lo) / opt.step + 1e-9)) + 1;
  std::vector<double> xs(n), values(n);
  for (int i = 0; i < n; ++i) {
    xs[i] = lo + i * opt.step;
    values[i] = f(xs[i]);
  }
  return refine_sampled_roots(f, xs, values, opt);
}

}  // namespace pfgate
