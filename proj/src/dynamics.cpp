#include "pfgate/dynamics.hpp"

#include <cmath>
#include <complex>
#include <exception>
#include <numbers>
#include <sstream>
#include <vector>

#include "pfgate/driven.hpp"
#include "pfgate/errors.hpp"

namespace pfgate {

using cd = std::complex<double>;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// ---------------------------------------------------------------- dissipator

Dissipator::Dissipator(int dim) : dim_(dim), loss_(RealMatrix::Zero(dim, dim)) {}

Dissipator::Dissipator(const HilbertSpace& space, const CoherenceSpec& coherence)
    : Dissipator(space.size()) {
  coherence.validate();
  const int n = space.size();
  for (int m = 0; m < 3; ++m) {
    const Mode mode = static_cast<Mode>(m);
    const double gamma = coherence.decay_rate(m);
    const double gphi = coherence.dephasing_rate(m);
    if (gamma > 0) {
      SparseOp op;
      const double s = std::sqrt(gamma);
      for (int i = 0; i < n; ++i) {
        BasisLabel l = space.label(i);
        const int k = l[mode];
        if (k == 0) continue;
        BasisLabel lower = l;
        if (mode == Mode::Q1) lower.q1 -= 1;
        if (mode == Mode::Coupler) lower.coupler -= 1;
        if (mode == Mode::Q2) lower.q2 -= 1;
        op.push_back({space.index(lower), i, s * std::sqrt(static_cast<double>(k))});
      }
      add(std::move(op));
    }
    if (gphi > 0) {
      SparseOp op;
      const double s = std::sqrt(2.0 * gphi);
      for (int i = 0; i < n; ++i) {
        const int k = space.label(i)[mode];
        if (k > 0) op.push_back({i, i, s * k});
      }
      add(std::move(op));
    }
  }
}

void Dissipator::add(SparseOp op) {
  for (const auto& a : op)
    for (const auto& b : op)
      if (a.row == b.row) loss_(a.col, b.col) += a.value * b.value;
  ops_.push_back(std::move(op));
}

void Dissipator::apply_jumps(const ComplexMatrix& rho, ComplexMatrix& out) const {
  for (const auto& op : ops_)
    for (const auto& a : op)
      for (const auto& b : op) out(a.row, b.row) += (a.value * b.value) * rho(a.col, b.col);
}

// ---------------------------------------------------------------- integrators

namespace {

class LindbladRhs {
 public:
  LindbladRhs(const HamiltonianFn& h, const Dissipator& d)
      : h_(h), d_(d), n_(d.dim()), hbuf_(n_, n_), a_(n_, n_) {}

  // H_eff = 2pi H - (i/2) sum c^dag c, stored as triplets: circuit Hamiltonians have a few
  // entries per row, so the product below costs nnz * n instead of n^3.
  void set_time(double t) {
    hbuf_.setZero();
    h_(t, hbuf_);
    entries_.clear();
    for (int j = 0; j < n_; ++j)
      for (int i = 0; i < n_; ++i) {
        cd v = kTwoPi * hbuf_(i, j);
        if (!d_.empty()) v -= cd(0.0, 0.5) * d_.loss()(i, j);
        if (v != cd(0.0, 0.0)) entries_.push_back({i, j, v});
      }
  }

  // Valid for Hermitian rho: rho H^dag = (H rho)^dag.
  void operator()(const ComplexMatrix& rho, ComplexMatrix& out) {
    a_.setZero();
    for (int c = 0; c < n_; ++c) {
      const cd* r = rho.col(c).data();
      cd* a = a_.col(c).data();
      for (const auto& e : entries_) a[e.row] += e.value * r[e.col];
    }
    out = cd(0.0, -1.0) * (a_ - a_.adjoint());
    d_.apply_jumps(rho, out);
  }

 private:
  struct Entry {
    int row, col;
    cd value;
  };
  const HamiltonianFn& h_;
  const Dissipator& d_;
  int n_;
  ComplexMatrix hbuf_, a_;
  std::vector<Entry> entries_;
};

int step_count(double t0, double t1, double dt) {
  if (!(dt > 0)) throw InvalidArgument("time step must be positive");
  if (t1 < t0) throw InvalidArgument("time span must be ordered");
  return std::max(1, static_cast<int>(std::ceil((t1 - t0) / dt - 1e-9)));
}

}  // namespace

ComplexMatrix lindblad_evolve(const HamiltonianFn& h, const Dissipator& d, const ComplexMatrix& rho0,
                              double t0, double t1, const EvolveOptions& opt,
                              const Observer& observer) {
  const int n = d.dim();
  if (rho0.rows() != n || rho0.cols() != n) throw InvalidArgument("lindblad: state dimension mismatch");
  if ((rho0 - rho0.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
    throw InvalidArgument("lindblad: initial operator must be Hermitian");

  const int steps = step_count(t0, t1, opt.dt);
  const double dt = (t1 - t0) / steps;
  const int every = opt.sample_interval > 0
                        ? std::max(1, static_cast<int>(std::lround(opt.sample_interval / dt)))
                        : steps;

  LindbladRhs f(h, d);
  ComplexMatrix rho = rho0, k1(n, n), k2(n, n), k3(n, n), k4(n, n), tmp(n, n);
  if (observer) observer(t0, rho);
  for (int s = 0; s < steps; ++s) {
    const double t = t0 + s * dt;
    f.set_time(t);
    f(rho, k1);
    f.set_time(t + 0.5 * dt);
    tmp = rho + (0.5 * dt) * k1;
    f(tmp, k2);
    tmp = rho + (0.5 * dt) * k2;
    f(tmp, k3);
    f.set_time(t + dt);
    tmp = rho + dt * k3;
    f(tmp, k4);
    rho += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (observer && ((s + 1) % every == 0 || s + 1 == steps)) observer(t0 + (s + 1) * dt, rho);
  }
  const double drift = std::abs(rho.trace() - rho0.trace());
  if (drift > opt.trace_tolerance) {
    std::ostringstream os;
    os << "trace drift " << drift << " exceeds " << opt.trace_tolerance << " at dt = " << dt
       << " ns over " << steps << " steps; reduce the step";
    throw StepSizeError(os.str());
  }
  return rho;
}

ComplexMatrix schrodinger_evolve(const HamiltonianFn& h, const ComplexMatrix& psi0, double t0,
                                 double t1, double dt) {
  const int n = static_cast<int>(psi0.rows());
  const int steps = step_count(t0, t1, dt);
  dt = (t1 - t0) / steps;
  ComplexMatrix hm(n, n), psi = psi0, k1, k2, k3, k4;
  auto at = [&](double t) {
    hm.setZero();
    h(t, hm);
    hm *= cd(0.0, -kTwoPi);
  };
  for (int s = 0; s < steps; ++s) {
    const double t = t0 + s * dt;
    at(t);
    k1.noalias() = hm * psi;
    at(t + 0.5 * dt);
    k2.noalias() = hm * (psi + (0.5 * dt) * k1);
    k3.noalias() = hm * (psi + (0.5 * dt) * k2);
    at(t + dt);
    k4.noalias() = hm * (psi + dt * k3);
    psi += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return psi;
}

// ---------------------------------------------------------------- circuit along a schedule

namespace {
SparseOp to_triplets(const RealMatrix& m) {
  SparseOp op;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (m(i, j) != 0.0) op.push_back({i, j, m(i, j)});
  return op;
}
}  // namespace

ScheduleHamiltonian::ScheduleHamiltonian(const CircuitParams& params, const PulseSchedule& schedule,
                                         double drive_frequency)
    : params_(params), schedule_(schedule), space_(params.space()), wd_(drive_frequency) {
  params_.validate();
  schedule_.validate();
  const int n = space_.size();
  static_diag_.resize(n);
  coupler_n_.resize(n);
  excitations_ = excitation_numbers(space_);
  for (int i = 0; i < n; ++i) {
    const BasisLabel l = space_.label(i);
    static_diag_(i) = params_.q1.energy(l.q1) + params_.q2.energy(l.q2) +
                      0.5 * l.coupler * (l.coupler - 1) * params_.coupler.anharmonicity -
                      wd_ * l.excitations();
    coupler_n_(i) = l.coupler;
  }
  std::array<RealMatrix, 3> a;
  for (int m = 0; m < 3; ++m) a[m] = embed(destroy(space_.dims()[m]), static_cast<Mode>(m), space_);
  const std::array<std::pair<Mode, Mode>, 3> pairs = {
      std::pair{Mode::Q1, Mode::Coupler}, std::pair{Mode::Q2, Mode::Coupler},
      std::pair{Mode::Q1, Mode::Q2}};
  for (auto [x, y] : pairs) {
    const RealMatrix& ax = a[static_cast<int>(x)];
    const RealMatrix& ay = a[static_cast<int>(y)];
    pairs_.push_back({x, y, to_triplets(ax.transpose() * ay + ax * ay.transpose()),
                      to_triplets(ax.transpose() * ay.transpose())});
  }
  const RealMatrix& ad = a[0];
  drive_x_ = to_triplets(ad + ad.transpose());
  drive_raise_ = to_triplets(ad.transpose());
}

void ScheduleHamiltonian::operator()(double t, ComplexMatrix& h) const {
  const double wc = schedule_.coupler(t);
  const int n = space_.size();
  for (int i = 0; i < n; ++i) h(i, i) += static_diag_(i) + coupler_n_(i) * wc;

  double g[3] = {params_.g1c, params_.g2c, params_.g12};
  if (params_.geometry) {
    const auto s = coupling_strengths(*params_.geometry, params_.q1.frequency, params_.q2.frequency, wc);
    g[0] = s.g1c;
    g[1] = s.g2c;
    g[2] = s.g12;
  }
  const cd e2 = std::polar(1.0, 2.0 * kTwoPi * wd_ * t);
  for (int p = 0; p < 3; ++p) {
    if (g[p] == 0.0) continue;
    for (const auto& x : pairs_[p].exchange) h(x.row, x.col) += g[p] * x.value;
    for (const auto& x : pairs_[p].raise) {
      const cd v = g[p] * x.value * e2;
      h(x.row, x.col) += v;
      h(x.col, x.row) += std::conj(v);
    }
  }
  const double omega = schedule_.drive(t);
  if (omega != 0.0) {
    const double half = 0.5 * omega;
    for (const auto& x : drive_x_) h(x.row, x.col) += half * x.value;
    for (const auto& x : drive_raise_) {
      const cd v = half * x.value * e2;
      h(x.row, x.col) += v;
      h(x.col, x.row) += std::conj(v);
    }
  }
}

ComplexMatrix ScheduleHamiltonian::to_lab(double t, const ComplexMatrix& rho) const {
  const int n = space_.size();
  ComplexMatrix out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      out(i, j) = rho(i, j) * std::polar(1.0, -kTwoPi * wd_ * t * (excitations_(i) - excitations_(j)));
  return out;
}

ComplexMatrix ScheduleHamiltonian::vectors_to_lab(double t, const ComplexMatrix& psi) const {
  ComplexMatrix out = psi;
  for (int i = 0; i < psi.rows(); ++i) out.row(i) *= std::polar(1.0, -kTwoPi * wd_ * t * excitations_(i));
  return out;
}

// ---------------------------------------------------------------- helpers

namespace {

struct IdleFrame {
  RealMatrix s;           // n x 4, dressed computational states at the idle point
  Eigen::Vector4d energy; // their dressed energies
};

IdleFrame idle_frame(const CircuitParams& params, double w_idle) {
  const CircuitParams p = params.at_coupler_frequency(w_idle);
  const HilbertSpace space = p.space();
  const DressedSpectrum spec = diagonalize_and_label(build_static_hamiltonian(p, space), space);
  IdleFrame f;
  f.s.resize(space.size(), 4);
  for (int a = 0; a < 4; ++a) {
    f.s.col(a) = spec.states().col(space.index(kComputational[a]));
    f.energy(a) = spec.energy(kComputational[a]);
  }
  return f;
}

double entangled_drive_frequency(const CircuitParams& params, const PulseSchedule& schedule) {
  return DrivenModel(params.at_coupler_frequency(schedule.w_ent)).drive_frequency();
}

template <class F>
void for_each_index(int n, sweep::Exec exec, F&& body) {
  if (exec == sweep::Exec::Serial) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::exception_ptr err;
#pragma omp parallel for schedule(dynamic, 1)
  for (int i = 0; i < n; ++i) {
    try {
      body(i);
    } catch (...) {
#pragma omp critical
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);
}

// Computational block of a lab-frame operator in the idle interaction picture.
Eigen::Matrix4cd project(const IdleFrame& f, const ComplexMatrix& rho_lab, double t) {
  const ComplexMatrix sc = f.s.cast<cd>();
  Eigen::Matrix4cd m = sc.transpose() * rho_lab * sc;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) m(a, b) *= std::polar(1.0, kTwoPi * (f.energy(a) - f.energy(b)) * t);
  return m;
}

ProcessMatrices lindblad_process(const CircuitParams& params, const PulseSchedule& schedule,
                                 const CoherenceSpec& coherence, const DynamicsOptions& opt,
                                 double dt) {
  const IdleFrame f = idle_frame(params, schedule.w_idle);
  const ScheduleHamiltonian h(params, schedule, entangled_drive_frequency(params, schedule));
  const Dissipator d(h.space(), coherence);
  const HamiltonianFn hf = [&h](double t, ComplexMatrix& m) { h(t, m); };
  const double total = schedule.total();

  // Hermitian probes: 4 diagonal, then X and Y parts of each off-diagonal pair.
  struct Probe {
    int i, j, part;  // part 0: |i><i|, 1: X_ij, 2: Y_ij
  };
  std::vector<Probe> probes;
  for (int i = 0; i < 4; ++i) probes.push_back({i, i, 0});
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      probes.push_back({i, j, 1});
      probes.push_back({i, j, 2});
    }
  std::vector<Eigen::Matrix4cd> out(probes.size());
  EvolveOptions eo;
  eo.dt = dt;
  for_each_index(static_cast<int>(probes.size()), opt.exec, [&](int k) {
    const Probe& p = probes[k];
    const ComplexMatrix si = f.s.col(p.i).cast<cd>(), sj = f.s.col(p.j).cast<cd>();
    ComplexMatrix rho0;
    if (p.part == 0)
      rho0 = si * si.adjoint();
    else if (p.part == 1)
      rho0 = si * sj.adjoint() + sj * si.adjoint();
    else
      rho0 = cd(0, 1) * (si * sj.adjoint() - sj * si.adjoint());
    const ComplexMatrix rho = lindblad_evolve(hf, d, rho0, 0.0, total, eo);
    out[k] = project(f, h.to_lab(total, rho), total);
  });

  ProcessMatrices pm;
  int k = 0;
  for (int i = 0; i < 4; ++i) pm.e[4 * i + i] = out[k++];
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      const Eigen::Matrix4cd& x = out[k++];
      const Eigen::Matrix4cd& y = out[k++];
      pm.e[4 * i + j] = 0.5 * (x - cd(0, 1) * y);
      pm.e[4 * j + i] = 0.5 * (x + cd(0, 1) * y);
    }
  return pm;
}

Eigen::Matrix4cd closed_unitary(const CircuitParams& params, const PulseSchedule& schedule, double dt) {
  const IdleFrame f = idle_frame(params, schedule.w_idle);
  const ScheduleHamiltonian h(params, schedule, entangled_drive_frequency(params, schedule));
  const HamiltonianFn hf = [&h](double t, ComplexMatrix& m) { h(t, m); };
  const double total = schedule.total();
  const ComplexMatrix psi = h.vectors_to_lab(total, schrodinger_evolve(hf, f.s.cast<cd>(), 0.0, total, dt));
  Eigen::Matrix4cd u = f.s.cast<cd>().transpose() * psi;
  for (int a = 0; a < 4; ++a) u.row(a) *= std::polar(1.0, kTwoPi * f.energy(a) * total);
  return u;
}

Eigen::Matrix4cd phase_diag(double a, double b) {
  Eigen::Matrix4cd d = Eigen::Matrix4cd::Zero();
  d(0, 0) = 1.0;
  d(1, 1) = std::polar(1.0, b);
  d(2, 2) = std::polar(1.0, a);
  d(3, 3) = std::polar(1.0, a + b);
  return d;
}

double process_fidelity(const ProcessMatrices& p, const Eigen::Matrix4cd& target) {
  cd acc = 0.0;
  const Eigen::Matrix4cd ta = target.adjoint();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) acc += (ta.row(i) * p.e[4 * i + j] * target.col(j))(0, 0);
  return acc.real() / 16.0;
}

}  // namespace

// ---------------------------------------------------------------- fidelity

Eigen::Matrix4cd zx90(double sign) {
  const double c = std::cos(std::numbers::pi / 4), s = std::sin(std::numbers::pi / 4);
  Eigen::Matrix4cd zx = Eigen::Matrix4cd::Zero();
  zx(0, 1) = zx(1, 0) = 1.0;
  zx(2, 3) = zx(3, 2) = -1.0;
  return c * Eigen::Matrix4cd::Identity() - cd(0, sign >= 0 ? s : -s) * zx;
}

ProcessMatrices process_from_unitary(const Eigen::Matrix4cd& u) {
  ProcessMatrices p;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) p.e[4 * i + j] = u.col(i) * u.col(j).adjoint();
  return p;
}

GateFidelity zx90_fidelity(const ProcessMatrices& p, double sign) {
  const Eigen::Matrix4cd base = zx90(sign);
  auto f = [&](const std::array<double, 3>& x) {
    return process_fidelity(p, phase_diag(x[0], x[1]) * base * phase_diag(0.0, x[2]));
  };
  constexpr int kGrid = 16;
  const double step = kTwoPi / kGrid;
  std::array<double, 3> best{};
  double fbest = -1.0;
  for (int i = 0; i < kGrid; ++i)
    for (int j = 0; j < kGrid; ++j)
      for (int k = 0; k < kGrid; ++k) {
        std::array<double, 3> x{i * step, j * step, k * step};
        const double v = f(x);
        if (v > fbest) {
          fbest = v;
          best = x;
        }
      }
  // Coordinate golden-section refinement around the grid optimum.
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double width = step;
  for (int pass = 0; pass < 4; ++pass, width *= 0.25) {
    for (int c = 0; c < 3; ++c) {
      double lo = best[c] - width, hi = best[c] + width;
      auto at = [&](double v) {
        auto x = best;
        x[c] = v;
        return f(x);
      };
      double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
      double f1 = at(x1), f2 = at(x2);
      for (int it = 0; it < 40; ++it) {
        if (f1 > f2) {
          hi = x2;
          x2 = x1;
          f2 = f1;
          x1 = hi - gr * (hi - lo);
          f1 = at(x1);
        } else {
          lo = x1;
          x1 = x2;
          f1 = f2;
          x2 = lo + gr * (hi - lo);
          f2 = at(x2);
        }
      }
      const double xm = 0.5 * (lo + hi), fm = at(xm);
      if (fm > fbest) {
        fbest = fm;
        best[c] = xm;
      }
    }
  }
  GateFidelity g;
  g.process = fbest;
  double kept = 0.0;
  for (int i = 0; i < 4; ++i) kept += p.e[4 * i + i].trace().real();
  g.leakage = 1.0 - 0.25 * kept;
  g.average = (4.0 * g.process + 1.0 - g.leakage) / 5.0;
  for (int c = 0; c < 3; ++c) g.phases[c] = std::remainder(best[c], kTwoPi);
  return g;
}

// ---------------------------------------------------------------- switch and leakage

SwitchResult switch_fidelity_loss(const CircuitParams& params, const PulseSchedule& schedule,
                                  const CoherenceSpec& coherence, const DynamicsOptions& opt) {
  if (schedule.cr.amplitude != 0.0) throw InvalidArgument("switch fidelity expects no CR drive");
  auto run = [&](double dt) {
    const IdleFrame f = idle_frame(params, schedule.w_idle);
    const ScheduleHamiltonian h(params, schedule, entangled_drive_frequency(params, schedule));
    const Dissipator d(h.space(), coherence);
    const HamiltonianFn hf = [&h](double t, ComplexMatrix& m) { h(t, m); };
    EvolveOptions eo;
    eo.dt = dt;
    std::array<double, 3> loss{};
    for_each_index(3, opt.exec, [&](int k) {
      const ComplexMatrix s = f.s.col(k + 1).cast<cd>();
      const ComplexMatrix rho = lindblad_evolve(hf, d, s * s.adjoint(), 0.0, schedule.total(), eo);
      const ComplexMatrix lab = h.to_lab(schedule.total(), rho);
      loss[k] = 1.0 - (s.adjoint() * lab * s)(0, 0).real();
    });
    return loss;
  };
  SwitchResult r;
  r.loss = run(opt.dt);
  r.mean_loss = (r.loss[0] + r.loss[1] + r.loss[2]) / 3.0;
  if (opt.half_step_check) {
    const auto half = run(0.5 * opt.dt);
    double worst = 0.0;
    for (int k = 0; k < 3; ++k) worst = std::max(worst, std::abs(half[k] - r.loss[k]));
    r.half_step_change = worst;
  }
  return r;
}

PopulationSeries leakage_population(const CircuitParams& params, const PulseSchedule& schedule,
                                    const CoherenceSpec& coherence, const BasisLabel& initial,
                                    double sample_interval, const DynamicsOptions& opt) {
  const ScheduleHamiltonian h(params, schedule, entangled_drive_frequency(params, schedule));
  const Dissipator d(h.space(), coherence);
  const HamiltonianFn hf = [&h](double t, ComplexMatrix& m) { h(t, m); };
  const HilbertSpace space = h.space();
  const CircuitParams p0 = params.at_coupler_frequency(schedule.w_idle);
  const DressedSpectrum s0 = diagonalize_and_label(build_static_hamiltonian(p0, space), space);
  const ComplexMatrix psi = s0.states().col(space.index(initial)).cast<cd>();

  const std::array<BasisLabel, 3> watch = {BasisLabel{0, 1, 0}, BasisLabel{1, 1, 0}, BasisLabel{0, 1, 1}};
  PopulationSeries out;
  EvolveOptions eo;
  eo.dt = opt.dt;
  eo.sample_interval = sample_interval;
  lindblad_evolve(hf, d, psi * psi.adjoint(), 0.0, schedule.total(), eo,
                  [&](double t, const ComplexMatrix& rho) {
                    const CircuitParams pt = params.at_coupler_frequency(schedule.coupler(t));
                    const DressedSpectrum st =
                        diagonalize_and_label(build_static_hamiltonian(pt, space), space);
                    const ComplexMatrix lab = h.to_lab(t, rho);
                    out.times.push_back(t);
                    for (int k = 0; k < 3; ++k) {
                      const ComplexMatrix v = st.states().col(space.index(watch[k])).cast<cd>();
                      out.population[k].push_back((v.adjoint() * lab * v)(0, 0).real());
                    }
                  });
  return out;
}

// ---------------------------------------------------------------- gate

namespace {

// |alpha_zx| integrated over the CR envelope, from a tabulated rate curve.
struct RateTable {
  double step;
  std::vector<double> alpha;
  double at(double w) const {
    const double x = w / step;
    const int i = std::min(static_cast<int>(x), static_cast<int>(alpha.size()) - 2);
    const double u = x - i;
    return (1 - u) * alpha[i] + u * alpha[i + 1];
  }
};

double rotation(const RateTable& t, const CrPulse& cr, double omega) {
  constexpr int kSimpson = 128;
  auto ramp = [&](double len) {
    if (len <= 0) return 0.0;
    const double h = len / kSimpson;
    double s = 0.0;
    for (int i = 0; i <= kSimpson; ++i) {
      const double env = 0.5 * (1.0 - std::cos(std::numbers::pi * i / kSimpson));
      const double w = (i == 0 || i == kSimpson) ? 1.0 : (i % 2 ? 4.0 : 2.0);
      s += w * t.at(omega * env);
    }
    return s * h / 3.0;
  };
  return t.at(omega) * cr.flat + ramp(cr.rise) + ramp(cr.fall);
}

}  // namespace

PulseSchedule gate_schedule(const CircuitParams& params, double w_idle, double w_ent, RampKind ramp,
                            double tau0, double t_g, const GateOptions& gopt,
                            const DynamicsOptions& opt) {
  PulseSchedule s;
  s.w_idle = w_idle;
  s.w_ent = w_ent;
  s.ramp = ramp;
  s.tau0 = tau0;
  s.hold = t_g;
  s.cr.rise = gopt.rise;
  s.cr.fall = gopt.fall;
  s.cr.flat = t_g - gopt.rise - gopt.fall;
  if (s.cr.flat < 0) throw InvalidArgument("gate length shorter than the CR rise and fall");

  const DrivenModel model(params.at_coupler_frequency(w_ent));
  RateTable table;
  table.step = 0.002;
  constexpr int kPoints = 101;
  table.alpha.resize(kPoints);
  for (int i = 0; i < kPoints; ++i)
    table.alpha[i] = std::abs(driven_point(model, i * table.step).pauli.alpha_zx());

  const double target = 0.25;
  int hi = -1;
  for (int i = 1; i < kPoints; ++i)
    if (rotation(table, s.cr, i * table.step) >= target) {
      hi = i;
      break;
    }
  if (hi < 0) throw ConvergenceError("ZX rate too weak for the requested gate length");
  double lo_w = (hi - 1) * table.step, hi_w = hi * table.step;
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo_w + hi_w);
    (rotation(table, s.cr, mid) < target ? lo_w : hi_w) = mid;
  }
  s.cr.amplitude = 0.5 * (lo_w + hi_w);

  if (gopt.refine_closed) {
    const double sign = driven_point(model, s.cr.amplitude).pauli.alpha_zx() >= 0 ? 1.0 : -1.0;
    auto score = [&](double w) {
      PulseSchedule trial = s;
      trial.cr.amplitude = w;
      return zx90_fidelity(process_from_unitary(closed_unitary(params, trial, opt.dt)), sign).average;
    };
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = 0.85 * s.cr.amplitude, b = 1.15 * s.cr.amplitude;
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = score(x1), f2 = score(x2);
    for (int it = 0; it < 12; ++it) {
      if (f1 > f2) {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - gr * (b - a);
        f1 = score(x1);
      } else {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + gr * (b - a);
        f2 = score(x2);
      }
    }
    s.cr.amplitude = f1 > f2 ? x1 : x2;
  }
  s.validate();
  return s;
}

GateErrorResult gate_error(const CircuitParams& params, const PulseSchedule& schedule,
                           const CoherenceSpec& coherence, const DynamicsOptions& opt) {
  schedule.validate();
  const DrivenModel model(params.at_coupler_frequency(schedule.w_ent));
  const PauliCoefficients flat = driven_point(model, schedule.cr.amplitude).pauli;
  GateErrorResult r;
  r.omega = schedule.cr.amplitude;
  r.alpha_zx = flat.alpha_zx();
  r.zeta = flat.zeta();
  r.total_time = schedule.total();
  const double sign = r.alpha_zx >= 0 ? 1.0 : -1.0;
  r.fidelity = zx90_fidelity(lindblad_process(params, schedule, coherence, opt, opt.dt), sign);
  r.error = 1.0 - r.fidelity.average;
  r.leakage_flag = r.fidelity.leakage > 0.1;
  if (opt.half_step_check) {
    const GateFidelity half =
        zx90_fidelity(lindblad_process(params, schedule, coherence, opt, 0.5 * opt.dt), sign);
    r.half_step_change = std::abs(half.average - r.fidelity.average);
  }
  return r;
}

double coherence_limited_error(double duration, const CoherenceSpec& c) {
  double sum = 0.0;
  for (int m : {0, 2}) sum += duration * (c.decay_rate(m) + c.dephasing_rate(m));
  return 0.4 * sum;
}

std::vector<double> ramsey_fringe(const CircuitParams& params, double omega,
                                  const std::vector<double>& tau_p) {
  const double zeta = driven_point(DrivenModel(params), omega).pauli.zeta();
  std::vector<double> out;
  for (double t : tau_p) out.push_back(std::cos(kTwoPi * zeta * t));
  return out;
}

}  // namespace pfgate
