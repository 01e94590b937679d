#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pfgate/devices.hpp"
#include "pfgate/driven.hpp"
#include "pfgate/dynamics.hpp"
#include "pfgate/errors.hpp"
#include "pfgate/results.hpp"
#include "pfgate/search.hpp"
#include "pfgate/spectral.hpp"
#include "pfgate/sweep.hpp"

using namespace pfgate;

namespace {

struct Globals {
  std::string device = "device2";
  std::string levels;
  double tolerance = 1e-4;
  int threads = 0;
  std::string format = "csv";
  std::string out;
};

struct Range {
  double from = NAN;
  double to = NAN;
  double step = 0.001;
};

struct CoherenceFlags {
  double t1 = 200.0;
  double t2 = 200.0;
  double coupler_t1 = NAN;
  double coupler_t2 = NAN;
  bool closed = false;

  CoherenceSpec spec() const {
    if (closed) return CoherenceSpec::closed();
    CoherenceSpec c = CoherenceSpec::uniform(t1, t2);
    if (!std::isnan(coupler_t1)) c.t1[1] = coupler_t1;
    if (!std::isnan(coupler_t2)) c.t2[1] = coupler_t2;
    c.validate();
    return c;
  }
};

std::array<int, 3> parse_levels(const std::string& s) {
  if (s.empty()) return kDefaultLevels;
  std::array<int, 3> l{};
  std::istringstream in(s);
  std::string part;
  int k = 0;
  while (std::getline(in, part, ',')) {
    if (k == 3) throw InvalidArgument("--levels takes three comma-separated integers");
    try {
      l[k++] = std::stoi(part);
    } catch (const std::exception&) {
      throw InvalidArgument("--levels: not an integer: '" + part + "'");
    }
  }
  if (k == 1) l = {l[0], l[0], l[0]};
  else if (k != 3) throw InvalidArgument("--levels takes one or three comma-separated integers");
  return l;
}

std::string levels_text(const std::array<int, 3>& l) {
  return std::to_string(l[0]) + "," + std::to_string(l[1]) + "," + std::to_string(l[2]);
}

struct Context {
  DeviceRecord record;
  CircuitParams params;
  std::array<int, 3> levels{};
  RootScanOptions roots;
};

Context make_context(const Globals& g) {
  Context c;
  const char* dir = std::getenv("PFGATE_DEVICE_DIR");
  c.record = load_device(g.device, dir ? dir : "");
  c.levels = parse_levels(g.levels);
  c.params = c.record.params.with_levels(c.levels);
  c.params.validate();
  if (!(g.tolerance > 0)) throw InvalidArgument("--tolerance must be positive");
  c.roots.tolerance = g.tolerance;
  if (g.threads < 0) throw InvalidArgument("--threads must be non-negative");
  if (g.threads > 0) sweep::set_threads(g.threads);
  return c;
}

SweepResult start(const std::string& name, const Context& c) {
  SweepResult r;
  r.name = name;
  r.metadata = {{"device", c.record.id}, {"levels", levels_text(c.levels)}, {"version", tool_version()}};
  return r;
}

void emit(const SweepResult& r, const Globals& g) {
  const Format f = parse_format(g.format);
  if (g.out.empty())
    export_results(r, f, std::cout);
  else
    export_results(r, f, g.out);
}

std::vector<double> grid(const Range& r, const CouplerRange& fallback) {
  const double lo = std::isnan(r.from) ? fallback.lo : r.from;
  const double hi = std::isnan(r.to) ? fallback.hi : r.to;
  if (!(r.step > 0)) throw InvalidArgument("--step must be positive");
  if (!(hi >= lo)) throw InvalidArgument("empty coupler range");
  std::vector<double> out;
  const int n = static_cast<int>(std::floor((hi - lo) / r.step + 1e-9)) + 1;
  for (int i = 0; i < n; ++i) out.push_back(lo + i * r.step);
  return out;
}

Cell number_or_na(const std::optional<double>& v) {
  if (v && std::isfinite(*v)) return *v;
  return std::string("NA");
}

void add_range_flags(CLI::App* sub, Range& r) {
  sub->add_option("--from", r.from, "Lowest coupler frequency, GHz");
  sub->add_option("--to", r.to, "Highest coupler frequency, GHz");
  sub->add_option("--step", r.step, "Coupler frequency step, GHz");
}

void add_coherence_flags(CLI::App* sub, CoherenceFlags& c) {
  sub->add_option("--t1", c.t1, "T1 of every mode, us");
  sub->add_option("--t2", c.t2, "T2 of every mode, us");
  sub->add_option("--coupler-t1", c.coupler_t1, "Coupler T1 override, us");
  sub->add_option("--coupler-t2", c.coupler_t2, "Coupler T2 override, us");
  sub->add_flag("--closed", c.closed, "Closed-system evolution");
}

// Entangled-mode parking for the affine gate on devices 1 to 4.
const std::map<std::string, double> kAffineEntangled = {
    {"device1", 4.472}, {"device2", 4.530}, {"device3", 4.658}, {"device4", 4.731}};

struct GatePoints {
  double idle;
  double entangled;
};

GatePoints gate_points(const Context& c, const std::string& kind, double entangled) {
  if (kind == "genuine") {
    auto gi = genuine_idle_frequency(c.params, IdleMethod::Numeric);
    if (!gi) throw NumericalError("device has no genuine idle point");
    return {*gi, std::isnan(entangled) ? 4.8 : entangled};
  }
  if (kind == "affine") {
    auto ai = affine_idle_frequency(c.params, IdleMethod::Numeric);
    if (!ai) throw NumericalError("device has no affine idle point");
    if (std::isnan(entangled)) {
      auto it = kAffineEntangled.find(c.record.id);
      if (it == kAffineEntangled.end()) throw InvalidArgument("--entangled is required for this device");
      entangled = it->second;
    }
    return {*ai, entangled};
  }
  throw InvalidArgument("gate kind must be genuine or affine, got '" + kind + "'");
}

// ---------------------------------------------------------------- commands

void cmd_static_zz(const Globals& g, const Range& range, const std::string& method) {
  const Context c = make_context(g);
  const std::vector<double> wc = grid(range, default_coupler_range(c.params));
  std::vector<double> z;
  if (method == "exact") {
    z = sweep::static_zz(c.params, wc, sweep::Exec::Parallel);
  } else if (method == "swt" || method == "npad") {
    z.resize(wc.size());
    for (std::size_t i = 0; i < wc.size(); ++i) {
      const CircuitParams p = c.params.at_coupler_frequency(wc[i]);
      try {
        z[i] = method == "swt" ? zz_perturbative(p).perturbative : npad_static_zz(p);
      } catch (const NumericalError&) {
        z[i] = NAN;
      }
    }
  } else {
    throw InvalidArgument("--method must be exact, swt or npad");
  }

  // Zero crossings are annotated on the grid row whose interval holds the refined root.
  std::map<std::size_t, std::string> notes;
  if (method == "exact" && wc.size() > 1) {
    RootScanOptions opt = c.roots;
    opt.step = range.step;
    for (const auto& zero : static_zz_zeros(c.params, {wc.front(), wc.back()}, opt)) {
      std::size_t i = static_cast<std::size_t>(std::floor((zero.coupler_frequency - wc.front()) / range.step));
      i = std::min(i, wc.size() - 1);
      std::ostringstream s;
      s << zero_kind_name(zero.kind) << " zero at " << format_cell(zero.coupler_frequency);
      notes[i] = s.str();
    }
  }

  SweepResult r = start("static-zz", c);
  r.metadata.push_back({"method", method});
  r.columns = {"wc_ghz", "zeta_ghz", "zero"};
  for (std::size_t i = 0; i < wc.size(); ++i) {
    auto it = notes.find(i);
    r.add_row({wc[i], number_or_na(z[i]), it == notes.end() ? std::string() : it->second});
  }
  emit(r, g);
}

void cmd_idle_points(const Globals& g) {
  const Context c = make_context(g);
  SweepResult r = start("idle-points", c);
  r.columns = {"numeric_ghz", "perturbative_ghz", "kind", "g_eff_ghz"};
  const auto zeros = static_zz_zeros(c.params, default_coupler_range(c.params), c.roots);
  const auto gi_n = genuine_idle_frequency(c.params, IdleMethod::Numeric);
  const auto ai_n = affine_idle_frequency(c.params, IdleMethod::Numeric);
  const auto gi_p = genuine_idle_frequency(c.params, IdleMethod::Perturbative);
  const auto ai_p = affine_idle_frequency(c.params, IdleMethod::Perturbative);

  r.add_row({number_or_na(gi_n), number_or_na(gi_p), std::string("genuine"),
             number_or_na(gi_n ? std::optional<double>(g_eff(c.params.at_coupler_frequency(*gi_n))) : std::nullopt)});
  r.add_row({number_or_na(ai_n), number_or_na(ai_p), std::string("affine"),
             number_or_na(ai_n ? std::optional<double>(g_eff(c.params.at_coupler_frequency(*ai_n))) : std::nullopt)});
  for (const auto& z : zeros) {
    const bool reported = (gi_n && z.coupler_frequency == *gi_n) || (ai_n && z.coupler_frequency == *ai_n);
    if (reported) continue;
    r.add_row({z.coupler_frequency, std::string("NA"), std::string(zero_kind_name(z.kind)), z.g_eff});
  }
  emit(r, g);
}

void cmd_freedom(const Globals& g, const Range& range, double ceiling) {
  const Context c = make_context(g);
  const std::vector<double> wc = grid(range, {4.4, 7.0});
  FreedomOptions fo;
  fo.ceiling = ceiling;
  std::vector<std::optional<double>> star(wc.size());
  std::vector<double> alpha(wc.size(), NAN);
  std::vector<int> failed(wc.size(), 0);
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < wc.size(); ++i) {
    try {
      const CircuitParams p = c.params.at_coupler_frequency(wc[i]);
      star[i] = freedom_amplitude(p, fo);
      if (star[i]) alpha[i] = effective_pauli_coefficients(p, {*star[i]}).alpha_zx();
    } catch (const NumericalError&) {
      failed[i] = 1;
    }
  }

  SweepResult r = start("freedom", c);
  r.metadata.push_back({"ceiling_ghz", format_cell(ceiling)});
  r.columns = {"wc_ghz", "omega_star_ghz", "alpha_zx_ghz", "note"};
  // A gap is a run of grid points without a freedom amplitude; M1 and M2 mark its edges.
  for (std::size_t i = 0; i < wc.size(); ++i) {
    std::string note = failed[i] ? "labeling failed" : "";
    if (!star[i] && !failed[i]) {
      const bool opens = i > 0 && star[i - 1];
      const bool closes = i + 1 < wc.size() && star[i + 1];
      if (opens) note = "M1";
      if (closes) note += note.empty() ? "M2" : " M2";
    }
    r.add_row({wc[i], number_or_na(star[i]), number_or_na(star[i] ? std::optional<double>(alpha[i]) : std::nullopt),
               note});
  }
  emit(r, g);
}

void cmd_exponents(const Globals& g, const Range& range, double lo, double hi, int n) {
  const Context c = make_context(g);
  const std::vector<double> wc = grid(range, {4.8, 7.0});
  const std::vector<double> omegas = log_grid(lo, hi, n);
  std::vector<std::optional<ExponentFit>> fits(wc.size());
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < wc.size(); ++i) {
    try {
      fits[i] = fit_higher_order_exponents(c.params.at_coupler_frequency(wc[i]), omegas);
    } catch (const NumericalError&) {
    }
  }
  SweepResult r = start("exponents", c);
  r.columns = {"wc_ghz", "eta2_per_ghz", "a", "eta_a", "mu1", "b", "mu_b"};
  for (std::size_t i = 0; i < wc.size(); ++i) {
    if (!fits[i]) {
      r.add_row({wc[i], std::string("NA"), std::string("NA"), std::string("NA"), std::string("NA"),
                 std::string("NA"), std::string("NA")});
      continue;
    }
    const ExponentFit& f = *fits[i];
    r.add_row({wc[i], f.eta2, f.a, f.eta_a, number_or_na(f.mu1), number_or_na(f.b), number_or_na(f.mu_b)});
  }
  emit(r, g);
}

void cmd_switch(const Globals& g, const std::string& kind, const std::string& ramp,
                const std::vector<double>& tau0s, const CoherenceFlags& cf, double entangled, double dt) {
  const Context c = make_context(g);
  const GatePoints gp = gate_points(c, kind, entangled);
  const CoherenceSpec coh = cf.spec();
  DynamicsOptions opt;
  opt.dt = dt;
  SweepResult r = start("switch", c);
  r.metadata.push_back({"kind", kind});
  r.metadata.push_back({"ramp", ramp});
  r.metadata.push_back({"idle_ghz", format_cell(gp.idle)});
  r.metadata.push_back({"entangled_ghz", format_cell(gp.entangled)});
  r.columns = {"tau0_ns", "loss_01", "loss_10", "loss_11", "mean_loss"};
  for (double tau0 : tau0s) {
    PulseSchedule s;
    s.w_idle = gp.idle;
    s.w_ent = gp.entangled;
    s.ramp = parse_ramp_kind(ramp);
    s.tau0 = tau0;
    const SwitchResult sr = switch_fidelity_loss(c.params, s, coh, opt);
    r.add_row({tau0, sr.loss[0], sr.loss[1], sr.loss[2], sr.mean_loss});
  }
  emit(r, g);
}

void cmd_gate_error(const Globals& g, const std::string& kind, const std::string& ramp, double tau0,
                    const std::vector<double>& tgs, const CoherenceFlags& cf, double entangled, double dt) {
  const Context c = make_context(g);
  const GatePoints gp = gate_points(c, kind, entangled);
  const CoherenceSpec coh = cf.spec();
  DynamicsOptions opt;
  opt.dt = dt;
  SweepResult r = start("gate-error", c);
  r.metadata.push_back({"kind", kind});
  r.metadata.push_back({"ramp", ramp});
  r.metadata.push_back({"tau0_ns", format_cell(tau0)});
  r.metadata.push_back({"idle_ghz", format_cell(gp.idle)});
  r.metadata.push_back({"entangled_ghz", format_cell(gp.entangled)});
  r.columns = {"t_g_ns", "total_ns", "omega_ghz", "alpha_zx_ghz", "zeta_ghz", "error", "coherence_limit", "leakage",
               "flag"};
  for (double tg : tgs) {
    const PulseSchedule s = gate_schedule(c.params, gp.idle, gp.entangled, parse_ramp_kind(ramp), tau0, tg, {}, opt);
    const GateErrorResult e = gate_error(c.params, s, coh, opt);
    r.add_row({tg, e.total_time, e.omega, e.alpha_zx, e.zeta, e.error, coherence_limited_error(e.total_time, coh),
               e.fidelity.leakage, std::string(e.leakage_flag ? "leakage above 10%" : "")});
  }
  emit(r, g);
}

void cmd_fringe(const Globals& g, const Range& range, double omega, const std::vector<double>& taus) {
  const Context c = make_context(g);
  const std::vector<double> wc = grid(range, {4.4, 7.0});
  std::vector<std::vector<double>> f(wc.size());
  std::vector<int> failed(wc.size(), 0);
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < wc.size(); ++i) {
    try {
      f[i] = ramsey_fringe(c.params.at_coupler_frequency(wc[i]), omega, taus);
    } catch (const NumericalError&) {
      failed[i] = 1;
    }
  }
  SweepResult r = start("fringe", c);
  r.metadata.push_back({"omega_ghz", format_cell(omega)});
  r.columns = {"wc_ghz", "tau_p_ns", "fringe"};
  for (std::size_t i = 0; i < wc.size(); ++i)
    for (std::size_t k = 0; k < taus.size(); ++k)
      r.add_row({wc[i], taus[k], failed[i] ? Cell(std::string("NA")) : Cell(f[i][k])});
  emit(r, g);
}

void cmd_device(const Globals& g) {
  const char* dir = std::getenv("PFGATE_DEVICE_DIR");
  const DeviceRecord d = load_device(g.device, dir ? dir : "");
  if (g.out.empty()) {
    save_device(d, std::cout);
  } else {
    std::ofstream f(g.out);
    if (!f) throw InvalidArgument("cannot write " + g.out);
    save_device(d, f);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Parasitic-free cross-resonance gate toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--device", g.device, "Builtin id (device1..device7), file path, or name in $PFGATE_DEVICE_DIR")
      ->capture_default_str();
  app.add_option("--levels", g.levels, "Truncation: N or NQ1,NC,NQ2 (default 4,3,4)");
  app.add_option("--tolerance", g.tolerance, "Root bisection width, GHz")->capture_default_str();
  app.add_option("--threads", g.threads, "OpenMP threads (0 keeps the runtime default)");
  app.add_option("--format", g.format, "csv or json")->capture_default_str();
  app.add_option("--out", g.out, "Output file (default stdout)");

  Range range;
  std::string method = "exact";
  auto* zz = app.add_subcommand("static-zz", "Static ZZ versus coupler frequency");
  add_range_flags(zz, range);
  zz->add_option("--method", method, "exact, swt or npad")->capture_default_str();

  auto* idle = app.add_subcommand("idle-points", "Genuine, affine and trivial static ZZ zeros");

  double ceiling = 0.080;
  auto* freedom = app.add_subcommand("freedom", "Freedom amplitude and ZX rate versus coupler frequency");
  add_range_flags(freedom, range);
  freedom->add_option("--ceiling", ceiling, "Largest drive amplitude searched, GHz")->capture_default_str();

  double om_lo = 0.01, om_hi = 0.1;
  int om_n = 10;
  auto* expo = app.add_subcommand("exponents", "Higher-order exponent fits versus coupler frequency");
  add_range_flags(expo, range);
  expo->add_option("--omega-min", om_lo, "Smallest fit amplitude, GHz")->capture_default_str();
  expo->add_option("--omega-max", om_hi, "Largest fit amplitude, GHz")->capture_default_str();
  expo->add_option("--points", om_n, "Fit points (log spaced)")->capture_default_str();

  std::string kind = "genuine", ramp = "tanh";
  std::vector<double> tau0s = {10, 20, 30, 40, 50, 60};
  double tau0 = 30.0;
  std::vector<double> tgs = {95, 135, 175};
  CoherenceFlags cf;
  double entangled = NAN, dt = 0.005;
  auto* sw = app.add_subcommand("switch", "Computational-state loss through the coupler ramp");
  sw->add_option("--kind", kind, "genuine or affine")->capture_default_str();
  sw->add_option("--ramp", ramp, "tanh or gaussian")->capture_default_str();
  sw->add_option("--tau0", tau0s, "Ramp times, ns");
  sw->add_option("--entangled", entangled, "Entangled-mode coupler frequency, GHz");
  sw->add_option("--dt", dt, "Integrator step, ns")->capture_default_str();
  add_coherence_flags(sw, cf);

  auto* ge = app.add_subcommand("gate-error", "ZX90 gate error versus CR pulse length");
  ge->add_option("--kind", kind, "genuine or affine")->capture_default_str();
  ge->add_option("--ramp", ramp, "tanh or gaussian")->capture_default_str();
  ge->add_option("--tau0", tau0, "Ramp time, ns")->capture_default_str();
  ge->add_option("--tg", tgs, "CR pulse lengths, ns");
  ge->add_option("--entangled", entangled, "Entangled-mode coupler frequency, GHz");
  ge->add_option("--dt", dt, "Integrator step, ns")->capture_default_str();
  add_coherence_flags(ge, cf);

  double omega = 0.0;
  std::vector<double> taus = {0, 100, 200, 300, 400, 500};
  auto* fr = app.add_subcommand("fringe", "Ramsey fringe cos(2 pi zeta tau_p) versus coupler frequency");
  add_range_flags(fr, range);
  fr->add_option("--omega", omega, "Drive amplitude, GHz")->capture_default_str();
  fr->add_option("--tau", taus, "Ramsey delays, ns");

  auto* dev = app.add_subcommand("device", "Print a device document");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*zz) cmd_static_zz(g, range, method);
    if (*idle) cmd_idle_points(g);
    if (*freedom) cmd_freedom(g, range, ceiling);
    if (*expo) cmd_exponents(g, range, om_lo, om_hi, om_n);
    if (*sw) cmd_switch(g, kind, ramp, tau0s, cf, entangled, dt);
    if (*ge) cmd_gate_error(g, kind, ramp, tau0, tgs, cf, entangled, dt);
    if (*fr) cmd_fringe(g, range, omega, taus);
    if (*dev) cmd_device(g);
  } catch (const InvalidArgument& e) {
    std::cerr << "pfgate: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "pfgate: numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "pfgate: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
