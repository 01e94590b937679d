#include "pfgate/pulses.hpp"

#include <cmath>
#include <numbers>

#include "pfgate/errors.hpp"

namespace pfgate {

RampKind parse_ramp_kind(const std::string& s) {
  if (s == "tanh") return RampKind::Tanh;
  if (s == "gaussian" || s == "flat-top-gaussian") return RampKind::FlatTopGaussian;
  throw InvalidArgument("unknown ramp kind '" + s + "' (tanh|gaussian)");
}

const char* ramp_kind_name(RampKind k) {
  return k == RampKind::Tanh ? "tanh" : "gaussian";
}

double coupler_ramp_envelope(RampKind kind, double w_idle, double w_ent, double tau0, double t,
                             const RampShape& shape) {
  if (!(tau0 > 0.0)) throw InvalidArgument("ramp time must be positive");
  if (t <= 0.0) return w_idle;
  if (t >= tau0) return w_ent;
  double s = 0.0;
  if (kind == RampKind::Tanh) {
    const double k = shape.tanh_steepness / tau0;
    const double edge = std::tanh(0.5 * k * tau0);
    s = (std::tanh(k * (t - 0.5 * tau0)) + edge) / (2.0 * edge);
  } else {
    const double sigma = shape.gaussian_width * tau0;
    const double edge = std::erf(0.5 * tau0 / (std::numbers::sqrt2 * sigma));
    s = (std::erf((t - 0.5 * tau0) / (std::numbers::sqrt2 * sigma)) + edge) / (2.0 * edge);
  }
  return w_idle + (w_ent - w_idle) * s;
}

double cr_pulse_envelope(double omega, double rise, double fall, double tau, double t) {
  if (rise < 0 || fall < 0 || tau < 0) throw InvalidArgument("CR pulse times must be >= 0");
  if (t < 0.0 || t > rise + tau + fall) return 0.0;
  if (t < rise) return omega * 0.5 * (1.0 - std::cos(std::numbers::pi * t / rise));
  if (t <= rise + tau) return omega;
  const double u = t - rise - tau;
  return omega * 0.5 * (1.0 + std::cos(std::numbers::pi * u / fall));
}

void PulseSchedule::validate() const {
  if (!(tau0 > 0)) throw InvalidArgument("schedule: tau0 must be positive");
  if (!(shape.tanh_steepness > 0) || !(shape.gaussian_width > 0))
    throw InvalidArgument("schedule: ramp shape parameters must be positive");
  if (hold < 0) throw InvalidArgument("schedule: hold must be >= 0");
  if (!(w_idle > 0) || !(w_ent > 0)) throw InvalidArgument("schedule: coupler frequencies must be positive");
  if (cr.amplitude < 0) throw InvalidArgument("schedule: CR amplitude must be >= 0");
  if (cr.amplitude > 0 && cr.length() > hold + 1e-9)
    throw InvalidArgument("schedule: CR pulse does not fit inside the entangled window");
}

double PulseSchedule::coupler(double t) const {
  if (t <= tau0) return coupler_ramp_envelope(ramp, w_idle, w_ent, tau0, t, shape);
  if (t <= tau0 + hold) return w_ent;
  return coupler_ramp_envelope(ramp, w_idle, w_ent, tau0, total() - t, shape);
}

double PulseSchedule::drive(double t) const {
  if (cr.amplitude == 0.0) return 0.0;
  return cr_pulse_envelope(cr.amplitude, cr.rise, cr.fall, cr.flat, t - tau0);
}

}  // namespace pfgate
