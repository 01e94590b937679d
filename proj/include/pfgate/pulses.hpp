#pragma once

#include <string>

namespace pfgate {

enum class RampKind { Tanh, FlatTopGaussian };
RampKind parse_ramp_kind(const std::string& s);
const char* ramp_kind_name(RampKind k);

struct RampShape {
  double tanh_steepness = 4.0;   // k = tanh_steepness / tau0
  double gaussian_width = 0.25;  // sigma = gaussian_width * tau0, edge spans the full tau0
};

// Rise from w_idle (t <= 0) to w_ent (t >= tau0). Both kinds are normalized to hit the
// endpoints exactly.
double coupler_ramp_envelope(RampKind kind, double w_idle, double w_ent, double tau0, double t,
                             const RampShape& shape = {});

// Cosine rise over `rise`, flat omega for `tau`, cosine fall over `fall`; zero outside.
double cr_pulse_envelope(double omega, double rise, double fall, double tau, double t);

struct CrPulse {
  double amplitude = 0.0;  // GHz
  double rise = 20.0;      // ns
  double fall = 20.0;
  double flat = 0.0;
  double length() const { return rise + flat + fall; }
};

// OFF-ON-OFF cycle: ramp up over tau0, hold at w_ent for `hold`, mirrored ramp down.
// The CR pulse starts when the ramp-up ends and must fit inside the hold.
struct PulseSchedule {
  double w_idle = 0.0;
  double w_ent = 0.0;
  RampKind ramp = RampKind::Tanh;
  double tau0 = 30.0;
  double hold = 0.0;
  RampShape shape;
  CrPulse cr;

  void validate() const;
  double total() const { return 2.0 * tau0 + hold; }
  double coupler(double t) const;
  double drive(double t) const;
};

}  // namespace pfgate
