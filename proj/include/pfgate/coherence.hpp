#pragma once

#include <array>

namespace pfgate {

// Times in microseconds, per mode in (Q1, C, Q2) order. Infinity disables a channel.
struct CoherenceSpec {
  std::array<double, 3> t1{200.0, 200.0, 200.0};
  std::array<double, 3> t2{200.0, 200.0, 200.0};

  void validate() const;
  static CoherenceSpec uniform(double t1_us, double t2_us);
  static CoherenceSpec closed();
  // Rates in 1/ns.
  double decay_rate(int mode) const;
  double dephasing_rate(int mode) const;  // 1/T_phi = 1/T2 - 1/(2 T1)
};

}  // namespace pfgate
