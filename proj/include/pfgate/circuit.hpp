#pragma once

#include <array>
#include <optional>

#include "pfgate/labeling.hpp"
#include "pfgate/operators.hpp"

namespace pfgate {

// Truncation (Q1, C, Q2) used by the CLI and the acceptance suite. Static roots move by a few
// MHz between truncations; this choice is the cheapest one that keeps the Lindblad runs stable.
inline constexpr std::array<int, 3> kDefaultLevels{4, 3, 4};

// Capacitance ratios; couplings scale as g_ic = a_i sqrt(w_i w_c), g12 = a12 sqrt(w1 w2).
struct CouplingGeometry {
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  double alpha12 = 0.0;

  void validate() const;
  // Ratios that reproduce the given couplings at coupler frequency wc.
  static CouplingGeometry from_couplings(double g1c, double g2c, double g12, double w1, double w2,
                                         double wc);
};

struct CouplingStrengths {
  double g1c = 0.0;
  double g2c = 0.0;
  double g12 = 0.0;
};

CouplingStrengths coupling_strengths(const CouplingGeometry& geometry, double w1, double w2,
                                     double wc);

struct CircuitParams {
  ModeSpec q1;
  ModeSpec coupler;
  ModeSpec q2;
  double g1c = 0.0;
  double g2c = 0.0;
  double g12 = 0.0;
  std::optional<CouplingGeometry> geometry;

  void validate() const;
  HilbertSpace space() const { return HilbertSpace({q1.levels, coupler.levels, q2.levels}); }
  const ModeSpec& mode(Mode m) const;

  // Same circuit with the coupler retuned; couplings follow the geometry when present.
  CircuitParams at_coupler_frequency(double wc) const;
  CircuitParams with_levels(std::array<int, 3> levels) const;

  double delta12() const { return q1.frequency - q2.frequency; }
  double detuning1() const { return q1.frequency - coupler.frequency; }
  double detuning2() const { return q2.frequency - coupler.frequency; }
  double sum1() const { return q1.frequency + coupler.frequency; }
  double sum2() const { return q2.frequency + coupler.frequency; }
  double chi() const { return coupler.anharmonicity / (detuning1() + detuning2()); }
};

struct DriveSpec {
  double amplitude = 0.0;                // Omega, GHz
  std::optional<double> frequency;       // defaults to the dressed target frequency
  Mode driven = Mode::Q1;
};

RealMatrix build_static_hamiltonian(const CircuitParams& params, const HilbertSpace& space);
inline RealMatrix build_static_hamiltonian(const CircuitParams& params) {
  return build_static_hamiltonian(params, params.space());
}

// Omega (a + a^dagger) on the driven mode.
RealMatrix build_drive_operator(const DriveSpec& drive, const HilbertSpace& space);

// Static spectrum and dressed drive matrix, reused across drive amplitudes.
class DrivenModel {
 public:
  explicit DrivenModel(const CircuitParams& params, Mode driven = Mode::Q1,
                       std::optional<double> drive_frequency = std::nullopt);

  const CircuitParams& params() const { return params_; }
  const DressedSpectrum& spectrum() const { return spectrum_; }
  double drive_frequency() const { return drive_frequency_; }

  // Time-independent rotating-frame Hamiltonian (GHz) at amplitude omega, expressed in the
  // static dressed basis (row/column n = dressed state labeled n).
  RealMatrix hamiltonian(double omega) const;

 private:
  CircuitParams params_;
  DressedSpectrum spectrum_;
  double drive_frequency_ = 0.0;
  RealVector diagonal_;
  RealMatrix coupling_;  // dressed (a + a^dagger), RWA-masked to |dN| = 1
};

RealMatrix rotating_frame_hamiltonian(const CircuitParams& params, const DriveSpec& drive);

}  // namespace pfgate
