#include "pfgate/circuit.hpp"

#include <cmath>

#include "pfgate/errors.hpp"

namespace pfgate {

void CouplingGeometry::validate() const {
  for (double a : {alpha1, alpha2, alpha12})
    if (!(a >= 0.0 && a < 1.0)) throw InvalidArgument("coupling ratios must lie in [0, 1)");
}

CouplingGeometry CouplingGeometry::from_couplings(double g1c, double g2c, double g12, double w1,
                                                  double w2, double wc) {
  if (!(w1 > 0 && w2 > 0 && wc > 0)) throw InvalidArgument("frequencies must be positive");
  CouplingGeometry g{g1c / std::sqrt(w1 * wc), g2c / std::sqrt(w2 * wc), g12 / std::sqrt(w1 * w2)};
  g.validate();
  return g;
}

CouplingStrengths coupling_strengths(const CouplingGeometry& geometry, double w1, double w2,
                                     double wc) {
  geometry.validate();
  return {geometry.alpha1 * std::sqrt(w1 * wc), geometry.alpha2 * std::sqrt(w2 * wc),
          geometry.alpha12 * std::sqrt(w1 * w2)};
}

void CircuitParams::validate() const {
  q1.validate();
  coupler.validate();
  q2.validate();
  for (double g : {g1c, g2c, g12})
    if (!std::isfinite(g)) throw InvalidArgument("couplings must be finite");
  if (geometry) geometry->validate();
}

const ModeSpec& CircuitParams::mode(Mode m) const {
  switch (m) {
    case Mode::Q1: return q1;
    case Mode::Coupler: return coupler;
    case Mode::Q2: return q2;
  }
  return q1;
}

CircuitParams CircuitParams::at_coupler_frequency(double wc) const {
  if (!(wc > 0.0)) throw InvalidArgument("coupler frequency must be positive");
  CircuitParams p = *this;
  p.coupler.frequency = wc;
  if (geometry) {
    auto g = coupling_strengths(*geometry, q1.frequency, q2.frequency, wc);
    p.g1c = g.g1c;
    p.g2c = g.g2c;
    p.g12 = g.g12;
  }
  return p;
}

CircuitParams CircuitParams::with_levels(std::array<int, 3> levels) const {
  CircuitParams p = *this;
  p.q1.levels = levels[0];
  p.coupler.levels = levels[1];
  p.q2.levels = levels[2];
  p.validate();
  return p;
}

RealMatrix build_static_hamiltonian(const CircuitParams& params, const HilbertSpace& space) {
  params.validate();
  const std::array<Mode, 3> modes = {Mode::Q1, Mode::Coupler, Mode::Q2};
  for (Mode m : modes)
    if (space.dim(m) != params.mode(m).levels)
      throw InvalidArgument("space does not match mode truncation");

  const int n = space.size();
  RealMatrix h = RealMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    BasisLabel l = space.label(i);
    h(i, i) = params.q1.energy(l.q1) + params.coupler.energy(l.coupler) + params.q2.energy(l.q2);
  }
  std::array<RealMatrix, 3> x;
  for (Mode m : modes) {
    RealMatrix a = destroy(space.dim(m));
    x[static_cast<int>(m)] = embed(a + a.transpose(), m, space);
  }
  h += params.g1c * x[0] * x[1] + params.g2c * x[2] * x[1] + params.g12 * x[0] * x[2];
  // Products of commuting symmetric operators are symmetric; clean rounding anyway.
  h = 0.5 * (h + h.transpose()).eval();
  return h;
}

RealMatrix build_drive_operator(const DriveSpec& drive, const HilbertSpace& space) {
  if (drive.amplitude < 0.0) throw InvalidArgument("drive amplitude must be >= 0");
  RealMatrix a = destroy(space.dim(drive.driven));
  return drive.amplitude * embed(a + a.transpose(), drive.driven, space);
}

DrivenModel::DrivenModel(const CircuitParams& params, Mode driven,
                         std::optional<double> drive_frequency)
    : params_(params) {
  const HilbertSpace space = params.space();
  spectrum_ = diagonalize_and_label(build_static_hamiltonian(params, space), space);
  drive_frequency_ =
      drive_frequency ? *drive_frequency
                      : spectrum_.energy({0, 0, 1}) - spectrum_.energy({0, 0, 0});

  const RealVector nexc = excitation_numbers(space);
  const double e0 = spectrum_.energy({0, 0, 0});
  diagonal_ = (spectrum_.energies().array() - e0 - drive_frequency_ * nexc.array()).matrix();

  const RealMatrix& u = spectrum_.states();
  RealMatrix a = destroy(space.dim(driven));
  coupling_ = u.transpose() * embed(a + a.transpose(), driven, space) * u;
  const int n = space.size();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (std::abs(nexc(i) - nexc(j)) != 1.0) coupling_(i, j) = 0.0;
  coupling_ = 0.5 * (coupling_ + coupling_.transpose()).eval();
}

RealMatrix DrivenModel::hamiltonian(double omega) const {
  if (omega < 0.0) throw InvalidArgument("drive amplitude must be >= 0");
  RealMatrix h = (0.5 * omega) * coupling_;
  h.diagonal() += diagonal_;
  return h;
}

RealMatrix rotating_frame_hamiltonian(const CircuitParams& params, const DriveSpec& drive) {
  DrivenModel model(params, drive.driven, drive.frequency);
  return model.hamiltonian(drive.amplitude);
}

}  // namespace pfgate
