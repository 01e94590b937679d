#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pfgate/circuit.hpp"
#include "pfgate/roots.hpp"

namespace pfgate {

struct StaticZZBreakdown {
  double zeta_s1 = 0.0;
  double zeta_s2 = 0.0;
  double perturbative = 0.0;
  double exact = 0.0;
  double g_eff = 0.0;
};

enum class IdleMethod { Perturbative, Numeric };
enum class ZeroKind { Genuine, Affine, Trivial, Dynamic };
const char* zero_kind_name(ZeroKind k);

double static_zz(const CircuitParams& params);
double g_eff(const CircuitParams& params);
StaticZZBreakdown zz_perturbative(const CircuitParams& params);

// Coupler-frequency window used when searching static zeros numerically.
struct CouplerRange {
  double lo = 0.0;
  double hi = 7.0;
};
// Default: from max(w1, w2) + g (clear of the coupler-qubit collision) up to 7 GHz.
CouplerRange default_coupler_range(const CircuitParams& params);

struct StaticZero {
  double coupler_frequency = 0.0;
  ZeroKind kind = ZeroKind::Trivial;
  double g_eff = 0.0;
  double zeta = 0.0;
};

// All sign-change roots of static_zz(w_c) on the range, classified: genuine where
// |g_eff| < 1 MHz, affine for the lowest other root inside the quasi-dispersive window
// (w_c - max(w_q) < 10 g), trivial otherwise.
std::vector<StaticZero> static_zz_zeros(const CircuitParams& params, const CouplerRange& range,
                                        const RootScanOptions& opt = {});

std::optional<double> genuine_idle_frequency(const CouplingGeometry& geometry, double w1, double w2);
std::optional<double> genuine_idle_frequency(const CircuitParams& params, IdleMethod method);
std::optional<double> affine_idle_frequency(const CircuitParams& params, IdleMethod method);

double residual_offset(const CircuitParams& params, double wc_genuine);

struct NpadResult {
  RealMatrix block;   // decoupled target block, rows/cols in target order
  RealMatrix rotated; // full matrix after rotations
  int rotations = 0;
};

// Jacobi rotations that zero target-complement couplings one at a time (largest first).
NpadResult npad_decouple(const RealMatrix& h, const HilbertSpace& space,
                         const std::vector<BasisLabel>& target, double threshold = 1e-10,
                         int max_rotations = 100000);

double npad_static_zz(const CircuitParams& params);

}  // namespace pfgate
