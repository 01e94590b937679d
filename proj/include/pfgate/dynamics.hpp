#pragma once

#include <array>
#include <functional>
#include <optional>
#include <vector>

#include "pfgate/circuit.hpp"
#include "pfgate/coherence.hpp"
#include "pfgate/pulses.hpp"
#include "pfgate/sweep.hpp"

namespace pfgate {

struct Triplet {
  int row = 0;
  int col = 0;
  double value = 0.0;
};
using SparseOp = std::vector<Triplet>;

// Collapse operators c_k (already scaled by sqrt(rate), rates in 1/ns).
class Dissipator {
 public:
  Dissipator() = default;
  explicit Dissipator(int dim);
  // Per mode: decay a / sqrt(T1) and dephasing sqrt(2 / T_phi) n.
  Dissipator(const HilbertSpace& space, const CoherenceSpec& coherence);

  void add(SparseOp op);
  int dim() const { return dim_; }
  bool empty() const { return ops_.empty(); }
  const RealMatrix& loss() const { return loss_; }  // sum_k c_k^dagger c_k
  void apply_jumps(const ComplexMatrix& rho, ComplexMatrix& out) const;  // out += sum c rho c^dag

 private:
  int dim_ = 0;
  std::vector<SparseOp> ops_;
  RealMatrix loss_;
};

// Fills h (GHz, not multiplied by 2 pi) at time t (ns).
using HamiltonianFn = std::function<void(double t, ComplexMatrix& h)>;
using Observer = std::function<void(double t, const ComplexMatrix& rho)>;

struct EvolveOptions {
  double dt = 0.005;               // ns
  double trace_tolerance = 1e-8;
  double sample_interval = 0.0;    // observer cadence; 0 calls it at the end points only
};

// Fixed-step RK4 for d rho/dt = -i 2pi [H, rho] + sum D[c] rho. rho0 must be Hermitian;
// general operators are handled by linearity over Hermitian parts.
ComplexMatrix lindblad_evolve(const HamiltonianFn& h, const Dissipator& d, const ComplexMatrix& rho0,
                              double t0, double t1, const EvolveOptions& opt = {},
                              const Observer& observer = {});

// RK4 for the columns of psi under -i 2pi H.
ComplexMatrix schrodinger_evolve(const HamiltonianFn& h, const ComplexMatrix& psi0, double t0,
                                 double t1, double dt = 0.005);

// Full circuit Hamiltonian along a schedule, in the frame rotating at the drive frequency
// on every excitation. Counter-rotating coupling and drive terms are kept with their
// e^{+-2i w_d t} phases.
class ScheduleHamiltonian {
 public:
  ScheduleHamiltonian(const CircuitParams& params, const PulseSchedule& schedule,
                      double drive_frequency);

  void operator()(double t, ComplexMatrix& h) const;
  const HilbertSpace& space() const { return space_; }
  double drive_frequency() const { return wd_; }
  // rho_lab = exp(-i 2pi w_d N t) rho_rot exp(+i 2pi w_d N t).
  ComplexMatrix to_lab(double t, const ComplexMatrix& rho_rot) const;
  ComplexMatrix vectors_to_lab(double t, const ComplexMatrix& psi_rot) const;

 private:
  struct Pair {
    Mode a, b;
    SparseOp exchange;  // a^dag b + a b^dag
    SparseOp raise;     // a^dag b^dag
  };
  CircuitParams params_;
  PulseSchedule schedule_;
  HilbertSpace space_;
  double wd_;
  RealVector static_diag_;
  RealVector coupler_n_;
  RealVector excitations_;
  std::vector<Pair> pairs_;
  SparseOp drive_x_;
  SparseOp drive_raise_;
};

struct DynamicsOptions {
  double dt = 0.005;
  sweep::Exec exec = sweep::Exec::Parallel;
  bool half_step_check = false;  // rerun at dt/2 and report the largest change
};

struct SwitchResult {
  std::array<double, 3> loss{};  // |01>, |10>, |11>
  double mean_loss = 0.0;
  std::optional<double> half_step_change;
};

SwitchResult switch_fidelity_loss(const CircuitParams& params, const PulseSchedule& schedule,
                                  const CoherenceSpec& coherence, const DynamicsOptions& opt = {});

struct PopulationSeries {
  std::vector<double> times;
  std::array<std::vector<double>, 3> population;  // dressed |010>, |110>, |011> at w_c(t)
};

PopulationSeries leakage_population(const CircuitParams& params, const PulseSchedule& schedule,
                                    const CoherenceSpec& coherence, const BasisLabel& initial,
                                    double sample_interval = 1.0, const DynamicsOptions& opt = {});

// Channel restricted to the computational block: e[4*i + j] = P E(|i><j|) P in the idle
// dressed basis, interaction picture of the idle Hamiltonian.
struct ProcessMatrices {
  std::array<Eigen::Matrix4cd, 16> e;
};

struct GateFidelity {
  double process = 0.0;
  double leakage = 0.0;
  double average = 0.0;
  std::array<double, 3> phases{};  // post Z on Q1, post Z on Q2, pre Z on Q2
};

Eigen::Matrix4cd zx90(double sign);
// Optimizes the three virtual-Z phases against exp(-i pi/4 sign ZX).
GateFidelity zx90_fidelity(const ProcessMatrices& p, double sign);
ProcessMatrices process_from_unitary(const Eigen::Matrix4cd& u);

struct GateErrorResult {
  double error = 0.0;
  GateFidelity fidelity;
  double omega = 0.0;
  double alpha_zx = 0.0;  // at the flat-top amplitude, E mode
  double zeta = 0.0;      // total ZZ at the flat-top amplitude, E mode
  double total_time = 0.0;
  bool leakage_flag = false;  // leakage above 10 %: metric unreliable
  std::optional<double> half_step_change;
};

struct GateOptions {
  double rise = 20.0;
  double fall = 20.0;
  bool refine_closed = true;  // tune omega on closed-system fidelity after the rate estimate
};

// Schedule for a ZX90 of hold length t_g with the CR amplitude calibrated.
PulseSchedule gate_schedule(const CircuitParams& params, double w_idle, double w_ent, RampKind ramp,
                            double tau0, double t_g, const GateOptions& gopt = {},
                            const DynamicsOptions& opt = {});

GateErrorResult gate_error(const CircuitParams& params, const PulseSchedule& schedule,
                           const CoherenceSpec& coherence, const DynamicsOptions& opt = {});

// 1 - F_avg for two qubits under T1/T2 only, over `duration` ns.
double coherence_limited_error(double duration, const CoherenceSpec& coherence);

std::vector<double> ramsey_fringe(const CircuitParams& params, double omega,
                                  const std::vector<double>& tau_p);

}  // namespace pfgate
