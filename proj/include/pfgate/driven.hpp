#pragma once

#include <array>
#include <vector>

#include "pfgate/circuit.hpp"

namespace pfgate {

enum class Pauli : int { I = 0, X = 1, Y = 2, Z = 3 };

// H = sum_PQ c[P][Q] P (x) Q on (Q1, Q2), GHz.
struct PauliCoefficients {
  std::array<std::array<double, 4>, 4> c{};

  double operator()(Pauli p, Pauli q) const { return c[static_cast<int>(p)][static_cast<int>(q)]; }
  // Tr[(Z (x) Z) H] = E00 - E01 - E10 + E11 for a diagonal block.
  double zeta() const { return 4.0 * (*this)(Pauli::Z, Pauli::Z); }
  // Tr[(Z (x) X) H] / 2, so that H contains (alpha_zx / 2) Z (x) X.
  double alpha_zx() const { return 2.0 * (*this)(Pauli::Z, Pauli::X); }

  Eigen::Matrix4cd reconstruct() const;
  static PauliCoefficients from_matrix(const Eigen::Matrix4cd& h);
};

Eigen::Matrix2cd pauli_matrix(Pauli p);

struct LaResult {
  RealMatrix transform;   // T, columns indexed like the input basis
  RealMatrix block_diagonal;  // T^T H T
  double unitarity_error = 0.0;  // ||T^T T - I||_max
  double off_block = 0.0;        // largest coupling between partition blocks after T
};

// Least-action block diagonalization of a real symmetric H whose basis is labeled by
// `space`. Every label must appear in exactly one block of `partition`.
LaResult la_block_diagonalize(const RealMatrix& h, const HilbertSpace& space,
                              const std::vector<std::vector<BasisLabel>>& partition);

// Computational block vs. everything else.
std::vector<std::vector<BasisLabel>> computational_partition(const HilbertSpace& space);

struct DrivenPoint {
  PauliCoefficients pauli;
  Eigen::Matrix4d effective;  // computational block in order 00, 01, 10, 11
  double unitarity_error = 0.0;
  double off_block = 0.0;
};

DrivenPoint driven_point(const DrivenModel& model, double omega);
PauliCoefficients effective_pauli_coefficients(const CircuitParams& params, const DriveSpec& drive);
double dynamic_zz(const CircuitParams& params, const DriveSpec& drive);

struct TransitionRates {
  std::array<double, 11> lambda{};
  double operator[](int i) const { return lambda.at(i - 1); }  // 1-based as in the tables
};

// Leading-order rates; requires g1c = g2c, g12 = 0 and delta1 = delta2.
TransitionRates transition_rates(const CircuitParams& params);

}  // namespace pfgate
