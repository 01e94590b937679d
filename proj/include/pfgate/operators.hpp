#pragma once

#include <array>
#include <string>

#include <Eigen/Dense>

namespace pfgate {

using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

enum class Mode : int { Q1 = 0, Coupler = 1, Q2 = 2 };

const char* mode_name(Mode mode);

// Frequencies in GHz (linear, i.e. omega / 2pi).
struct ModeSpec {
  double frequency = 0.0;
  double anharmonicity = 0.0;
  int levels = 3;

  void validate() const;
  double energy(int n) const { return n * frequency + 0.5 * n * (n - 1) * anharmonicity; }
};

struct BasisLabel {
  int q1 = 0;
  int coupler = 0;
  int q2 = 0;

  int excitations() const { return q1 + coupler + q2; }
  int operator[](Mode m) const;
  std::string str() const;
  friend bool operator==(const BasisLabel&, const BasisLabel&) = default;
};

// Three-mode space in the fixed (Q1, C, Q2) order; flat index (n1*dc + nc)*d2 + n2.
class HilbertSpace {
 public:
  HilbertSpace() : HilbertSpace({3, 3, 3}) {}
  explicit HilbertSpace(std::array<int, 3> dims);

  int dim(Mode m) const { return dims_[static_cast<int>(m)]; }
  const std::array<int, 3>& dims() const { return dims_; }
  int size() const { return dims_[0] * dims_[1] * dims_[2]; }

  bool contains(const BasisLabel& l) const;
  int index(const BasisLabel& l) const;
  BasisLabel label(int index) const;

  friend bool operator==(const HilbertSpace&, const HilbertSpace&) = default;

 private:
  std::array<int, 3> dims_;
};

RealMatrix destroy(int dim);
RealMatrix embed(const RealMatrix& op, Mode mode, const HilbertSpace& space);
RealMatrix duffing_hamiltonian(const ModeSpec& mode);

// Total excitation number n1 + nc + n2 for every flat index.
RealVector excitation_numbers(const HilbertSpace& space);

}  // namespace pfgate
