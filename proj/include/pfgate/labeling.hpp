#pragma once

#include <array>
#include <vector>

#include "pfgate/operators.hpp"

namespace pfgate {

// Computational states in the order 00, 01, 10, 11 (Q1 first), coupler in ground.
inline constexpr std::array<BasisLabel, 4> kComputational = {
    BasisLabel{0, 0, 0}, BasisLabel{0, 0, 1}, BasisLabel{1, 0, 0}, BasisLabel{1, 0, 1}};

// Eigen-decomposition of a real symmetric Hamiltonian with each eigenvector tied to the
// bare product state it overlaps most.
class DressedSpectrum {
 public:
  DressedSpectrum() = default;
  DressedSpectrum(HilbertSpace space, RealVector eigenvalues, RealMatrix eigenvectors,
                  std::vector<int> eigen_of_label);

  const HilbertSpace& space() const { return space_; }
  const RealVector& eigenvalues() const { return eigenvalues_; }
  const RealMatrix& eigenvectors() const { return eigenvectors_; }

  int eigen_index(const BasisLabel& l) const { return eigen_of_label_[space_.index(l)]; }
  double energy(const BasisLabel& l) const { return eigenvalues_(eigen_index(l)); }
  double overlap(const BasisLabel& l) const { return overlaps_(space_.index(l)); }

  // Labeled dressed energies, indexed by bare flat index.
  const RealVector& energies() const { return energies_; }
  // Column n is the dressed state labeled n, signed so that <n|n~> > 0.
  const RealMatrix& states() const { return states_; }

  // True when a computational overlap is at or below 0.5.
  bool strongly_hybridized() const { return hybridized_; }

 private:
  HilbertSpace space_;
  RealVector eigenvalues_;
  RealMatrix eigenvectors_;
  std::vector<int> eigen_of_label_;
  RealVector overlaps_;
  RealVector energies_;
  RealMatrix states_;
  bool hybridized_ = false;
};

// Greedy assignment: bare labels visited in ascending bare energy, each takes the free
// eigenvector of largest overlap. Returns eigen index per bare flat index. Throws
// AmbiguousLabeling when two free eigenvectors tie (gap < 1e-6) and are degenerate.
std::vector<int> assign_labels(const RealVector& eigenvalues, const RealMatrix& eigenvectors,
                               const RealVector& bare_energies);

DressedSpectrum diagonalize_and_label(const RealMatrix& h, const HilbertSpace& space);

// Zeta from the four labeled computational energies: E11 - E10 - E01 + E00.
double zz_from_spectrum(const DressedSpectrum& s);

}  // namespace pfgate
