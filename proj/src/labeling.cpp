#include "pfgate/labeling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pfgate/errors.hpp"

namespace pfgate {

namespace {
constexpr double kTieGap = 1e-6;
constexpr double kDegenerate = 1e-9;
}  // namespace

DressedSpectrum::DressedSpectrum(HilbertSpace space, RealVector eigenvalues,
                                 RealMatrix eigenvectors, std::vector<int> eigen_of_label)
    : space_(space),
      eigenvalues_(std::move(eigenvalues)),
      eigenvectors_(std::move(eigenvectors)),
      eigen_of_label_(std::move(eigen_of_label)) {
  const int n = space_.size();
  overlaps_.resize(n);
  energies_.resize(n);
  states_.resize(n, n);
  for (int i = 0; i < n; ++i) {
    const int k = eigen_of_label_[i];
    const double c = eigenvectors_(i, k);
    overlaps_(i) = c * c;
    energies_(i) = eigenvalues_(k);
    states_.col(i) = c < 0.0 ? RealVector(-eigenvectors_.col(k)) : RealVector(eigenvectors_.col(k));
  }
  for (const auto& l : kComputational)
    if (space_.contains(l) && overlap(l) <= 0.5 + 1e-9) hybridized_ = true;
}

std::vector<int> assign_labels(const RealVector& eigenvalues, const RealMatrix& eigenvectors,
                               const RealVector& bare_energies) {
  const int n = static_cast<int>(bare_energies.size());
  if (eigenvectors.rows() != n || eigenvectors.cols() != n || eigenvalues.size() != n)
    throw InvalidArgument("assign_labels: dimension mismatch");

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return bare_energies(a) < bare_energies(b); });

  std::vector<int> result(n, -1);
  std::vector<bool> taken(n, false);
  for (int label : order) {
    int best = -1, second = -1;
    double best_ov = -1.0, second_ov = -1.0;
    for (int k = 0; k < n; ++k) {
      if (taken[k]) continue;
      const double ov = eigenvectors(label, k) * eigenvectors(label, k);
      if (ov > best_ov) {
        second = best;
        second_ov = best_ov;
        best = k;
        best_ov = ov;
      } else if (ov > second_ov) {
        second = k;
        second_ov = ov;
      }
    }
    if (second >= 0 && best_ov - second_ov < kTieGap && best_ov > kTieGap) {
      const double scale = std::max(1.0, std::abs(eigenvalues(best)));
      if (std::abs(eigenvalues(best) - eigenvalues(second)) < kDegenerate * scale)
        throw AmbiguousLabeling("degenerate dressed states compete for bare label index " +
                                std::to_string(label));
    }
    result[label] = best;
    taken[best] = true;
  }
  return result;
}

DressedSpectrum diagonalize_and_label(const RealMatrix& h, const HilbertSpace& space) {
  if (h.rows() != space.size() || h.cols() != space.size())
    throw InvalidArgument("diagonalize_and_label: matrix does not match space");
  if ((h - h.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, h.cwiseAbs().maxCoeff()))
    throw InvalidArgument("diagonalize_and_label: matrix is not symmetric");
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(h);
  if (es.info() != Eigen::Success) throw ConvergenceError("eigensolver failed");
  RealVector bare = h.diagonal();
  auto labels = assign_labels(es.eigenvalues(), es.eigenvectors(), bare);
  return DressedSpectrum(space, es.eigenvalues(), es.eigenvectors(), std::move(labels));
}

double zz_from_spectrum(const DressedSpectrum& s) {
  return s.energy({1, 0, 1}) - s.energy({1, 0, 0}) - s.energy({0, 0, 1}) + s.energy({0, 0, 0});
}

}  // namespace pfgate
