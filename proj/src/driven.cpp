#include "pfgate/driven.hpp"

#include <cmath>

#include "pfgate/errors.hpp"

namespace pfgate {

Eigen::Matrix2cd pauli_matrix(Pauli p) {
  using C = std::complex<double>;
  Eigen::Matrix2cd m;
  switch (p) {
    case Pauli::I: m << 1, 0, 0, 1; break;
    case Pauli::X: m << 0, 1, 1, 0; break;
    case Pauli::Y: m << 0, C(0, -1), C(0, 1), 0; break;
    case Pauli::Z: m << 1, 0, 0, -1; break;
  }
  return m;
}

namespace {
Eigen::Matrix4cd kron(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
  Eigen::Matrix4cd k;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) k.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return k;
}
}  // namespace

Eigen::Matrix4cd PauliCoefficients::reconstruct() const {
  Eigen::Matrix4cd h = Eigen::Matrix4cd::Zero();
  for (int p = 0; p < 4; ++p)
    for (int q = 0; q < 4; ++q)
      h += c[p][q] * kron(pauli_matrix(static_cast<Pauli>(p)), pauli_matrix(static_cast<Pauli>(q)));
  return h;
}

PauliCoefficients PauliCoefficients::from_matrix(const Eigen::Matrix4cd& h) {
  PauliCoefficients out;
  for (int p = 0; p < 4; ++p)
    for (int q = 0; q < 4; ++q) {
      const auto pq = kron(pauli_matrix(static_cast<Pauli>(p)), pauli_matrix(static_cast<Pauli>(q)));
      out.c[p][q] = 0.25 * (pq * h).trace().real();
    }
  return out;
}

LaResult la_block_diagonalize(const RealMatrix& h, const HilbertSpace& space,
                              const std::vector<std::vector<BasisLabel>>& partition) {
  const int n = space.size();
  std::vector<int> block_of(n, -1);
  for (std::size_t k = 0; k < partition.size(); ++k)
    for (const auto& l : partition[k]) {
      const int i = space.index(l);
      if (block_of[i] >= 0) throw InvalidArgument("la: label " + l.str() + " in two blocks");
      block_of[i] = static_cast<int>(k);
    }
  for (int i = 0; i < n; ++i)
    if (block_of[i] < 0) throw InvalidArgument("la: partition does not cover " + space.label(i).str());

  const DressedSpectrum s = diagonalize_and_label(h, space);
  const RealMatrix& v = s.eigenvectors();
  LaResult res;
  res.transform = RealMatrix::Zero(n, n);
  for (const auto& blk : partition) {
    const int m = static_cast<int>(blk.size());
    std::vector<int> rows(m), cols(m);
    for (int a = 0; a < m; ++a) {
      rows[a] = space.index(blk[a]);
      cols[a] = s.eigen_index(blk[a]);
    }
    RealMatrix vk(n, m), overlap(m, m);
    for (int a = 0; a < m; ++a) vk.col(a) = v.col(cols[a]);
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) overlap(a, b) = vk(rows[a], b);
    Eigen::JacobiSVD<RealMatrix> svd(overlap, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const RealVector& sv = svd.singularValues();
    if (sv(m - 1) < 1e-8 * std::max(1.0, sv(0)))
      throw HybridizationTooStrong("la: overlap block is rank deficient");
    const RealMatrix u = svd.matrixU() * svd.matrixV().transpose();
    const RealMatrix tk = vk * u.transpose();
    for (int a = 0; a < m; ++a) res.transform.col(rows[a]) = tk.col(a);
  }
  res.block_diagonal = res.transform.transpose() * h * res.transform;
  res.unitarity_error =
      (res.transform.transpose() * res.transform - RealMatrix::Identity(n, n)).cwiseAbs().maxCoeff();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (block_of[i] != block_of[j])
        res.off_block = std::max(res.off_block, std::abs(res.block_diagonal(i, j)));
  return res;
}

std::vector<std::vector<BasisLabel>> computational_partition(const HilbertSpace& space) {
  std::vector<BasisLabel> comp(kComputational.begin(), kComputational.end()), rest;
  for (int i = 0; i < space.size(); ++i) {
    const BasisLabel l = space.label(i);
    if (!(l.coupler == 0 && l.q1 <= 1 && l.q2 <= 1)) rest.push_back(l);
  }
  return {comp, rest};
}

DrivenPoint driven_point(const DrivenModel& model, double omega) {
  const HilbertSpace space = model.params().space();
  const LaResult la =
      la_block_diagonalize(model.hamiltonian(omega), space, computational_partition(space));
  DrivenPoint out;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      out.effective(a, b) =
          la.block_diagonal(space.index(kComputational[a]), space.index(kComputational[b]));
  out.pauli = PauliCoefficients::from_matrix(out.effective.cast<std::complex<double>>());
  out.unitarity_error = la.unitarity_error;
  out.off_block = la.off_block;
  return out;
}

PauliCoefficients effective_pauli_coefficients(const CircuitParams& params, const DriveSpec& drive) {
  DrivenModel model(params, drive.driven, drive.frequency);
  return driven_point(model, drive.amplitude).pauli;
}

double dynamic_zz(const CircuitParams& params, const DriveSpec& drive) {
  DrivenModel model(params, drive.driven, drive.frequency);
  return driven_point(model, drive.amplitude).pauli.zeta() - driven_point(model, 0.0).pauli.zeta();
}

TransitionRates transition_rates(const CircuitParams& p) {
  const auto close = [](double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)); };
  if (!close(p.g1c, p.g2c) || p.g12 != 0.0 || !close(p.q1.anharmonicity, p.q2.anharmonicity))
    throw UnsupportedParameters("transition rates need g1c = g2c, g12 = 0, delta1 = delta2");
  const double g = p.g1c, d = p.q1.anharmonicity, dc = p.coupler.anharmonicity;
  const double d12 = p.delta12(), d1 = p.detuning1(), d2 = p.detuning2();
  const double r2 = std::sqrt(2.0);
  for (double den : {d12, d1, d2, d12 + d, d12 - d, d1 + d, d2 + d, d2 - dc, d1 - dc})
    if (std::abs(den) < 1e-12) throw SingularPoint("transition rates: resonant denominator");

  TransitionRates t;
  auto& l = t.lambda;
  l[0] = -g * g * d / (2.0 * d12 * d2 * (d12 + d));
  l[1] = -g * d / (2.0 * d1 * (d1 + d));
  l[2] = -r2 * g * g * d / (d12 * (d12 - d) * (d2 + d));
  l[3] = -g / (2.0 * d1);
  l[4] = -g * g * d / (r2 * d12 * d2 * (d12 + d));
  l[5] = g * d / (r2 * d1 * (d1 + d));
  l[6] = -g * g * (d2 + dc) / (2.0 * d12 * d2 * (d2 - dc));
  l[7] = -g / (r2 * (d1 - dc));
  l[8] = -g * d / (r2 * d1 * (d1 + d));
  l[9] = g * g / (d2 * (d12 + d));
  l[10] = -g * g * d / (d12 * (d12 - d) * (d2 + d));
  return t;
}

}  // namespace pfgate
