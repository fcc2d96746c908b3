#include "qdeco/measures.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include <Eigen/SVD>

namespace qdeco {

namespace {

void require_cut(const DensityMatrix& rho, const Cut& cut) {
  const std::size_t parts = rho.dims().size();
  if (parts < 2) throw Error(ErrorKind::DimensionMismatch, "bipartite measure needs at least two subsystems");
  if (cut.empty()) throw Error(ErrorKind::DimensionMismatch, "cut is empty");
  std::vector<bool> seen(parts, false);
  for (std::size_t s : cut) {
    if (s >= parts) throw Error(ErrorKind::DimensionMismatch, "cut index out of range");
    seen[s] = true;
  }
  if (std::all_of(seen.begin(), seen.end(), [](bool b) { return b; })) {
    throw Error(ErrorKind::DimensionMismatch, "cut contains every subsystem");
  }
}

}  // namespace

double concurrence(const DensityMatrix& rho) {
  if (rho.dims() != Dims{2, 2}) throw Error(ErrorKind::DimensionMismatch, "concurrence needs dims (2, 2)");
  const ComplexMatrix yy = tensor(pauli_y(), pauli_y());
  // Subnormalized eigenvectors w_i = sqrt(p_i) v_i; the lambdas are the
  // singular values of tau_ij = w_i^T (Y (x) Y) w_j. Taking them from an SVD
  // rather than as square roots of eigenvalues keeps small ones accurate.
  const auto spec = hermitian_spectrum(rho.matrix());
  const RealVector root = spec.eigenvalues.cwiseMax(0.0).cwiseSqrt();
  const ComplexMatrix w = spec.eigenvectors * root.cast<Complex>().asDiagonal();
  const ComplexMatrix tau = w.transpose() * yy * w;
  const Eigen::JacobiSVD<ComplexMatrix> svd(tau);
  const RealVector sv = svd.singularValues();
  std::array<double, 4> l{};
  for (int k = 0; k < 4; ++k) l[static_cast<std::size_t>(k)] = sv(k);
  return std::max(0.0, l[0] - l[1] - l[2] - l[3]);
}

double negativity(const DensityMatrix& rho, const Cut& cut) {
  require_cut(rho, cut);
  const double norm = trace_norm(partial_transpose(rho.matrix(), rho.dims(), cut));
  return std::max(0.0, (norm - 1.0) / 2.0);
}

bool is_ppt(const DensityMatrix& rho, const Cut& cut) {
  require_cut(rho, cut);
  return hermitian_eigenvalues(partial_transpose(rho.matrix(), rho.dims(), cut)).minCoeff() >= -kPsdTolerance;
}

double von_neumann_entropy(const DensityMatrix& rho) {
  const RealVector ev = hermitian_eigenvalues(rho.matrix());
  double s = 0;
  for (Eigen::Index k = 0; k < ev.size(); ++k) {
    if (ev(k) > 0) s -= ev(k) * std::log2(ev(k));
  }
  return std::max(0.0, s);
}

double l1_coherence(const DensityMatrix& rho) {
  return rho.matrix().cwiseAbs().sum() - rho.matrix().diagonal().cwiseAbs().sum();
}

double purity(const DensityMatrix& rho) {
  // tr(rho^2) = sum |rho_ij|^2 for Hermitian rho
  return rho.matrix().cwiseAbs2().sum();
}

ThermalConcurrence thermal_steady_concurrence(const ThermalParams& params) {
  if (!(params.n_bar >= 0.0)) throw Error(ErrorKind::ParamOutOfRange, "n_bar must be non-negative", params.n_bar);
  const double raw = thermal_concurrence_raw(params.omega_bar, params.delta, params.n_bar);
  const double clamped = std::clamp(raw, 0.0, 1.0);
  return {raw, clamped, raw < 0.0 || raw > 1.0};
}

}  // namespace qdeco
