#include "qdeco/dynamics/collision.hpp"

#include <cmath>

namespace qdeco {

namespace {

constexpr double kUnitaryTolerance = 1e-10;

Complex int_power(Complex base, std::size_t k) {
  Complex out(1.0, 0.0);
  while (k > 0) {
    if (k & 1U) out *= base;
    base *= base;
    k >>= 1U;
  }
  return out;
}

}  // namespace

CollisionModel::CollisionModel(std::vector<ComplexMatrix> branches, ComplexVector env_in, ComplexMatrix pointer_basis)
    : branches_(std::move(branches)), env_in_(std::move(env_in)), pointer_basis_(std::move(pointer_basis)) {
  if (branches_.empty()) throw Error(ErrorKind::DimensionMismatch, "collision model needs at least one branch");
  const auto env = env_in_.size();
  if (env == 0) throw Error(ErrorKind::DimensionMismatch, "environment state is empty");
  for (std::size_t n = 0; n < branches_.size(); ++n) {
    const auto& s = branches_[n];
    if (s.rows() != env || s.cols() != env) {
      throw Error(ErrorKind::DimensionMismatch, "branch " + std::to_string(n) + " does not act on the environment");
    }
    const double err = unitarity_error(s);
    if (!(err <= kUnitaryTolerance)) {
      throw Error(ErrorKind::NotUnitary, "branch " + std::to_string(n) + " is not unitary", err);
    }
  }
  const double norm = env_in_.norm();
  if (!(std::abs(norm - 1.0) <= 1e-9)) throw Error(ErrorKind::NotNormalized, "environment state norm", norm);

  if (pointer_basis_.size() == 0) {
    pointer_basis_ = identity(branches_.size());
  } else {
    if (static_cast<std::size_t>(pointer_basis_.rows()) != branches_.size() ||
        pointer_basis_.rows() != pointer_basis_.cols()) {
      throw Error(ErrorKind::DimensionMismatch, "pointer basis must be square with one column per branch");
    }
    const double err = unitarity_error(pointer_basis_);
    if (!(err <= kUnitaryTolerance)) throw Error(ErrorKind::NotUnitary, "pointer basis is not orthonormal", err);
  }
}

ComplexVector CollisionModel::outgoing(std::size_t n) const {
  return branches_.at(n) * env_in_;
}

Complex collision_factor(const CollisionModel& model, std::size_t m, std::size_t n) {
  if (m >= model.system_dim() || n >= model.system_dim()) {
    throw Error(ErrorKind::DimensionMismatch, "pointer index out of range");
  }
  if (m == n) return {1.0, 0.0};
  return model.outgoing(n).dot(model.outgoing(m));  // conjugates the first argument
}

DensityMatrix collision_apply(const CollisionModel& model, const DensityMatrix& rho, std::size_t k) {
  const std::size_t n = model.system_dim();
  if (rho.dim() != n) {
    throw Error(ErrorKind::DimensionMismatch, "state dimension " + std::to_string(rho.dim()) +
                                                  " does not match " + std::to_string(n) + " pointer states");
  }
  const ComplexMatrix& basis = model.pointer_basis();
  const bool computational = basis.isIdentity(0.0);
  ComplexMatrix pointer = computational ? rho.matrix() : ComplexMatrix(basis.adjoint() * rho.matrix() * basis);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b) continue;
      pointer(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) *= int_power(collision_factor(model, a, b), k);
    }
  }
  ComplexMatrix out = computational ? pointer : ComplexMatrix(basis * pointer * basis.adjoint());
  return DensityMatrix(std::move(out), rho.dims());
}

}  // namespace qdeco
