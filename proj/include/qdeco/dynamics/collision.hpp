#pragma once

#include <vector>

#include "qdeco/states.hpp"

namespace qdeco {

/// Non-invasive scattering: S_tot = sum_n |n><n| (x) S_n. Each collision
/// with a fresh environment particle in |psi_in> multiplies the pointer-basis
/// coherence rho_mn by <psi_in| S_n^dagger S_m |psi_in>.
class CollisionModel {
 public:
  /// `pointer_basis` columns are the orthonormal pointer states |n>; an empty
  /// matrix selects the computational basis. Throws NotUnitary for any branch
  /// (or basis) that is not unitary to 1e-10 and NotNormalized for env_in.
  CollisionModel(std::vector<ComplexMatrix> branches, ComplexVector env_in, ComplexMatrix pointer_basis = {});

  std::size_t system_dim() const noexcept { return branches_.size(); }
  std::size_t env_dim() const noexcept { return static_cast<std::size_t>(env_in_.size()); }
  const std::vector<ComplexMatrix>& branches() const noexcept { return branches_; }
  const ComplexVector& env_in() const noexcept { return env_in_; }
  const ComplexMatrix& pointer_basis() const noexcept { return pointer_basis_; }

  /// S_n |psi_in>
  ComplexVector outgoing(std::size_t n) const;

 private:
  std::vector<ComplexMatrix> branches_;
  ComplexVector env_in_;
  ComplexMatrix pointer_basis_;
};

/// <psi_out^(n) | psi_out^(m)> = <psi_in| S_n^dagger S_m |psi_in>; modulus <= 1.
Complex collision_factor(const CollisionModel& model, std::size_t m, std::size_t n);

/// Reduced system state after k collisions. Populations in the pointer basis
/// are untouched.
DensityMatrix collision_apply(const CollisionModel& model, const DensityMatrix& rho, std::size_t k);

}  // namespace qdeco
