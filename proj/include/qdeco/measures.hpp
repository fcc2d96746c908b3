#pragma once

#include <cmath>
#include <vector>

#include "qdeco/states.hpp"

namespace qdeco {

/// Subsystems on one side of a bipartition; these are the ones transposed.
using Cut = std::vector<std::size_t>;

/// Wootters concurrence of a two-qubit state:
/// max(0, l1 - l2 - l3 - l4), l_i the descending square roots of the
/// eigenvalues of rho (Y (x) Y) rho^* (Y (x) Y).
double concurrence(const DensityMatrix& rho);

/// (||rho^{T_cut}||_1 - 1) / 2
double negativity(const DensityMatrix& rho, const Cut& cut = {0});

/// Positive partial transpose test with the global PSD tolerance. For 2x2
/// and 2x3 systems this decides separability exactly; in larger systems a
/// true result does not imply separability.
bool is_ppt(const DensityMatrix& rho, const Cut& cut = {0});

/// -sum l log2 l, in bits.
double von_neumann_entropy(const DensityMatrix& rho);

/// sum_{i != j} |rho_ij|
double l1_coherence(const DensityMatrix& rho);

/// tr(rho^2)
double purity(const DensityMatrix& rho);

struct ThermalParams {
  double omega_bar;  // normalized energy difference
  double delta;      // interaction anisotropy
  double n_bar;      // mean thermal excitation, >= 0
};

struct ThermalConcurrence {
  double raw;
  double clamped;     // raw limited to [0, 1]
  bool out_of_range;  // raw was outside [0, 1]
};

/// Finite-temperature steady-state concurrence, evaluated exactly as printed:
///
///   C = 2 sqrt(D^2 A) / (u A) - 1/2 + A / (2 u^2 A),
///   u = 1 + 2 n,  A = 4 w^2 + u^2.
///
/// The printed form is not bounded by 1 (it gives sqrt(2) at w = 0.5, D = 1,
/// n = 0), so callers get both the raw value and a clamped one with a flag.
template <typename Real>
Real thermal_concurrence_raw(Real omega_bar, Real delta, Real n_bar) {
  using std::sqrt;
  const Real u = Real(1) + Real(2) * n_bar;
  const Real a = Real(4) * omega_bar * omega_bar + u * u;
  return Real(2) * sqrt(delta * delta * a) / (u * a) - Real(1) / Real(2) + a / (Real(2) * u * u * a);
}

ThermalConcurrence thermal_steady_concurrence(const ThermalParams& params);

}  // namespace qdeco
