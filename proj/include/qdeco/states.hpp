#pragma once

#include <span>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "qdeco/error.hpp"
#include "qdeco/qmat.hpp"

namespace qdeco {

/// Hermitian, unit-trace, positive semidefinite matrix together with the
/// dimensions of the subsystems it lives on. Values are immutable; the
/// checked constructor is the only way to build one from arbitrary data.
class DensityMatrix {
 public:
  /// Validates every invariant and throws Error naming the first violation.
  DensityMatrix(ComplexMatrix matrix, Dims dims);

  /// Skips validation. For evolution routines that report their own drift
  /// diagnostics instead of refusing to store a slightly-off state.
  static DensityMatrix unchecked(ComplexMatrix matrix, Dims dims);

  const ComplexMatrix& matrix() const noexcept { return matrix_; }
  const Dims& dims() const noexcept { return dims_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(matrix_.rows()); }
  Complex operator()(std::size_t row, std::size_t col) const {
    return matrix_(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
  }

 private:
  struct NoCheck {};
  DensityMatrix(ComplexMatrix matrix, Dims dims, NoCheck);

  ComplexMatrix matrix_;
  Dims dims_;
};

/// Why a candidate failed validation; `magnitude` is the measured offending
/// quantity (max Hermiticity error, trace, minimum eigenvalue, ...).
struct Diagnostic {
  ErrorKind kind;
  double magnitude;
  std::string message;
};

using Validation = std::variant<DensityMatrix, Diagnostic>;

/// Checks dimensions, finiteness, Hermiticity, trace and positivity, in that
/// order, and reports the first failure.
Validation validate(const ComplexMatrix& candidate, const Dims& dims);

/// |psi><psi|. The amplitudes must already be normalized.
DensityMatrix pure_state(const ComplexVector& amplitudes, Dims dims);

enum class BellKind { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

DensityMatrix bell_state(BellKind kind);

/// (|00> + |11> + ... + |d-1,d-1>) / sqrt(d) on a d x d pair.
DensityMatrix maximally_entangled(std::size_t d);

DensityMatrix maximally_mixed(std::size_t dim);

struct MixtureTerm {
  double weight;
  std::vector<DensityMatrix> factors;  // one per subsystem, leftmost first
};

/// sum_i p_i (rho_i^(0) (x) rho_i^(1) (x) ...). Factors may be mixed.
DensityMatrix separable_mixture(std::span<const MixtureTerm> terms);

/// Largest entry modulus of a - b.
double max_entry_difference(const DensityMatrix& a, const DensityMatrix& b);

/// {"dims": [..], "re": [[..]], "im": [[..]]}
nlohmann::json state_to_json(const DensityMatrix& rho);
/// Inverse of state_to_json; throws Error on malformed or invalid states.
DensityMatrix state_from_json(const nlohmann::json& j);

}  // namespace qdeco
