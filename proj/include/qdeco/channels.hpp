#pragma once

#include <map>
#include <string>
#include <vector>

#include "qdeco/qmat.hpp"
#include "qdeco/states.hpp"

namespace qdeco {

/// Trace-preserving operator-sum map rho -> sum_i E_i rho E_i^dagger.
///
/// Construction checks that all operators are square with equal dimension and
/// that sum_i E_i^dagger E_i = I to 1e-12. Parameters are probabilities; rate
/// to probability conversion belongs to the dynamics layer.
class KrausChannel {
 public:
  using Params = std::map<std::string, double>;

  KrausChannel(std::string label, std::vector<ComplexMatrix> operators, Params params = {});

  const std::vector<ComplexMatrix>& operators() const noexcept { return operators_; }
  std::size_t dim() const noexcept { return dim_; }
  const std::string& label() const noexcept { return label_; }
  const Params& params() const noexcept { return params_; }

 private:
  std::string label_;
  std::vector<ComplexMatrix> operators_;
  std::size_t dim_ = 0;
  Params params_;
};

inline constexpr double kCompletenessTolerance = 1e-12;

/// max |sum_i E_i^dagger E_i - I|
double completeness_error(std::span<const ComplexMatrix> operators);

KrausChannel identity_channel(std::size_t dim);

/// E0 = diag(1, sqrt(1-gamma)), E1 = sqrt(gamma) |0><1|.
KrausChannel amplitude_damping(double gamma);

/// E0 = diag(1, sqrt(1-lambda)), E1 = diag(0, sqrt(lambda)).
KrausChannel phase_damping(double lambda);

/// {sqrt(1-p) I, sqrt(p/3) X, sqrt(p/3) Y, sqrt(p/3) Z}.
KrausChannel depolarizing(double p);

/// Qutrit correlated amplitude damping:
/// E0 = diag(1, sqrt(1-d1), sqrt(1-d2)), E1 = sqrt(d1) |0><1|, E2 = sqrt(d2) |0><2|.
KrausChannel correlated_amplitude_damping(double d1, double d2);

DensityMatrix apply(const KrausChannel& channel, const DensityMatrix& rho);

/// Lifts every operator to I (x) ... (x) E_i (x) ... (x) I on `target`.
DensityMatrix apply_to_subsystem(const KrausChannel& channel, const DensityMatrix& rho, std::size_t target);

/// `first` then `second`: operators {F_j E_i}, no pruning.
KrausChannel compose(const KrausChannel& first, const KrausChannel& second);

/// Raw operator sum without re-validation; shared with the protection layer,
/// which also feeds trace-decreasing operator sets through it.
ComplexMatrix operator_sum(std::span<const ComplexMatrix> operators, const ComplexMatrix& rho);

}  // namespace qdeco
