#include "qdeco/protection.hpp"

#include <cmath>

#include "qdeco/measures.hpp"

namespace qdeco {

namespace {

constexpr double kTieTolerance = 1e-12;

void require_strength(const char* name, double value) {
  if (!(value >= 0.0 && value < 1.0)) {
    throw Error(ErrorKind::ParamOutOfRange, std::string(name) + " must lie in [0, 1)", value);
  }
}

ComplexMatrix diagonal3(double a, double b, double c) {
  ComplexMatrix m = ComplexMatrix::Zero(3, 3);
  m(0, 0) = a;
  m(1, 1) = b;
  m(2, 2) = c;
  return m;
}

std::vector<std::size_t> targets_for(Sides sides) {
  switch (sides) {
    case Sides::Both: return {0, 1};
    case Sides::First: return {0};
    case Sides::Second: return {1};
  }
  return {};
}

ComplexMatrix apply_local(std::span<const ComplexMatrix> ops, ComplexMatrix m, const Dims& dims,
                          const std::vector<std::size_t>& targets) {
  for (std::size_t target : targets) {
    std::vector<ComplexMatrix> lifted;
    lifted.reserve(ops.size());
    for (const auto& op : ops) lifted.push_back(lift(op, dims, target));
    m = operator_sum(lifted, m);
  }
  return m;
}

SelectiveOutcome normalize(ComplexMatrix unnormalized, const Dims& dims) {
  const double s = unnormalized.trace().real();
  if (!(s > kZeroProbability)) throw Error(ErrorKind::ZeroProbability, "post-selection probability vanished", s);
  return {DensityMatrix(unnormalized / s, dims), s};
}

// Strict ordering used by the optimizer: is `a` preferred over `b`?
bool preferred(const ProtectionReport& a, const ProtectionReport& b) {
  if (a.negativity > b.negativity + kTieTolerance) return true;
  if (b.negativity > a.negativity + kTieTolerance) return false;
  if (a.success_probability > b.success_probability + kTieTolerance) return true;
  if (b.success_probability > a.success_probability + kTieTolerance) return false;
  if (a.strengths.q1 != b.strengths.q1) return a.strengths.q1 < b.strengths.q1;
  return a.strengths.q2 < b.strengths.q2;
}

}  // namespace

SelectiveOperation::SelectiveOperation(std::vector<ComplexMatrix> operators, Strengths strengths)
    : operators_(std::move(operators)), strengths_(std::move(strengths)) {
  if (operators_.empty()) throw Error(ErrorKind::DimensionMismatch, "selective operation has no operators");
  dim_ = static_cast<std::size_t>(operators_.front().rows());
  ComplexMatrix gap = identity(dim_);
  for (const auto& op : operators_) {
    if (op.rows() != op.cols() || static_cast<std::size_t>(op.rows()) != dim_) {
      throw Error(ErrorKind::DimensionMismatch, "operators must be square with equal dimension");
    }
    gap -= op.adjoint() * op;
  }
  const double min_ev = hermitian_eigenvalues(gap).minCoeff();
  if (min_ev < -kPsdTolerance) {
    throw Error(ErrorKind::NotTraceNonIncreasing, "I - sum K^dagger K has a negative eigenvalue", min_ev);
  }
}

SelectiveOperation weak_measurement(double p1, double p2) {
  require_strength("p1", p1);
  require_strength("p2", p2);
  return SelectiveOperation({diagonal3(1.0, std::sqrt(1.0 - p1), std::sqrt(1.0 - p2))}, {{"p1", p1}, {"p2", p2}});
}

SelectiveOperation qmr(double q1, double q2) {
  require_strength("q1", q1);
  require_strength("q2", q2);
  return SelectiveOperation({diagonal3(std::sqrt((1.0 - q1) * (1.0 - q2)), std::sqrt(1.0 - q2), std::sqrt(1.0 - q1))},
                            {{"q1", q1}, {"q2", q2}});
}

SelectiveOutcome apply_selective(const SelectiveOperation& op, const DensityMatrix& rho) {
  if (op.dim() != rho.dim()) throw Error(ErrorKind::DimensionMismatch, "operation does not match state dimension");
  return normalize(operator_sum(op.operators(), rho.matrix()), rho.dims());
}

SelectiveOutcome apply_selective_to_subsystem(const SelectiveOperation& op, const DensityMatrix& rho,
                                              std::size_t target) {
  return normalize(apply_local(op.operators(), rho.matrix(), rho.dims(), {target}), rho.dims());
}

std::string_view to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::None: return "none";
    case Scheme::WmQmr: return "wm_qmr";
    case Scheme::EamQmr: return "eam_qmr";
  }
  return "unknown";
}

ProtectionReport run_scheme(Scheme scheme, const DensityMatrix& rho0, double d1, double d2,
                            const ProtectionStrengths& strengths, Sides sides) {
  if (rho0.dims() != Dims{3, 3}) throw Error(ErrorKind::DimensionMismatch, "protection schemes need a two-qutrit state");
  const KrausChannel cad = correlated_amplitude_damping(d1, d2);
  const auto targets = targets_for(sides);
  const Dims& dims = rho0.dims();

  if (scheme == Scheme::None) {
    DensityMatrix out(apply_local(cad.operators(), rho0.matrix(), dims, targets), dims);
    const double n = negativity(out);
    return {scheme, n, 1.0, strengths, std::move(out)};
  }

  const SelectiveOperation reversal = qmr(strengths.q1, strengths.q2);
  ComplexMatrix m = rho0.matrix();
  if (scheme == Scheme::WmQmr) {
    const SelectiveOperation wm = weak_measurement(strengths.p1, strengths.p2);
    m = apply_local(wm.operators(), m, dims, targets);
    m = apply_local(cad.operators(), m, dims, targets);
  } else {
    const std::vector<ComplexMatrix> no_jump{cad.operators().front()};
    m = apply_local(no_jump, m, dims, targets);
  }
  m = apply_local(reversal.operators(), m, dims, targets);
  auto outcome = normalize(std::move(m), dims);
  const double n = negativity(outcome.state);
  return {scheme, n, outcome.probability, strengths, std::move(outcome.state)};
}

QmrOptimum optimize_qmr(Scheme scheme, const DensityMatrix& rho0, double d1, double d2,
                        const ProtectionStrengths& fixed, Sides sides) {
  auto evaluate = [&](double q1, double q2) {
    ProtectionStrengths s = fixed;
    s.q1 = q1;
    s.q2 = q2;
    return run_scheme(scheme, rho0, d1, d2, s, sides);
  };

  if (scheme == Scheme::None) {
    auto report = evaluate(0.0, 0.0);
    return {report.strengths, report, {}};
  }

  std::vector<ProtectionReport> grid;
  constexpr int kGrid = 20;
  for (int i = 0; i < kGrid; ++i) {
    for (int j = 0; j < kGrid; ++j) grid.push_back(evaluate(i / 20.0, j / 20.0));
  }
  std::size_t best = 0;
  for (std::size_t k = 1; k < grid.size(); ++k) {
    if (preferred(grid[k], grid[best])) best = k;
  }
  ProtectionReport current = grid[best];

  // Compass refinement around the incumbent; halve the step when no
  // neighbour improves, stop once the step is below 1e-3.
  for (double step = 0.025;; step /= 2) {
    bool moved = true;
    while (moved) {
      moved = false;
      for (int a = -1; a <= 1; ++a) {
        for (int b = -1; b <= 1; ++b) {
          if (a == 0 && b == 0) continue;
          const double q1 = current.strengths.q1 + a * step;
          const double q2 = current.strengths.q2 + b * step;
          if (q1 < 0.0 || q1 >= 1.0 || q2 < 0.0 || q2 >= 1.0) continue;
          auto candidate = evaluate(q1, q2);
          if (preferred(candidate, current)) {
            current = std::move(candidate);
            moved = true;
          }
        }
      }
    }
    if (step <= 1e-3) break;
  }
  return {current.strengths, current, std::move(grid)};
}

}  // namespace qdeco
