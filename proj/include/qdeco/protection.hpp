#pragma once

#include <map>
#include <string>
#include <vector>

#include "qdeco/channels.hpp"
#include "qdeco/states.hpp"

namespace qdeco {

/// Trace-non-increasing operator set {K}: I - sum K^dagger K is PSD.
/// Applying it is a heralded (post-selected) operation with a success
/// probability.
class SelectiveOperation {
 public:
  using Strengths = std::map<std::string, double>;

  SelectiveOperation(std::vector<ComplexMatrix> operators, Strengths strengths = {});

  const std::vector<ComplexMatrix>& operators() const noexcept { return operators_; }
  std::size_t dim() const noexcept { return dim_; }
  const Strengths& strengths() const noexcept { return strengths_; }

 private:
  std::vector<ComplexMatrix> operators_;
  std::size_t dim_ = 0;
  Strengths strengths_;
};

/// Qutrit weak measurement M = diag(1, sqrt(1-p1), sqrt(1-p2)), 0 <= p < 1.
SelectiveOperation weak_measurement(double p1, double p2);

/// Qutrit measurement reversal R = diag(sqrt((1-q1)(1-q2)), sqrt(1-q2), sqrt(1-q1)),
/// 0 <= q < 1. With q1 = d1 and q2 = d2 it equalizes the three amplitudes
/// left by the no-jump branch of correlated amplitude damping.
SelectiveOperation qmr(double q1, double q2);

inline constexpr double kZeroProbability = 1e-14;

struct SelectiveOutcome {
  DensityMatrix state;
  double probability;
};

/// (sum K rho K^dagger / s, s) with s the trace of the numerator.
SelectiveOutcome apply_selective(const SelectiveOperation& op, const DensityMatrix& rho);
SelectiveOutcome apply_selective_to_subsystem(const SelectiveOperation& op, const DensityMatrix& rho,
                                              std::size_t target);

enum class Scheme { None, WmQmr, EamQmr };
enum class Sides { Both, First, Second };

std::string_view to_string(Scheme scheme);

struct ProtectionStrengths {
  double p1 = 0;  // weak measurement (wm_qmr only)
  double p2 = 0;
  double q1 = 0;  // reversal
  double q2 = 0;
};

struct ProtectionReport {
  Scheme scheme;
  double negativity;
  double success_probability;
  ProtectionStrengths strengths;
  DensityMatrix state;  // normalized output, negativity recomputable from it
};

/// Runs one pipeline on a two-qutrit state:
///   none    : CAD(d1, d2) on each selected qutrit
///   wm_qmr  : WM, CAD, QMR on each selected qutrit, then renormalize
///   eam_qmr : CAD post-selected on its E0 (no-jump) branch, QMR, renormalize
/// The success probability is the trace of the unnormalized final matrix.
ProtectionReport run_scheme(Scheme scheme, const DensityMatrix& rho0, double d1, double d2,
                            const ProtectionStrengths& strengths, Sides sides = Sides::Both);

struct QmrOptimum {
  ProtectionStrengths strengths;
  ProtectionReport report;
  std::vector<ProtectionReport> grid;  // every grid evaluation, q1-major order
};

/// Grid search q1, q2 in {0, 0.05, ..., 0.95} and step-halving refinement to
/// 1e-3. Maximizes negativity; ties go to larger success probability, then to
/// the lexicographically smallest (q1, q2). p1/p2 of `fixed` are kept as-is.
QmrOptimum optimize_qmr(Scheme scheme, const DensityMatrix& rho0, double d1, double d2,
                        const ProtectionStrengths& fixed = {}, Sides sides = Sides::Both);

}  // namespace qdeco
