#pragma once

#include <span>
#include <vector>

#include "qdeco/states.hpp"

namespace qdeco {

/// Charged oscillator coupled to a single quantized field mode in the
/// rotating-wave approximation:
///
///   H = w_c a^dag a (x) I + I (x) w b^dag b + beta (a^dag (x) b + a (x) b^dag)
///
/// Each mode is truncated to Fock levels 0..n_max; the oscillator is
/// subsystem 0 and the field mode subsystem 1.
struct EMOscillatorModel {
  double omega_c;  // oscillator frequency
  double omega;    // field-mode frequency
  double beta;     // coupling
  std::size_t n_max = 3;
};

/// Truncated annihilation operator on Fock levels 0..n_max.
ComplexMatrix annihilation(std::size_t n_max);

ComplexMatrix em_hamiltonian(const EMOscillatorModel& model);

/// |1>_osc (x) |0>_field
ComplexVector em_initial_state(const EMOscillatorModel& model);

/// Largest population of the top Fock level of either mode.
double top_level_population(const ComplexVector& psi, std::size_t n_max);

inline constexpr double kTruncationLeakTolerance = 1e-6;

struct EmSweepResult {
  std::vector<double> detunings;  // w_c - w
  std::vector<double> times;
  std::vector<std::vector<double>> negativity;  // [detuning][time]
  std::vector<std::vector<double>> excitation;  // <a^dag a + b^dag b>, [detuning][time]
  std::vector<double> max_negativity;
  std::vector<double> time_of_max;
  std::vector<double> mean_negativity;

  /// Index of the detuning with the largest max_negativity (first on ties).
  std::size_t best_index() const;
};

/// For every detuning, sets w_c = base.omega + detuning, evolves the fixed
/// initial state exactly with exp(-i H t) and records oscillator/field
/// negativity and excitation number on `times`. Throws TruncationLeak when
/// the top Fock level of either mode carries more than 1e-6 population, so
/// n_max = 1 always leaks for the single-excitation initial state.
EmSweepResult em_resonance_sweep(const EMOscillatorModel& base, std::span<const double> detunings,
                                 std::span<const double> times);

}  // namespace qdeco
