#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "qdeco/states.hpp"

namespace qdeco {

/// Sampled evolution: times, states and named observable series of equal
/// length. `diagnostics` collects non-fatal integrator findings such as
/// positivity loss under negative decay rates.
struct Trajectory {
  std::vector<double> times;
  std::vector<DensityMatrix> states;
  std::vector<std::pair<std::string, std::vector<double>>> observables;
  std::vector<std::string> diagnostics;

  /// Throws std::out_of_range for unknown names.
  const std::vector<double>& observable(const std::string& name) const;
};

/// Observables recorded for a state with the given dims: purity and
/// coherence always, negativity for multipartite states and concurrence for
/// two qubits.
std::vector<std::string> default_observables(const Dims& dims);

double evaluate_observable(const std::string& name, const DensityMatrix& rho);

/// Header `t,<obs1>,<obs2>,...`; numbers in shortest round-trip form.
void write_csv(const Trajectory& trajectory, std::ostream& out);

}  // namespace qdeco
