#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "qdeco/states.hpp"

namespace qdeco {

enum class EntanglementMeasure { Concurrence, Negativity };

double measure_entanglement(EntanglementMeasure measure, const DensityMatrix& rho);

struct EsdOptions {
  std::size_t scan_points = 64;
  double zero_threshold = 1e-9;  // values at or below count as dead
  double tolerance = 1e-7;       // final bracket width
};

struct EsdResult {
  std::optional<double> threshold;  // first parameter where the measure reaches zero
  std::vector<double> scan_parameters;
  std::vector<double> scan_values;  // kept for revival analysis past the first death
};

/// Coarse uniform scan of `value_at` over [lo, hi], then bisection on the
/// first bracket where the value drops to the zero threshold. Later revivals
/// are ignored. Throws NotEntangledAtStart when value_at(lo) is already zero.
EsdResult find_first_zero(const std::function<double(double)>& value_at, double lo, double hi,
                          const EsdOptions& options = {});

/// find_first_zero over measure(family(parameter)).
EsdResult find_esd(const std::function<DensityMatrix(double)>& family, EntanglementMeasure measure, double lo,
                   double hi, const EsdOptions& options = {});

}  // namespace qdeco
