#include "qdeco/dynamics/esd.hpp"

#include <cmath>

#include "qdeco/measures.hpp"

namespace qdeco {

double measure_entanglement(EntanglementMeasure measure, const DensityMatrix& rho) {
  switch (measure) {
    case EntanglementMeasure::Concurrence: return concurrence(rho);
    case EntanglementMeasure::Negativity: return negativity(rho);
  }
  return 0.0;
}

EsdResult find_first_zero(const std::function<double(double)>& value_at, double lo, double hi,
                          const EsdOptions& options) {
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw Error(ErrorKind::ParamOutOfRange, "interval must satisfy lo < hi");
  }
  if (options.scan_points < 2) throw Error(ErrorKind::ParamOutOfRange, "scan needs at least two points");

  EsdResult out;
  const auto n = options.scan_points;
  for (std::size_t k = 0; k < n; ++k) {
    const double p = k + 1 == n ? hi : lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n - 1);
    out.scan_parameters.push_back(p);
    out.scan_values.push_back(value_at(p));
  }
  if (!(out.scan_values.front() > options.zero_threshold)) {
    throw Error(ErrorKind::NotEntangledAtStart, "measure is already zero at the interval start",
                out.scan_values.front());
  }

  std::size_t first_dead = 0;
  for (std::size_t k = 1; k < n && first_dead == 0; ++k) {
    if (out.scan_values[k] <= options.zero_threshold) first_dead = k;
  }
  if (first_dead == 0) return out;

  double alive = out.scan_parameters[first_dead - 1];
  double dead = out.scan_parameters[first_dead];
  while (dead - alive > options.tolerance) {
    const double mid = alive + (dead - alive) / 2;
    if (value_at(mid) <= options.zero_threshold) {
      dead = mid;
    } else {
      alive = mid;
    }
  }
  out.threshold = dead;
  return out;
}

EsdResult find_esd(const std::function<DensityMatrix(double)>& family, EntanglementMeasure measure, double lo,
                   double hi, const EsdOptions& options) {
  return find_first_zero([&](double p) { return measure_entanglement(measure, family(p)); }, lo, hi, options);
}

}  // namespace qdeco
