#include "qdeco/dynamics/spatial.hpp"

#include <cmath>
#include <numbers>

namespace qdeco {

namespace {

void require_environment(const ScatteringEnvironment& env) {
  for (double v : {env.number_density, env.momentum, env.speed, env.amplitude}) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw Error(ErrorKind::ParamOutOfRange, "scattering environment fields must be finite and >= 0", v);
    }
  }
}

}  // namespace

double one_minus_sinc_squared(double x) {
  const double x2 = x * x;
  if (std::abs(x) < 1e-2) {
    // x^2/3 - 2x^4/45 + x^6/315 - 2x^8/14175
    return x2 * (1.0 / 3.0 + x2 * (-2.0 / 45.0 + x2 * (1.0 / 315.0 - x2 * 2.0 / 14175.0)));
  }
  const double s = std::sin(x) / x;
  return 1.0 - s * s;
}

double saturation_rate(const ScatteringEnvironment& env) {
  require_environment(env);
  return env.number_density * env.speed * env.amplitude * env.amplitude * 4.0 * std::numbers::pi;
}

double spatial_decoherence_factor(const ScatteringEnvironment& env, double dx) {
  if (!std::isfinite(dx)) throw Error(ErrorKind::NonFinite, "separation must be finite");
  return saturation_rate(env) * one_minus_sinc_squared(env.momentum * dx);
}

DensityMatrix evolve_positional(const DensityMatrix& rho0, std::span<const double> grid,
                                const ScatteringEnvironment& env, double t) {
  if (grid.size() != rho0.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "position grid size does not match state dimension");
  }
  if (!(t >= 0.0) || !std::isfinite(t)) throw Error(ErrorKind::ParamOutOfRange, "time must be >= 0", t);
  ComplexMatrix out = rho0.matrix();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (std::size_t j = 0; j < grid.size(); ++j) {
      if (i == j) continue;
      const double rate = spatial_decoherence_factor(env, grid[i] - grid[j]);
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) *= std::exp(-rate * t);
    }
  }
  return DensityMatrix(std::move(out), rho0.dims());
}

}  // namespace qdeco
