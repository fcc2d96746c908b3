#pragma once

#include <span>

#include "qdeco/states.hpp"

namespace qdeco {

/// Monochromatic gas of isotropic s-wave scatterers.
struct ScatteringEnvironment {
  double number_density;  // n0, particles per volume
  double momentum;        // q0, inverse length
  double speed;           // v(q0), length per time
  double amplitude;       // |f0|, length
};

/// 1 - (sin x / x)^2, accurate for small |x|.
double one_minus_sinc_squared(double x);

/// Large-separation limit n0 v |f0|^2 4 pi.
double saturation_rate(const ScatteringEnvironment& env);

/// Decoherence rate between positions dx apart:
///   F(dx) = n0 v |f0|^2 4 pi (1 - sinc^2(q0 dx)).
/// This is the angular double integral of the collisional decoherence rate
/// with a delta-function momentum distribution and constant |f|^2.
double spatial_decoherence_factor(const ScatteringEnvironment& env, double dx);

/// rho(x_i, x_j, t) = rho(x_i, x_j, 0) exp(-F(x_i - x_j) t). `grid` holds the
/// position of every basis state.
DensityMatrix evolve_positional(const DensityMatrix& rho0, std::span<const double> grid,
                                const ScatteringEnvironment& env, double t);

}  // namespace qdeco
