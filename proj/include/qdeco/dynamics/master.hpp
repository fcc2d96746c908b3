#pragma once

#include <functional>
#include <vector>

#include "qdeco/dynamics/trajectory.hpp"

namespace qdeco {

/// Real function of time, e.g. a frequency shift or a decay rate.
using TimeFunction = std::function<double(double)>;

TimeFunction constant(double value);

/// Value `values[k]` on [breaks[k-1], breaks[k]); `values` has one more entry
/// than `breaks` (the first value holds before breaks[0]).
TimeFunction piecewise(std::vector<double> breaks, std::vector<double> values);

/// Linear interpolation through (times[k], values[k]); held constant outside.
TimeFunction tabulated(std::vector<double> times, std::vector<double> values);

/// Generator
///   d rho/dt = -i S(t) [s+ s-, rho] + g(t) (2 s- rho s+ - s+ s- rho - rho s+ s-)
/// with s+ = s-^dagger. The factor-two convention gives excited population
/// e^{-2 g t} for constant g.
struct LindbladModel {
  TimeFunction shift;
  TimeFunction rate;
  ComplexMatrix lowering;

  std::size_t dim() const noexcept { return static_cast<std::size_t>(lowering.rows()); }
  ComplexMatrix raising() const { return lowering.adjoint(); }
};

/// Qubit model with s- = |0><1| (|0> is the ground state).
LindbladModel qubit_decay_model(TimeFunction shift, TimeFunction rate);

/// Same model acting on one subsystem of a composite state.
LindbladModel lift_model(const LindbladModel& model, const Dims& dims, std::size_t target);

/// Right-hand side of the generator at time t.
ComplexMatrix master_rhs(const LindbladModel& model, double t, const ComplexMatrix& rho);

struct MasterOptions {
  std::size_t sample_every = 1;     // record every n-th step (t = 0 and t_end always kept)
  double stability_limit = 0.1;     // max allowed dt * |gamma|
  double trace_tolerance = 1e-8;    // |tr rho - 1| beyond this aborts with TraceDrift
  double positivity_tolerance = 1e-8;
  bool record_observables = true;
};

/// Classic fixed-step fourth-order Runge-Kutta from 0 to t_end. The step is
/// dt, shortened uniformly so that an integer number of steps lands on t_end.
/// States are never renormalized; trace drift beyond tolerance throws, and
/// negative eigenvalues (possible with negative rates) become diagnostics.
Trajectory evolve_master(const LindbladModel& model, const DensityMatrix& rho0, double t_end, double dt,
                         const MasterOptions& options = {});

}  // namespace qdeco
