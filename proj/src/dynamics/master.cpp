#include "qdeco/dynamics/master.hpp"

#include <algorithm>
#include <cmath>

#include "qdeco/io.hpp"

namespace qdeco {

TimeFunction constant(double value) {
  return [value](double) { return value; };
}

TimeFunction piecewise(std::vector<double> breaks, std::vector<double> values) {
  if (values.size() != breaks.size() + 1) {
    throw Error(ErrorKind::DimensionMismatch, "piecewise needs one more value than breakpoints");
  }
  if (!std::is_sorted(breaks.begin(), breaks.end())) {
    throw Error(ErrorKind::ParamOutOfRange, "piecewise breakpoints must be ascending");
  }
  return [breaks = std::move(breaks), values = std::move(values)](double t) {
    const auto k = std::upper_bound(breaks.begin(), breaks.end(), t) - breaks.begin();
    return values[static_cast<std::size_t>(k)];
  };
}

TimeFunction tabulated(std::vector<double> times, std::vector<double> values) {
  if (times.empty() || times.size() != values.size()) {
    throw Error(ErrorKind::DimensionMismatch, "tabulated function needs equal, non-empty series");
  }
  if (std::adjacent_find(times.begin(), times.end(), std::greater_equal<>()) != times.end()) {
    throw Error(ErrorKind::ParamOutOfRange, "tabulated times must be strictly ascending");
  }
  return [times = std::move(times), values = std::move(values)](double t) {
    if (t <= times.front()) return values.front();
    if (t >= times.back()) return values.back();
    const auto hi = static_cast<std::size_t>(std::upper_bound(times.begin(), times.end(), t) - times.begin());
    const std::size_t lo = hi - 1;
    const double w = (t - times[lo]) / (times[hi] - times[lo]);
    return (1.0 - w) * values[lo] + w * values[hi];
  };
}

LindbladModel qubit_decay_model(TimeFunction shift, TimeFunction rate) {
  ComplexMatrix lowering = ComplexMatrix::Zero(2, 2);
  lowering(0, 1) = 1.0;
  return {std::move(shift), std::move(rate), std::move(lowering)};
}

LindbladModel lift_model(const LindbladModel& model, const Dims& dims, std::size_t target) {
  return {model.shift, model.rate, lift(model.lowering, dims, target)};
}

ComplexMatrix master_rhs(const LindbladModel& model, double t, const ComplexMatrix& rho) {
  const ComplexMatrix& lo = model.lowering;
  const ComplexMatrix up = lo.adjoint();
  const ComplexMatrix number = up * lo;
  const Complex i(0.0, 1.0);
  const ComplexMatrix number_rho = number * rho;
  const ComplexMatrix rho_number = rho * number;
  return -i * model.shift(t) * (number_rho - rho_number) +
         model.rate(t) * (2.0 * lo * rho * up - number_rho - rho_number);
}

Trajectory evolve_master(const LindbladModel& model, const DensityMatrix& rho0, double t_end, double dt,
                         const MasterOptions& options) {
  if (!model.shift || !model.rate) throw Error(ErrorKind::ParamOutOfRange, "model functions are unset");
  if (model.lowering.rows() != model.lowering.cols() || model.dim() != rho0.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "jump operator dimension does not match the state");
  }
  if (!(dt > 0.0) || !std::isfinite(dt)) throw Error(ErrorKind::StepTooLarge, "dt must be positive", dt);
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw Error(ErrorKind::ParamOutOfRange, "t_end must be >= 0", t_end);

  const auto steps = static_cast<std::size_t>(std::max(0.0, std::ceil(t_end / dt - 1e-9)));
  const double h = steps == 0 ? 0.0 : t_end / static_cast<double>(steps);

  // Stability guard over every stage time before any work is done.
  for (std::size_t k = 0; k < steps; ++k) {
    const double t = static_cast<double>(k) * h;
    for (double ts : {t, t + h / 2, t + h}) {
      const double g = model.rate(ts);
      const double s = model.shift(ts);
      if (!std::isfinite(g) || !std::isfinite(s)) {
        throw Error(ErrorKind::NonFinite, "S(t) or gamma(t) not finite at t = " + format_number(ts));
      }
      if (h * std::abs(g) > options.stability_limit) {
        throw Error(ErrorKind::StepTooLarge,
                    "dt * |gamma| = " + format_number(h * std::abs(g)) + " at t = " + format_number(ts),
                    h * std::abs(g));
      }
    }
  }

  Trajectory traj;
  std::vector<std::string> names;
  if (options.record_observables) {
    names = default_observables(rho0.dims());
    for (const auto& name : names) traj.observables.emplace_back(name, std::vector<double>{});
  }
  const std::size_t every = std::max<std::size_t>(1, options.sample_every);

  auto record = [&](double t, const ComplexMatrix& rho) {
    DensityMatrix state = DensityMatrix::unchecked(rho, rho0.dims());
    const double min_ev = hermitian_eigenvalues(rho).minCoeff();
    if (min_ev < -options.positivity_tolerance) {
      traj.diagnostics.push_back("t=" + format_number(t) + ": minimum eigenvalue " + format_number(min_ev));
    }
    traj.times.push_back(t);
    for (std::size_t k = 0; k < names.size(); ++k) {
      traj.observables[k].second.push_back(evaluate_observable(names[k], state));
    }
    traj.states.push_back(std::move(state));
  };

  ComplexMatrix rho = rho0.matrix();
  record(0.0, rho);
  for (std::size_t k = 0; k < steps; ++k) {
    const double t = static_cast<double>(k) * h;
    const ComplexMatrix k1 = master_rhs(model, t, rho);
    const ComplexMatrix k2 = master_rhs(model, t + h / 2, rho + (h / 2) * k1);
    const ComplexMatrix k3 = master_rhs(model, t + h / 2, rho + (h / 2) * k2);
    const ComplexMatrix k4 = master_rhs(model, t + h, rho + h * k3);
    rho += (h / 6) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

    const double drift = std::abs(rho.trace() - 1.0);
    if (drift > options.trace_tolerance) {
      throw Error(ErrorKind::TraceDrift, "trace drift " + format_number(drift) + " at t = " + format_number(t + h),
                  drift);
    }
    const bool last = k + 1 == steps;
    if (last || (k + 1) % every == 0) record(last ? t_end : t + h, rho);
  }
  return traj;
}

}  // namespace qdeco
