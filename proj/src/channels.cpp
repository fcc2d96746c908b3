#include "qdeco/channels.hpp"

#include <cmath>

namespace qdeco {

namespace {

void require_probability(const char* name, double value) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw Error(ErrorKind::ParamOutOfRange, std::string(name) + " must lie in [0, 1]", value);
  }
}

ComplexMatrix zeros(std::size_t n) {
  return ComplexMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
}

}  // namespace

KrausChannel::KrausChannel(std::string label, std::vector<ComplexMatrix> operators, Params params)
    : label_(std::move(label)), operators_(std::move(operators)), params_(std::move(params)) {
  if (operators_.empty()) throw Error(ErrorKind::DimensionMismatch, "channel has no operators");
  dim_ = static_cast<std::size_t>(operators_.front().rows());
  for (const auto& op : operators_) {
    if (op.rows() != op.cols() || static_cast<std::size_t>(op.rows()) != dim_) {
      throw Error(ErrorKind::DimensionMismatch, "Kraus operators must be square with equal dimension");
    }
  }
  const double err = completeness_error(operators_);
  if (!(err <= kCompletenessTolerance)) {
    throw Error(ErrorKind::NotTracePreserving, "sum E^dagger E deviates from identity", err);
  }
}

double completeness_error(std::span<const ComplexMatrix> operators) {
  if (operators.empty()) return 1.0;
  const auto n = static_cast<std::size_t>(operators.front().rows());
  ComplexMatrix sum = zeros(n);
  for (const auto& op : operators) sum.noalias() += op.adjoint() * op;
  return (sum - identity(n)).cwiseAbs().maxCoeff();
}

KrausChannel identity_channel(std::size_t dim) {
  return KrausChannel("identity", {identity(dim)});
}

KrausChannel amplitude_damping(double gamma) {
  require_probability("gamma", gamma);
  ComplexMatrix e0 = zeros(2);
  e0(0, 0) = 1.0;
  e0(1, 1) = std::sqrt(1.0 - gamma);
  ComplexMatrix e1 = zeros(2);
  e1(0, 1) = std::sqrt(gamma);
  return KrausChannel("amplitude-damping", {e0, e1}, {{"gamma", gamma}});
}

KrausChannel phase_damping(double lambda) {
  require_probability("lambda", lambda);
  ComplexMatrix e0 = zeros(2);
  e0(0, 0) = 1.0;
  e0(1, 1) = std::sqrt(1.0 - lambda);
  ComplexMatrix e1 = zeros(2);
  e1(1, 1) = std::sqrt(lambda);
  return KrausChannel("phase-damping", {e0, e1}, {{"lambda", lambda}});
}

KrausChannel depolarizing(double p) {
  require_probability("p", p);
  const double a = std::sqrt(1.0 - p);
  const double b = std::sqrt(p / 3.0);
  return KrausChannel("depolarizing", {a * identity(2), b * pauli_x(), b * pauli_y(), b * pauli_z()},
                      {{"p", p}});
}

KrausChannel correlated_amplitude_damping(double d1, double d2) {
  require_probability("d1", d1);
  require_probability("d2", d2);
  ComplexMatrix e0 = zeros(3);
  e0(0, 0) = 1.0;
  e0(1, 1) = std::sqrt(1.0 - d1);
  e0(2, 2) = std::sqrt(1.0 - d2);
  ComplexMatrix e1 = zeros(3);
  e1(0, 1) = std::sqrt(d1);
  ComplexMatrix e2 = zeros(3);
  e2(0, 2) = std::sqrt(d2);
  return KrausChannel("cad", {e0, e1, e2}, {{"d1", d1}, {"d2", d2}});
}

ComplexMatrix operator_sum(std::span<const ComplexMatrix> operators, const ComplexMatrix& rho) {
  ComplexMatrix out = ComplexMatrix::Zero(rho.rows(), rho.cols());
  for (const auto& op : operators) out.noalias() += op * rho * op.adjoint();
  return out;
}

DensityMatrix apply(const KrausChannel& channel, const DensityMatrix& rho) {
  if (channel.dim() != rho.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "channel dimension " + std::to_string(channel.dim()) +
                                                  " does not match state dimension " +
                                                  std::to_string(rho.dim()));
  }
  return DensityMatrix(operator_sum(channel.operators(), rho.matrix()), rho.dims());
}

DensityMatrix apply_to_subsystem(const KrausChannel& channel, const DensityMatrix& rho, std::size_t target) {
  std::vector<ComplexMatrix> lifted;
  lifted.reserve(channel.operators().size());
  for (const auto& op : channel.operators()) lifted.push_back(lift(op, rho.dims(), target));
  return DensityMatrix(operator_sum(lifted, rho.matrix()), rho.dims());
}

KrausChannel compose(const KrausChannel& first, const KrausChannel& second) {
  if (first.dim() != second.dim()) throw Error(ErrorKind::DimensionMismatch, "composed channels differ in dimension");
  std::vector<ComplexMatrix> ops;
  ops.reserve(first.operators().size() * second.operators().size());
  for (const auto& f : second.operators()) {
    for (const auto& e : first.operators()) ops.push_back(f * e);
  }
  KrausChannel::Params params;
  for (const auto& [k, v] : first.params()) params["first." + k] = v;
  for (const auto& [k, v] : second.params()) params["second." + k] = v;
  return KrausChannel(second.label() + "*" + first.label(), std::move(ops), std::move(params));
}

}  // namespace qdeco
