#include "qdeco/states.hpp"

#include <cmath>
#include <sstream>

namespace qdeco {

namespace {

inline constexpr double kNormTolerance = 1e-9;
inline constexpr double kTraceTolerance = 1e-9;
inline constexpr double kWeightTolerance = 1e-12;

std::string describe(double value) {
  std::ostringstream os;
  os.precision(17);
  os << value;
  return os.str();
}

}  // namespace

DensityMatrix::DensityMatrix(ComplexMatrix matrix, Dims dims) {
  auto checked = validate(matrix, dims);
  if (auto* diag = std::get_if<Diagnostic>(&checked)) {
    throw Error(diag->kind, diag->message, diag->magnitude);
  }
  *this = std::get<DensityMatrix>(std::move(checked));
}

DensityMatrix::DensityMatrix(ComplexMatrix matrix, Dims dims, NoCheck)
    : matrix_(std::move(matrix)), dims_(std::move(dims)) {}

DensityMatrix DensityMatrix::unchecked(ComplexMatrix matrix, Dims dims) {
  return DensityMatrix(std::move(matrix), std::move(dims), NoCheck{});
}

Validation validate(const ComplexMatrix& candidate, const Dims& dims) {
  if (candidate.rows() != candidate.cols() || candidate.rows() == 0) {
    return Diagnostic{ErrorKind::DimensionMismatch, static_cast<double>(candidate.rows()),
                      "matrix is not square and non-empty"};
  }
  const auto n = static_cast<std::size_t>(candidate.rows());
  if (dims.empty() || detail::dims_product(dims) != n) {
    return Diagnostic{ErrorKind::DimensionMismatch, static_cast<double>(detail::dims_product(dims)),
                      "product of subsystem dimensions does not equal matrix dimension " + std::to_string(n)};
  }
  if (n > kMaxDimension) {
    return Diagnostic{ErrorKind::CapacityExceeded, static_cast<double>(n), "state dimension too large"};
  }
  if (!candidate.allFinite()) {
    return Diagnostic{ErrorKind::NonFinite, 0.0, "matrix has non-finite entries"};
  }
  const double herm = hermiticity_error(candidate);
  if (herm > kHermitianTolerance) {
    return Diagnostic{ErrorKind::NotHermitian, herm, "max |rho - rho^dagger| = " + describe(herm)};
  }
  const double tr = candidate.trace().real();
  if (std::abs(tr - 1.0) > kTraceTolerance) {
    return Diagnostic{ErrorKind::TraceNotOne, tr, "trace = " + describe(tr)};
  }
  const double min_ev = hermitian_eigenvalues(candidate).minCoeff();
  if (min_ev < -kPsdTolerance) {
    return Diagnostic{ErrorKind::NotPositive, min_ev, "minimum eigenvalue = " + describe(min_ev)};
  }
  return DensityMatrix::unchecked(candidate, dims);
}

DensityMatrix pure_state(const ComplexVector& amplitudes, Dims dims) {
  const auto n = static_cast<std::size_t>(amplitudes.size());
  if (n == 0 || dims.empty() || detail::dims_product(dims) != n) {
    throw Error(ErrorKind::DimensionMismatch, "amplitude count " + std::to_string(n) +
                                                  " does not match subsystem dimensions");
  }
  const double norm = amplitudes.norm();
  if (!std::isfinite(norm) || std::abs(norm - 1.0) > kNormTolerance) {
    throw Error(ErrorKind::NotNormalized, "amplitude norm = " + describe(norm), norm);
  }
  return DensityMatrix(amplitudes * amplitudes.adjoint(), std::move(dims));
}

DensityMatrix bell_state(BellKind kind) {
  const double h = 1.0 / std::sqrt(2.0);
  ComplexVector v = ComplexVector::Zero(4);
  switch (kind) {
    case BellKind::PhiPlus: v(0) = h; v(3) = h; break;
    case BellKind::PhiMinus: v(0) = h; v(3) = -h; break;
    case BellKind::PsiPlus: v(1) = h; v(2) = h; break;
    case BellKind::PsiMinus: v(1) = h; v(2) = -h; break;
  }
  return pure_state(v, {2, 2});
}

DensityMatrix maximally_entangled(std::size_t d) {
  if (d == 0 || d * d > kMaxDimension) throw Error(ErrorKind::DimensionMismatch, "invalid local dimension");
  ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(d * d));
  for (std::size_t k = 0; k < d; ++k) v(static_cast<Eigen::Index>(k * d + k)) = 1.0 / std::sqrt(double(d));
  return pure_state(v, {d, d});
}

DensityMatrix maximally_mixed(std::size_t dim) {
  if (dim == 0 || dim > kMaxDimension) throw Error(ErrorKind::DimensionMismatch, "invalid dimension");
  return DensityMatrix(identity(dim) / static_cast<double>(dim), {dim});
}

DensityMatrix separable_mixture(std::span<const MixtureTerm> terms) {
  if (terms.empty()) throw Error(ErrorKind::WeightsInvalid, "mixture has no terms");
  Dims dims;
  double total = 0;
  for (const auto& term : terms) {
    if (!(term.weight >= 0) || !std::isfinite(term.weight)) {
      throw Error(ErrorKind::WeightsInvalid, "negative or non-finite weight " + describe(term.weight),
                  term.weight);
    }
    total += term.weight;
    Dims term_dims;
    for (const auto& f : term.factors) term_dims.push_back(f.dim());
    if (term_dims.empty()) throw Error(ErrorKind::DimensionMismatch, "mixture term has no factors");
    if (dims.empty()) {
      dims = term_dims;
    } else if (dims != term_dims) {
      throw Error(ErrorKind::DimensionMismatch, "factor dimensions differ between mixture terms");
    }
  }
  if (std::abs(total - 1.0) > kWeightTolerance) {
    throw Error(ErrorKind::WeightsInvalid, "weights sum to " + describe(total), total);
  }
  const std::size_t n = detail::dims_product(dims);
  if (n > kMaxDimension) throw Error(ErrorKind::CapacityExceeded, "mixture dimension too large");

  ComplexMatrix acc = ComplexMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (const auto& term : terms) {
    ComplexMatrix prod = term.factors.front().matrix();
    for (std::size_t k = 1; k < term.factors.size(); ++k) prod = tensor(prod, term.factors[k].matrix());
    acc += term.weight * prod;
  }
  return DensityMatrix(std::move(acc), std::move(dims));
}

double max_entry_difference(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dim() != b.dim()) throw Error(ErrorKind::DimensionMismatch, "states have different dimensions");
  return (a.matrix() - b.matrix()).cwiseAbs().maxCoeff();
}

nlohmann::json state_to_json(const DensityMatrix& rho) {
  nlohmann::json re = nlohmann::json::array();
  nlohmann::json im = nlohmann::json::array();
  const auto& m = rho.matrix();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json re_row = nlohmann::json::array();
    nlohmann::json im_row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      re_row.push_back(m(i, j).real());
      im_row.push_back(m(i, j).imag());
    }
    re.push_back(std::move(re_row));
    im.push_back(std::move(im_row));
  }
  return {{"dims", rho.dims()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

DensityMatrix state_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("dims") || !j.contains("re")) {
    throw Error(ErrorKind::DimensionMismatch, "state object needs \"dims\" and \"re\"");
  }
  for (const auto& [key, value] : j.items()) {
    if (key != "dims" && key != "re" && key != "im") {
      throw Error(ErrorKind::DimensionMismatch, "unknown state key \"" + key + "\"");
    }
  }
  Dims dims;
  for (const auto& d : j.at("dims")) {
    if (!d.is_number_unsigned()) throw Error(ErrorKind::DimensionMismatch, "dims must be positive integers");
    dims.push_back(d.get<std::size_t>());
  }
  const auto& re = j.at("re");
  const std::size_t n = re.size();
  const bool has_im = j.contains("im");
  if (has_im && j.at("im").size() != n) throw Error(ErrorKind::DimensionMismatch, "re/im row count differ");
  ComplexMatrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t r = 0; r < n; ++r) {
    if (!re[r].is_array() || re[r].size() != n || (has_im && j["im"][r].size() != n)) {
      throw Error(ErrorKind::DimensionMismatch, "state matrix must be square");
    }
    for (std::size_t c = 0; c < n; ++c) {
      const double real = re[r][c].get<double>();
      const double imag = has_im ? j["im"][r][c].get<double>() : 0.0;
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = Complex(real, imag);
    }
  }
  return DensityMatrix(std::move(m), std::move(dims));
}

}  // namespace qdeco
