#pragma once

// Dense complex linear algebra on small Hilbert spaces.
//
// Subsystem convention: the leftmost tensor factor is subsystem 0 and is the
// most significant digit of a basis index, so |i0 i1 ... i_{n-1}> has flat
// index ((i0 * d1 + i1) * d2 + ...) .

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qdeco/error.hpp"

namespace qdeco {

template <typename Real>
using CMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
template <typename Real>
using CVector = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;
template <typename Real>
using RVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

using ComplexMatrix = CMatrix<double>;
using ComplexVector = CVector<double>;
using RealVector = RVector<double>;
using Complex = std::complex<double>;

/// Subsystem dimensions, leftmost factor first.
using Dims = std::vector<std::size_t>;

inline constexpr std::size_t kMaxDimension = 1024;
/// Largest |M - M^dagger| entry accepted as Hermitian.
inline constexpr double kHermitianTolerance = 1e-9;
/// Smallest eigenvalue accepted as positive semidefinite.
inline constexpr double kPsdTolerance = 1e-10;

template <typename Real>
struct SpectrumResult {
  RVector<Real> eigenvalues;  // descending
  CMatrix<Real> eigenvectors;  // column k belongs to eigenvalues[k]
};

namespace detail {

template <typename Derived>
using RealOf = typename Eigen::NumTraits<typename Derived::Scalar>::Real;

inline std::size_t dims_product(const Dims& dims) {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
}

inline void require_dims(std::size_t n, const Dims& dims) {
  if (dims.empty() || std::find(dims.begin(), dims.end(), std::size_t{0}) != dims.end()) {
    throw Error(ErrorKind::DimensionMismatch, "subsystem dimensions must be non-empty and positive");
  }
  if (dims_product(dims) != n) {
    throw Error(ErrorKind::DimensionMismatch,
                "product of subsystem dimensions (" + std::to_string(dims_product(dims)) +
                    ") does not match matrix dimension " + std::to_string(n));
  }
}

template <typename Derived>
void require_square(const Eigen::MatrixBase<Derived>& m) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "matrix is not square (" + std::to_string(m.rows()) +
                                                  "x" + std::to_string(m.cols()) + ")");
  }
}

// Row-major strides of a multi-index, leftmost factor most significant.
inline std::vector<std::size_t> strides_of(const Dims& dims) {
  std::vector<std::size_t> strides(dims.size(), 1);
  for (std::size_t k = dims.size(); k-- > 1;) strides[k - 1] = strides[k] * dims[k];
  return strides;
}

}  // namespace detail

template <typename Derived>
auto dagger(const Eigen::MatrixBase<Derived>& m) {
  return m.adjoint();
}

/// Largest entry modulus of |M - M^dagger|.
template <typename Derived>
detail::RealOf<Derived> hermiticity_error(const Eigen::MatrixBase<Derived>& m) {
  detail::require_square(m);
  if (m.size() == 0) return 0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& m, double tol = kHermitianTolerance) {
  return m.rows() == m.cols() && hermiticity_error(m) <= tol;
}

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& m) {
  return m.allFinite();
}

template <typename Real = double>
CMatrix<Real> identity(std::size_t n) {
  return CMatrix<Real>::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
}

/// Computational basis vector |index> in dimension dim.
template <typename Real = double>
CVector<Real> basis_ket(std::size_t index, std::size_t dim) {
  if (index >= dim) throw Error(ErrorKind::DimensionMismatch, "basis index out of range");
  CVector<Real> v = CVector<Real>::Zero(static_cast<Eigen::Index>(dim));
  v(static_cast<Eigen::Index>(index)) = 1;
  return v;
}

template <typename Real = double>
CMatrix<Real> pauli_x() {
  CMatrix<Real> m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

template <typename Real = double>
CMatrix<Real> pauli_y() {
  using C = std::complex<Real>;
  CMatrix<Real> m(2, 2);
  m << C(0, 0), C(0, -1), C(0, 1), C(0, 0);
  return m;
}

template <typename Real = double>
CMatrix<Real> pauli_z() {
  CMatrix<Real> m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

/// Kronecker product a (x) b; entry ((i,k),(j,l)) = a(i,j) * b(k,l).
template <typename DA, typename DB>
CMatrix<detail::RealOf<DA>> tensor(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  const Eigen::Index rows = a.rows() * b.rows();
  const Eigen::Index cols = a.cols() * b.cols();
  if (static_cast<std::size_t>(rows) > kMaxDimension || static_cast<std::size_t>(cols) > kMaxDimension) {
    throw Error(ErrorKind::CapacityExceeded,
                "tensor product dimension " + std::to_string(rows) + "x" + std::to_string(cols) +
                    " exceeds " + std::to_string(kMaxDimension));
  }
  CMatrix<detail::RealOf<DA>> out(rows, cols);
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

/// Folds tensor() over a list, left to right.
template <typename Real>
CMatrix<Real> tensor_all(std::span<const CMatrix<Real>> factors) {
  if (factors.empty()) return identity<Real>(1);
  CMatrix<Real> out = factors.front();
  for (std::size_t k = 1; k < factors.size(); ++k) out = tensor(out, factors[k]);
  return out;
}

/// Embeds a single-subsystem operator as I (x) ... (x) op (x) ... (x) I.
template <typename Derived>
CMatrix<detail::RealOf<Derived>> lift(const Eigen::MatrixBase<Derived>& op, const Dims& dims,
                                      std::size_t target) {
  using Real = detail::RealOf<Derived>;
  if (target >= dims.size()) {
    throw Error(ErrorKind::DimensionMismatch, "target subsystem " + std::to_string(target) +
                                                  " out of range for " + std::to_string(dims.size()) +
                                                  " subsystems");
  }
  if (static_cast<std::size_t>(op.rows()) != dims[target] || op.rows() != op.cols()) {
    throw Error(ErrorKind::DimensionMismatch,
                "operator dimension " + std::to_string(op.rows()) + " does not match subsystem " +
                    std::to_string(target) + " of dimension " + std::to_string(dims[target]));
  }
  std::size_t left = 1;
  std::size_t right = 1;
  for (std::size_t k = 0; k < target; ++k) left *= dims[k];
  for (std::size_t k = target + 1; k < dims.size(); ++k) right *= dims[k];
  return tensor(tensor(identity<Real>(left), op), identity<Real>(right));
}

/// Reduced operator on the subsystems listed in `keep` (ascending order in the
/// result); every other subsystem is traced out.
template <typename Derived>
CMatrix<detail::RealOf<Derived>> partial_trace(const Eigen::MatrixBase<Derived>& m, const Dims& dims,
                                               std::vector<std::size_t> keep) {
  using Real = detail::RealOf<Derived>;
  detail::require_square(m);
  detail::require_dims(static_cast<std::size_t>(m.rows()), dims);
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  if (keep.empty()) throw Error(ErrorKind::DimensionMismatch, "partial_trace needs at least one kept subsystem");
  if (keep.back() >= dims.size()) {
    throw Error(ErrorKind::DimensionMismatch, "kept subsystem index out of range");
  }

  std::vector<bool> kept(dims.size(), false);
  for (std::size_t k : keep) kept[k] = true;
  const auto strides = detail::strides_of(dims);

  // Flat offsets contributed by each kept / traced multi-index.
  auto offsets = [&](bool want_kept) {
    std::vector<std::size_t> out{0};
    for (std::size_t s = 0; s < dims.size(); ++s) {
      if (kept[s] != want_kept) continue;
      std::vector<std::size_t> next;
      next.reserve(out.size() * dims[s]);
      for (std::size_t base : out) {
        for (std::size_t d = 0; d < dims[s]; ++d) next.push_back(base + d * strides[s]);
      }
      out = std::move(next);
    }
    return out;
  };
  const auto kept_off = offsets(true);
  const auto traced_off = offsets(false);

  const auto n = static_cast<Eigen::Index>(kept_off.size());
  CMatrix<Real> out = CMatrix<Real>::Zero(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      std::complex<Real> acc = 0;
      for (std::size_t t : traced_off) {
        acc += m(static_cast<Eigen::Index>(kept_off[r] + t), static_cast<Eigen::Index>(kept_off[c] + t));
      }
      out(r, c) = acc;
    }
  }
  return out;
}

/// Transposes the indices of one subsystem.
template <typename Derived>
CMatrix<detail::RealOf<Derived>> partial_transpose(const Eigen::MatrixBase<Derived>& m, const Dims& dims,
                                                   std::size_t subsystem) {
  using Real = detail::RealOf<Derived>;
  detail::require_square(m);
  detail::require_dims(static_cast<std::size_t>(m.rows()), dims);
  if (subsystem >= dims.size()) {
    throw Error(ErrorKind::DimensionMismatch, "partial_transpose subsystem " + std::to_string(subsystem) +
                                                  " out of range for " + std::to_string(dims.size()) +
                                                  " subsystems");
  }
  const std::size_t stride = detail::strides_of(dims)[subsystem];
  const std::size_t d = dims[subsystem];
  const auto n = m.rows();
  CMatrix<Real> out(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const std::size_t di = (static_cast<std::size_t>(i) / stride) % d;
    for (Eigen::Index j = 0; j < n; ++j) {
      const std::size_t dj = (static_cast<std::size_t>(j) / stride) % d;
      // swap the subsystem digit between row and column index
      const auto src_i = static_cast<Eigen::Index>(static_cast<std::size_t>(i) + (dj - di) * stride);
      const auto src_j = static_cast<Eigen::Index>(static_cast<std::size_t>(j) + (di - dj) * stride);
      out(i, j) = m(src_i, src_j);
    }
  }
  return out;
}

/// Transposes every listed subsystem.
template <typename Derived>
CMatrix<detail::RealOf<Derived>> partial_transpose(const Eigen::MatrixBase<Derived>& m, const Dims& dims,
                                                   const std::vector<std::size_t>& subsystems) {
  CMatrix<detail::RealOf<Derived>> out = m;
  for (std::size_t s : subsystems) out = partial_transpose(out, dims, s);
  return out;
}

/// Eigen-decomposition of a Hermitian matrix, eigenvalues in descending order.
template <typename Derived>
SpectrumResult<detail::RealOf<Derived>> hermitian_spectrum(const Eigen::MatrixBase<Derived>& m) {
  using Real = detail::RealOf<Derived>;
  using ColMajor = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
  detail::require_square(m);
  if (!m.allFinite()) throw Error(ErrorKind::NonFinite, "matrix has non-finite entries");
  const Real herm = hermiticity_error(m);
  if (herm > Real(kHermitianTolerance)) {
    throw Error(ErrorKind::NotHermitian, "max |M - M^dagger| exceeds tolerance", static_cast<double>(herm));
  }
  // Symmetrize so the solver sees an exactly Hermitian input.
  const ColMajor sym = (m + m.adjoint()) / Real(2);
  Eigen::SelfAdjointEigenSolver<ColMajor> solver(sym);
  const Eigen::Index n = sym.rows();
  SpectrumResult<Real> out{RVector<Real>(n), CMatrix<Real>(n, n)};
  for (Eigen::Index k = 0; k < n; ++k) {
    out.eigenvalues(k) = solver.eigenvalues()(n - 1 - k);
    out.eigenvectors.col(k) = solver.eigenvectors().col(n - 1 - k);
  }
  return out;
}

template <typename Derived>
RVector<detail::RealOf<Derived>> hermitian_eigenvalues(const Eigen::MatrixBase<Derived>& m) {
  return hermitian_spectrum(m).eigenvalues;
}

/// Sum of absolute eigenvalues of a Hermitian matrix.
template <typename Derived>
detail::RealOf<Derived> trace_norm(const Eigen::MatrixBase<Derived>& m) {
  return hermitian_eigenvalues(m).cwiseAbs().sum();
}

/// exp(-i h t) through the spectral decomposition of h.
template <typename Derived>
CMatrix<detail::RealOf<Derived>> unitary_exp(const Eigen::MatrixBase<Derived>& h, detail::RealOf<Derived> t) {
  using Real = detail::RealOf<Derived>;
  const auto spec = hermitian_spectrum(h);
  CVector<Real> phases(spec.eigenvalues.size());
  for (Eigen::Index k = 0; k < phases.size(); ++k) {
    phases(k) = std::polar(Real(1), -spec.eigenvalues(k) * t);
  }
  return spec.eigenvectors * phases.asDiagonal() * spec.eigenvectors.adjoint();
}

/// Largest entry modulus of |U^dagger U - I|.
template <typename Derived>
detail::RealOf<Derived> unitarity_error(const Eigen::MatrixBase<Derived>& u) {
  detail::require_square(u);
  using Real = detail::RealOf<Derived>;
  const CMatrix<Real> g = u.adjoint() * u;
  return (g - identity<Real>(static_cast<std::size_t>(u.rows()))).cwiseAbs().maxCoeff();
}

}  // namespace qdeco
