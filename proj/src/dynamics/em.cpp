#include "qdeco/dynamics/em.hpp"

#include <algorithm>
#include <cmath>

#include "qdeco/measures.hpp"

namespace qdeco {

namespace {

void require_model(const EMOscillatorModel& model) {
  if (model.n_max < 1) throw Error(ErrorKind::ParamOutOfRange, "n_max must be >= 1");
  if ((model.n_max + 1) * (model.n_max + 1) > kMaxDimension) {
    throw Error(ErrorKind::CapacityExceeded, "truncated two-mode space too large");
  }
  if (!(model.beta > 0.0) || !std::isfinite(model.beta)) {
    throw Error(ErrorKind::ParamOutOfRange, "coupling beta must be positive", model.beta);
  }
  if (!std::isfinite(model.omega) || !std::isfinite(model.omega_c)) {
    throw Error(ErrorKind::NonFinite, "mode frequencies must be finite");
  }
}

}  // namespace

ComplexMatrix annihilation(std::size_t n_max) {
  const auto n = static_cast<Eigen::Index>(n_max + 1);
  ComplexMatrix a = ComplexMatrix::Zero(n, n);
  for (Eigen::Index k = 1; k < n; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
  return a;
}

ComplexMatrix em_hamiltonian(const EMOscillatorModel& model) {
  require_model(model);
  const ComplexMatrix a = annihilation(model.n_max);
  const ComplexMatrix ad = a.adjoint();
  const ComplexMatrix id = identity(model.n_max + 1);
  const ComplexMatrix num = ad * a;
  return model.omega_c * tensor(num, id) + model.omega * tensor(id, num) +
         model.beta * (tensor(ad, a) + tensor(a, ad));
}

ComplexVector em_initial_state(const EMOscillatorModel& model) {
  require_model(model);
  return tensor(basis_ket(1, model.n_max + 1), basis_ket(0, model.n_max + 1)).col(0);
}

double top_level_population(const ComplexVector& psi, std::size_t n_max) {
  const std::size_t d = n_max + 1;
  double osc = 0;
  double field = 0;
  for (std::size_t k = 0; k < d; ++k) {
    osc += std::norm(psi(static_cast<Eigen::Index>(n_max * d + k)));
    field += std::norm(psi(static_cast<Eigen::Index>(k * d + n_max)));
  }
  return std::max(osc, field);
}

std::size_t EmSweepResult::best_index() const {
  const auto it = std::max_element(max_negativity.begin(), max_negativity.end());
  return static_cast<std::size_t>(it - max_negativity.begin());
}

EmSweepResult em_resonance_sweep(const EMOscillatorModel& base, std::span<const double> detunings,
                                 std::span<const double> times) {
  require_model(base);
  EmSweepResult out;
  out.detunings.assign(detunings.begin(), detunings.end());
  out.times.assign(times.begin(), times.end());

  const std::size_t d = base.n_max + 1;
  const Dims dims{d, d};
  const ComplexMatrix a = annihilation(base.n_max);
  const ComplexMatrix num = a.adjoint() * a;
  const ComplexMatrix total_number = tensor(num, identity(d)) + tensor(identity(d), num);

  for (double detuning : detunings) {
    EMOscillatorModel model = base;
    model.omega_c = base.omega + detuning;
    const auto spec = hermitian_spectrum(em_hamiltonian(model));
    const ComplexVector psi0 = em_initial_state(model);
    const ComplexVector coeffs = spec.eigenvectors.adjoint() * psi0;

    std::vector<double> neg;
    std::vector<double> exc;
    for (double t : times) {
      ComplexVector phased = coeffs;
      for (Eigen::Index k = 0; k < phased.size(); ++k) phased(k) *= std::polar(1.0, -spec.eigenvalues(k) * t);
      const ComplexVector psi = spec.eigenvectors * phased;
      const double leak = top_level_population(psi, base.n_max);
      if (leak > kTruncationLeakTolerance) {
        throw Error(ErrorKind::TruncationLeak, "top Fock level population exceeds tolerance", leak);
      }
      const DensityMatrix rho = DensityMatrix::unchecked(psi * psi.adjoint(), dims);
      neg.push_back(negativity(rho));
      exc.push_back(psi.dot(total_number * psi).real());
    }
    const auto peak = std::max_element(neg.begin(), neg.end());
    out.max_negativity.push_back(peak == neg.end() ? 0.0 : *peak);
    out.time_of_max.push_back(peak == neg.end() ? 0.0 : out.times[static_cast<std::size_t>(peak - neg.begin())]);
    double mean = 0;
    for (double v : neg) mean += v;
    out.mean_negativity.push_back(neg.empty() ? 0.0 : mean / static_cast<double>(neg.size()));
    out.negativity.push_back(std::move(neg));
    out.excitation.push_back(std::move(exc));
  }
  return out;
}

}  // namespace qdeco
