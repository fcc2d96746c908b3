#include <doctest.h>

#include <random>

#include "qdeco/measures.hpp"
#include "qdeco/protection.hpp"
#include "support/testing.hpp"

using namespace qdeco;

namespace {

// Brute-force dense oracle (numpy, independent Kraus application + eigensolve)
// for two-sided CAD on (|00> + |11> + |22>) / sqrt(3).
constexpr double kUnprotected_03_05 = 0.36333333333333384;
constexpr double kUnprotected_06_08 = 0.09333333333333349;

DensityMatrix uniform_qutrit() {
  ComplexVector v = ComplexVector::Constant(3, 1 / std::sqrt(3.0));
  return pure_state(v, {3});
}

}  // namespace

TEST_CASE("weak_measurement") {
  const auto id = weak_measurement(0, 0);
  CHECK(qdeco::testing::max_abs_diff(id.operators()[0], identity(3)) == 0.0);

  for (double eps : {1e-2, 1e-4, 1e-6}) {
    const auto out = apply_selective(weak_measurement(1 - eps, 1 - eps), uniform_qutrit());
    CHECK(out.probability == doctest::Approx((1 + 2 * eps) / 3).epsilon(1e-9));
    CHECK(std::abs(out.state(0, 0).real() - 1.0) <= 4 * eps);
  }
  CHECK_NOTHROW(weak_measurement(0.3, 0.7));
  CHECK_THROWS_AS(weak_measurement(1.0, 0.0), Error);
  CHECK_THROWS_AS(weak_measurement(0.0, -0.1), Error);
}

TEST_CASE("qmr") {
  CHECK(qdeco::testing::max_abs_diff(qmr(0, 0).operators()[0], identity(3)) == 0.0);
  const auto out = apply_selective(qmr(0.5, 0.5), maximally_mixed(3));
  CHECK(out.probability == doctest::Approx((0.25 + 0.5 + 0.5) / 3).epsilon(1e-14));
  CHECK_THROWS_AS(qmr(0.2, 1.0), Error);
}

TEST_CASE("selective operations are trace non-increasing") {
  for (int i = 0; i < 20; ++i) {
    for (int j = 0; j < 20; ++j) {
      for (const auto& op : {weak_measurement(i / 20.0, j / 20.0), qmr(i / 20.0, j / 20.0)}) {
        const ComplexMatrix gap = identity(3) - op.operators()[0].adjoint() * op.operators()[0];
        CHECK(hermitian_eigenvalues(gap).minCoeff() >= -1e-10);
      }
    }
  }
  CHECK_THROWS_AS(SelectiveOperation({identity(2) * 1.01}), Error);
}

TEST_CASE("apply_selective") {
  std::mt19937_64 rng(127);
  const DensityMatrix rho(qdeco::testing::random_density(3, rng), {3});
  const auto same = apply_selective(SelectiveOperation({identity(3)}), rho);
  CHECK(same.probability == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(max_entry_difference(same.state, rho) <= 1e-15);

  ComplexVector two(3);
  two << 0, 0, 1;
  const DensityMatrix top = pure_state(two, {3});
  const auto faint = apply_selective(weak_measurement(0.0, 1 - 1e-6), top);
  CHECK(faint.probability == doctest::Approx(1e-6).epsilon(1e-6));
  try {
    (void)apply_selective(weak_measurement(0.0, 1 - 1e-15), top);
    FAIL("expected ZeroProbability");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ZeroProbability);
  }

  for (int trial = 0; trial < 20; ++trial) {
    const DensityMatrix r(qdeco::testing::random_density(9, rng), {3, 3});
    std::uniform_real_distribution<double> u(0.0, 0.99);
    const auto out = apply_selective_to_subsystem(weak_measurement(u(rng), u(rng)), r, trial % 2);
    CHECK(std::holds_alternative<DensityMatrix>(validate(out.state.matrix(), out.state.dims())));
    CHECK(out.probability > 0);
    CHECK(out.probability <= 1 + 1e-12);
  }
  CHECK_THROWS_AS(apply_selective(qmr(0.1, 0.1), maximally_mixed(2)), Error);
}

TEST_CASE("run_scheme: reference values") {
  const DensityMatrix rho0 = maximally_entangled(3);
  const auto clean = run_scheme(Scheme::None, rho0, 0, 0, {});
  CHECK(clean.negativity == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(clean.success_probability == 1.0);

  const auto noisy = run_scheme(Scheme::None, rho0, 0.3, 0.5, {});
  CHECK(std::abs(noisy.negativity - kUnprotected_03_05) <= 1e-12);
  CHECK(std::abs(run_scheme(Scheme::None, rho0, 0.6, 0.8, {}).negativity - kUnprotected_06_08) <= 1e-12);

  // The reversal q = (d1, d2) equalizes the no-jump amplitudes exactly.
  const auto restored = run_scheme(Scheme::EamQmr, rho0, 0.3, 0.5, {0, 0, 0.3, 0.5});
  CHECK(restored.negativity == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(run_scheme(Scheme::None, maximally_entangled(2), 0.1, 0.1, {}), Error);
  CHECK_THROWS_AS(run_scheme(Scheme::None, rho0, 1.1, 0.1, {}), Error);
  CHECK_THROWS_AS(run_scheme(Scheme::WmQmr, rho0, 0.1, 0.1, {1.0, 0, 0, 0}), Error);
}

TEST_CASE("run_scheme: invariants") {
  std::mt19937_64 rng(131);
  std::uniform_real_distribution<double> u(0.0, 0.95);
  for (int trial = 0; trial < 40; ++trial) {
    const DensityMatrix rho0 = trial % 2 == 0 ? maximally_entangled(3)
                                              : DensityMatrix(qdeco::testing::random_density(9, rng), {3, 3});
    const double d1 = u(rng);
    const double d2 = u(rng);
    const ProtectionStrengths s{u(rng), u(rng), u(rng), u(rng)};
    const Sides sides = std::array{Sides::Both, Sides::First, Sides::Second}[static_cast<std::size_t>(trial % 3)];
    for (Scheme scheme : {Scheme::None, Scheme::WmQmr, Scheme::EamQmr}) {
      const auto r = run_scheme(scheme, rho0, d1, d2, s, sides);
      CHECK(r.success_probability > 0);
      CHECK(r.success_probability <= 1 + 1e-12);
      CHECK(std::abs(r.negativity - negativity(r.state)) <= 1e-12);
    }

    const auto none = run_scheme(Scheme::None, rho0, d1, d2, {}, sides);
    const auto zero = run_scheme(Scheme::WmQmr, rho0, d1, d2, {}, sides);
    CHECK(std::abs(none.negativity - zero.negativity) <= 1e-12);
    CHECK(std::abs(none.success_probability - zero.success_probability) <= 1e-12);
    CHECK(max_entry_difference(none.state, zero.state) <= 1e-12);
  }
}

TEST_CASE("run_scheme: cumulative success probability") {
  // Probability of the whole pipeline equals the product of the stage
  // probabilities when each stage is applied and renormalized separately.
  const DensityMatrix rho0 = maximally_entangled(3);
  const ProtectionStrengths s{0.4, 0.2, 0.35, 0.6};
  double p = 1;
  DensityMatrix rho = rho0;
  for (std::size_t side : {0, 1}) {
    auto out = apply_selective_to_subsystem(weak_measurement(s.p1, s.p2), rho, side);
    p *= out.probability;
    rho = out.state;
  }
  const KrausChannel cad = correlated_amplitude_damping(0.3, 0.5);
  rho = apply_to_subsystem(cad, apply_to_subsystem(cad, rho, 0), 1);
  for (std::size_t side : {0, 1}) {
    auto out = apply_selective_to_subsystem(qmr(s.q1, s.q2), rho, side);
    p *= out.probability;
    rho = out.state;
  }
  const auto r = run_scheme(Scheme::WmQmr, rho0, 0.3, 0.5, s);
  CHECK(std::abs(r.success_probability - p) <= 1e-12);
  CHECK(max_entry_difference(r.state, rho) <= 1e-12);
}

TEST_CASE("eam_qmr keeps pure inputs pure") {
  std::mt19937_64 rng(137);
  for (int trial = 0; trial < 10; ++trial) {
    const DensityMatrix pure = pure_state(qdeco::testing::random_ket(9, rng), {3, 3});
    const auto r = run_scheme(Scheme::EamQmr, pure, 0.4, 0.7, {});
    CHECK(purity(r.state) == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("optimize_qmr") {
  const DensityMatrix rho0 = maximally_entangled(3);

  const auto clean = optimize_qmr(Scheme::EamQmr, rho0, 0, 0);
  CHECK(clean.strengths.q1 == 0.0);
  CHECK(clean.strengths.q2 == 0.0);
  CHECK(clean.report.negativity == doctest::Approx(1.0).epsilon(1e-12));

  const auto a = optimize_qmr(Scheme::EamQmr, rho0, 0.3, 0.5);
  CHECK(a.grid.size() == 400);
  for (const auto& g : a.grid) CHECK(a.report.negativity >= g.negativity - 1e-12);
  CHECK(a.report.negativity >= kUnprotected_03_05);
  CHECK(a.report.negativity == doctest::Approx(1.0).epsilon(1e-12));

  const auto b = optimize_qmr(Scheme::EamQmr, rho0, 0.6, 0.8);
  CHECK(a.report.negativity >= b.report.negativity - 1e-12);
  CHECK(b.report.negativity >= kUnprotected_06_08);

  const auto w = optimize_qmr(Scheme::WmQmr, rho0, 0.3, 0.5, {0.2, 0.2, 0, 0});
  for (const auto& g : w.grid) CHECK(w.report.negativity >= g.negativity - 1e-12);
  CHECK(w.report.strengths.p1 == 0.2);
  CHECK(w.report.negativity >= kUnprotected_03_05);

  const auto none = optimize_qmr(Scheme::None, rho0, 0.3, 0.5);
  CHECK(none.grid.empty());
  CHECK(std::abs(none.report.negativity - kUnprotected_03_05) <= 1e-12);
}

TEST_CASE("optimize_qmr is deterministic") {
  const DensityMatrix rho0 = maximally_entangled(3);
  const auto a = optimize_qmr(Scheme::WmQmr, rho0, 0.45, 0.15, {0.3, 0.1, 0, 0}, Sides::First);
  const auto b = optimize_qmr(Scheme::WmQmr, rho0, 0.45, 0.15, {0.3, 0.1, 0, 0}, Sides::First);
  CHECK(a.strengths.q1 == b.strengths.q1);
  CHECK(a.strengths.q2 == b.strengths.q2);
  CHECK(a.report.negativity == b.report.negativity);
}
