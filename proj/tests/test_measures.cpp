#include <doctest.h>

#include <random>

#include "qdeco/channels.hpp"
#include "qdeco/measures.hpp"
#include "support/testing.hpp"

using namespace qdeco;

namespace {

DensityMatrix random_product(std::mt19937_64& rng) {
  const std::vector<MixtureTerm> one{{1.0,
                                      {DensityMatrix(qdeco::testing::random_density(2, rng), {2}),
                                       DensityMatrix(qdeco::testing::random_density(2, rng), {2})}}};
  return separable_mixture(one);
}

DensityMatrix random_separable(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double w = u(rng);
  std::vector<MixtureTerm> terms;
  for (double weight : {w, 1.0 - w}) {
    terms.push_back({weight,
                     {DensityMatrix(qdeco::testing::random_density(2, rng), {2}),
                      DensityMatrix(qdeco::testing::random_density(2, rng), {2})}});
  }
  return separable_mixture(terms);
}

// Mixture of the four Bell projectors with weights w.
DensityMatrix bell_diagonal(const std::array<double, 4>& w) {
  const std::array kinds{BellKind::PhiPlus, BellKind::PhiMinus, BellKind::PsiPlus, BellKind::PsiMinus};
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  for (std::size_t k = 0; k < 4; ++k) m += w[k] * bell_state(kinds[k]).matrix();
  return DensityMatrix(m, {2, 2});
}

ComplexMatrix local_unitary(std::mt19937_64& rng) {
  return tensor(qdeco::testing::random_unitary(2, rng), qdeco::testing::random_unitary(2, rng));
}

}  // namespace

TEST_CASE("concurrence: reference states") {
  CHECK(concurrence(bell_state(BellKind::PhiPlus)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(concurrence(bell_state(BellKind::PsiMinus)) == doctest::Approx(1.0).epsilon(1e-12));

  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 20; ++trial) CHECK(concurrence(random_product(rng)) <= 1e-9);

  // Bell-diagonal oracle: C = max(0, 2 l_max - 1), eigenvalues (1-p, p/3, p/3, p/3)
  for (double p : {0.0, 0.1, 0.25, 0.5, 0.6}) {
    const DensityMatrix out = apply_to_subsystem(depolarizing(p), bell_state(BellKind::PhiPlus), 0);
    CHECK(concurrence(out) == doctest::Approx(std::max(0.0, 2 * (1 - p) - 1)).epsilon(1e-10));
  }
  CHECK(std::abs(concurrence(apply_to_subsystem(depolarizing(0.25), bell_state(BellKind::PhiPlus), 0)) - 0.5) <=
        1e-10);
  CHECK_THROWS_AS(concurrence(maximally_entangled(3)), Error);
  CHECK_THROWS_AS(concurrence(maximally_mixed(4)), Error);
}

TEST_CASE("concurrence: rank-deficient states stay accurate") {
  for (int k = 0; k < 20; ++k) {
    const double g = 0.99 * k / 19.0;
    const DensityMatrix out = apply_to_subsystem(amplitude_damping(g), bell_state(BellKind::PhiPlus), 1);
    CHECK(std::abs(concurrence(out) - std::sqrt(1 - g)) <= 1e-9);
  }
}

TEST_CASE("negativity") {
  CHECK(negativity(bell_state(BellKind::PhiPlus)) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(negativity(bell_state(BellKind::PhiPlus), {1}) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(negativity(maximally_entangled(3)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(negativity(DensityMatrix(identity(4) / 4.0, {2, 2})) <= 1e-12);

  std::mt19937_64 rng(67);
  for (int trial = 0; trial < 10; ++trial) {
    const auto a = DensityMatrix(qdeco::testing::random_density(2, rng), {2});
    const auto b = DensityMatrix(qdeco::testing::random_density(3, rng), {3});
    const auto c = DensityMatrix(qdeco::testing::random_density(2, rng), {2});
    const std::vector<MixtureTerm> terms{{1.0, {a, b, c}}};
    const DensityMatrix s = separable_mixture(terms);
    CHECK(negativity(s, {0}) <= 1e-10);
    CHECK(negativity(s, {1}) <= 1e-10);
    CHECK(negativity(s, {0, 2}) <= 1e-10);
  }

  CHECK_THROWS_AS(negativity(maximally_mixed(2)), Error);
  CHECK_THROWS_AS(negativity(bell_state(BellKind::PhiPlus), {0, 1}), Error);
  CHECK_THROWS_AS(negativity(bell_state(BellKind::PhiPlus), {2}), Error);
  CHECK_THROWS_AS(negativity(bell_state(BellKind::PhiPlus), {}), Error);
}

TEST_CASE("is_ppt") {
  CHECK_FALSE(is_ppt(bell_state(BellKind::PhiPlus)));
  CHECK_FALSE(is_ppt(maximally_entangled(3)));
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 20; ++trial) CHECK(is_ppt(random_separable(rng)));
}

TEST_CASE("concurrence and negativity vanish together on two qubits") {
  std::mt19937_64 rng(73);
  auto agree = [](const DensityMatrix& rho) {
    const bool c0 = concurrence(rho) <= 1e-9;
    const bool n0 = negativity(rho) <= 1e-9;
    CHECK(c0 == n0);
  };
  for (int trial = 0; trial < 30; ++trial) agree(random_separable(rng));

  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::array<double, 4> w{};
    double total = 0;
    for (auto& x : w) total += (x = u(rng));
    for (auto& x : w) x /= total;
    agree(bell_diagonal(w));
  }
  agree(bell_diagonal({0.5, 0.5, 0.0, 0.0}));
  agree(bell_diagonal({0.5 + 1e-6, 0.5 - 1e-6, 0.0, 0.0}));
}

TEST_CASE("local unitary invariance") {
  std::mt19937_64 rng(79);
  for (int trial = 0; trial < 40; ++trial) {
    const DensityMatrix rho(qdeco::testing::random_density(4, rng), {2, 2});
    const ComplexMatrix u = local_unitary(rng);
    const DensityMatrix rotated(u * rho.matrix() * u.adjoint(), {2, 2});
    CHECK(std::abs(concurrence(rho) - concurrence(rotated)) <= 1e-10);
    CHECK(std::abs(negativity(rho) - negativity(rotated)) <= 1e-10);
  }
}

TEST_CASE("von_neumann_entropy") {
  std::mt19937_64 rng(83);
  for (int trial = 0; trial < 10; ++trial) {
    const DensityMatrix pure = pure_state(qdeco::testing::random_ket(3, rng), {3});
    CHECK(von_neumann_entropy(pure) <= 1e-10);
  }
  CHECK(von_neumann_entropy(maximally_mixed(2)) == doctest::Approx(1.0).epsilon(1e-14));
  const ComplexMatrix reduced = partial_trace(bell_state(BellKind::PhiPlus).matrix(), {2, 2}, {0});
  CHECK(von_neumann_entropy(DensityMatrix(reduced, {2})) == doctest::Approx(1.0).epsilon(1e-14));

  for (int trial = 0; trial < 20; ++trial) {
    const DensityMatrix rho(qdeco::testing::random_density(4, rng), {4});
    const ComplexMatrix u = qdeco::testing::random_unitary(4, rng);
    const DensityMatrix rotated(u * rho.matrix() * u.adjoint(), {4});
    CHECK(std::abs(von_neumann_entropy(rho) - von_neumann_entropy(rotated)) <= 1e-10);
  }
}

TEST_CASE("l1_coherence and purity") {
  CHECK(l1_coherence(maximally_mixed(3)) == 0.0);
  ComplexVector plus(2);
  plus << 1 / std::sqrt(2.0), 1 / std::sqrt(2.0);
  const DensityMatrix p = pure_state(plus, {2});
  CHECK(l1_coherence(p) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(purity(p) == doctest::Approx(1.0).epsilon(1e-14));
  for (std::size_t d : {2, 3, 7}) CHECK(purity(maximally_mixed(d)) == doctest::Approx(1.0 / double(d)).epsilon(1e-14));

  std::mt19937_64 rng(89);
  for (int trial = 0; trial < 10; ++trial) {
    const DensityMatrix rho(qdeco::testing::random_density(2, rng), {2});
    CHECK(purity(apply(depolarizing(0.75), rho)) == doctest::Approx(0.5).epsilon(1e-12));
  }
}

TEST_CASE("thermal steady concurrence: spot values") {
  const auto a = thermal_steady_concurrence({0.5, 1.0, 0.0});
  CHECK(a.raw == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(a.clamped == 1.0);
  CHECK(a.out_of_range);
  CHECK(std::abs(a.raw - double(thermal_concurrence_raw<long double>(0.5L, 1.0L, 0.0L))) <= 1e-14);

  const auto b = thermal_steady_concurrence({0.5, 0.0, 1.0});
  CHECK(b.raw == doctest::Approx(-0.5 + 1.0 / 18.0).epsilon(1e-14));
  CHECK(b.clamped == 0.0);
  CHECK(b.out_of_range);
  CHECK(std::abs(b.raw - double(thermal_concurrence_raw<long double>(0.5L, 0.0L, 1.0L))) <= 1e-14);

  CHECK(thermal_steady_concurrence({0.5, 0.4, 1e6}).clamped == 0.0);
  CHECK_THROWS_AS(thermal_steady_concurrence({0.5, 0.4, -0.1}), Error);

  const auto inside = thermal_steady_concurrence({0.5, 0.4, 0.1});
  CHECK_FALSE(inside.out_of_range);
  CHECK(inside.raw == inside.clamped);
}

TEST_CASE("thermal steady concurrence is non-increasing in n_bar") {
  double last = thermal_steady_concurrence({0.5, 0.4, 0.0}).clamped;
  for (int k = 1; k <= 50; ++k) {
    const double c = thermal_steady_concurrence({0.5, 0.4, k / 10.0}).clamped;
    CHECK(c <= last);
    last = c;
  }
}
