#include <doctest.h>

#include <random>

#include "qdeco/channels.hpp"
#include "qdeco/measures.hpp"
#include "support/testing.hpp"

using namespace qdeco;
using qdeco::testing::max_abs_diff;

namespace {

DensityMatrix random_state(std::size_t n, std::mt19937_64& rng, Dims dims = {}) {
  if (dims.empty()) dims = {n};
  return DensityMatrix(qdeco::testing::random_density(n, rng), dims);
}

std::vector<KrausChannel> channel_grid() {
  std::vector<KrausChannel> out;
  for (int i = 0; i <= 10; ++i) {
    const double p = i / 10.0;
    out.push_back(amplitude_damping(p));
    out.push_back(phase_damping(p));
    out.push_back(depolarizing(p));
    for (int j = 0; j <= 10; ++j) out.push_back(correlated_amplitude_damping(p, j / 10.0));
  }
  return out;
}

// All nine qubit-basis operators |i><j| and their Hermitian combinations
// determine a linear map; comparing images of a state basis compares maps.
std::vector<DensityMatrix> qubit_probe_states() {
  std::vector<DensityMatrix> out;
  const double h = 1 / std::sqrt(2.0);
  for (auto amps : std::vector<std::array<Complex, 2>>{
           {1, 0}, {0, 1}, {h, h}, {h, -h}, {h, Complex(0, h)}, {h, Complex(0, -h)}}) {
    ComplexVector v(2);
    v << amps[0], amps[1];
    out.push_back(pure_state(v, {2}));
  }
  return out;
}

}  // namespace

TEST_CASE("amplitude_damping operators") {
  const auto ch = amplitude_damping(0.36);
  REQUIRE(ch.operators().size() == 2);
  CHECK(std::abs(ch.operators()[0](0, 0) - 1.0) < 1e-15);
  CHECK(std::abs(ch.operators()[0](1, 1) - 0.8) < 1e-15);
  CHECK(std::abs(ch.operators()[1](0, 1) - 0.6) < 1e-15);
  CHECK(std::abs(ch.operators()[1](1, 0)) == 0.0);
  CHECK(completeness_error(amplitude_damping(0.3).operators()) <= 1e-12);
  CHECK_THROWS_AS(amplitude_damping(1.2), Error);
  CHECK_THROWS_AS(amplitude_damping(-0.1), Error);
}

TEST_CASE("phase_damping operators") {
  const auto ch = phase_damping(0.19);
  CHECK(std::abs(ch.operators()[0](1, 1) - 0.9) < 1e-15);
  CHECK(std::abs(ch.operators()[1](1, 1) - std::sqrt(0.19)) < 1e-15);
  CHECK(std::abs(ch.operators()[1](0, 0)) == 0.0);

  for (double a : {0.0, 0.2, 0.7}) {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 0) = a;
    m(1, 1) = 1 - a;
    const DensityMatrix out = apply(phase_damping(0.45), DensityMatrix(m, {2}));
    CHECK(std::abs(out(0, 0) - a) < 1e-15);
    CHECK(std::abs(out(1, 1) - (1 - a)) < 1e-15);
  }
  CHECK_THROWS_AS(phase_damping(1.0001), Error);
}

TEST_CASE("depolarizing operators") {
  const auto ch = depolarizing(0.3);
  REQUIRE(ch.operators().size() == 4);
  CHECK(std::abs(ch.operators()[0](0, 0) - std::sqrt(0.7)) < 1e-15);
  CHECK(std::abs(ch.operators()[1](0, 1) - std::sqrt(0.1)) < 1e-15);
  CHECK(std::abs(ch.operators()[2](0, 1) - Complex(0, -std::sqrt(0.1))) < 1e-15);
  CHECK(std::abs(ch.operators()[2](1, 0) - Complex(0, std::sqrt(0.1))) < 1e-15);
  CHECK(std::abs(ch.operators()[3](1, 1) + std::sqrt(0.1)) < 1e-15);

  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 20; ++trial) {
    const DensityMatrix out = apply(depolarizing(0.75), random_state(2, rng));
    CHECK(max_abs_diff(out.matrix(), identity(2) / 2.0) <= 1e-12);
  }
}

TEST_CASE("correlated amplitude damping operators") {
  const auto ch = correlated_amplitude_damping(0.3, 0.5);
  REQUIRE(ch.operators().size() == 3);
  CHECK(std::abs(ch.operators()[0](1, 1) - std::sqrt(0.7)) < 1e-15);
  CHECK(std::abs(ch.operators()[0](2, 2) - std::sqrt(0.5)) < 1e-15);
  CHECK(std::abs(ch.operators()[1](0, 1) - std::sqrt(0.3)) < 1e-15);
  CHECK(std::abs(ch.operators()[2](0, 2) - std::sqrt(0.5)) < 1e-15);
  CHECK_THROWS_AS(correlated_amplitude_damping(0.3, 1.5), Error);
}

TEST_CASE("zero-parameter channels act as identity") {
  std::mt19937_64 rng(47);
  const DensityMatrix q = random_state(2, rng);
  const DensityMatrix t = random_state(3, rng);
  for (const auto& ch : {amplitude_damping(0), phase_damping(0), depolarizing(0)}) {
    CHECK(max_entry_difference(apply(ch, q), q) < 1e-15);
  }
  CHECK(max_entry_difference(apply(correlated_amplitude_damping(0, 0), t), t) < 1e-15);
  CHECK(max_entry_difference(apply(identity_channel(3), t), t) == 0.0);
}

TEST_CASE("completeness over the parameter grid") {
  for (const auto& ch : channel_grid()) CHECK(completeness_error(ch.operators()) <= 1e-12);
}

TEST_CASE("apply: closed forms") {
  ComplexVector one(2);
  one << 0, 1;
  const DensityMatrix excited = pure_state(one, {2});
  for (double g : {0.1, 0.36, 0.9}) {
    const DensityMatrix out = apply(amplitude_damping(g), excited);
    CHECK(std::abs(out(0, 0) - g) < 1e-15);
    CHECK(std::abs(out(1, 1) - (1 - g)) < 1e-15);
  }

  ComplexVector plus(2);
  plus << 1 / std::sqrt(2.0), 1 / std::sqrt(2.0);
  const DensityMatrix p = pure_state(plus, {2});
  for (double l : {0.19, 0.5, 1.0}) {
    const DensityMatrix out = apply(phase_damping(l), p);
    CHECK(std::abs(out(0, 1) - 0.5 * std::sqrt(1 - l)) < 1e-15);
    CHECK(l1_coherence(out) == doctest::Approx(std::sqrt(1 - l)).epsilon(1e-14));
  }
  CHECK_THROWS_AS(apply(amplitude_damping(0.1), bell_state(BellKind::PhiPlus)), Error);
}

TEST_CASE("apply: trace, positivity and linearity on random states") {
  std::mt19937_64 rng(53);
  for (const auto& ch : channel_grid()) {
    const std::size_t n = ch.dim();
    const DensityMatrix r1 = random_state(n, rng);
    const DensityMatrix r2 = random_state(n, rng);
    const DensityMatrix out = apply(ch, r1);
    CHECK(std::abs(out.matrix().trace() - 1.0) <= 1e-12);
    CHECK(hermitian_eigenvalues(out.matrix()).minCoeff() >= -1e-10);

    const double alpha = 0.3;
    const DensityMatrix mix(alpha * r1.matrix() + (1 - alpha) * r2.matrix(), {n});
    const ComplexMatrix lhs = apply(ch, mix).matrix();
    const ComplexMatrix rhs = alpha * out.matrix() + (1 - alpha) * apply(ch, r2).matrix();
    CHECK(max_abs_diff(lhs, rhs) <= 1e-12);
  }
}

TEST_CASE("phase damping never increases l1 coherence") {
  std::mt19937_64 rng(59);
  for (int trial = 0; trial < 50; ++trial) {
    const DensityMatrix rho = random_state(2, rng);
    double last = l1_coherence(rho);
    for (int k = 1; k <= 10; ++k) {
      const double c = l1_coherence(apply(phase_damping(k / 10.0), rho));
      CHECK(c <= last + 1e-15);
      last = c;
    }
  }
}

TEST_CASE("apply_to_subsystem") {
  const DensityMatrix phi = bell_state(BellKind::PhiPlus);
  // X-state oracle: C = 2 max(0, |rho_03| - sqrt(rho_11 rho_22))
  const DensityMatrix damped = apply_to_subsystem(amplitude_damping(0.36), phi, 1);
  const double oracle =
      2 * std::max(0.0, std::abs(damped(0, 3)) - std::sqrt(damped(1, 1).real() * damped(2, 2).real()));
  CHECK(oracle == doctest::Approx(0.8).epsilon(1e-14));
  CHECK(concurrence(damped) == doctest::Approx(0.8).epsilon(1e-10));

  for (double p : {0.1, 0.25, 0.4, 0.6}) {
    const double ca = concurrence(apply_to_subsystem(depolarizing(p), phi, 0));
    const double cb = concurrence(apply_to_subsystem(depolarizing(p), phi, 1));
    CHECK(std::abs(ca - cb) <= 1e-12);
  }
  CHECK(max_entry_difference(apply_to_subsystem(identity_channel(2), phi, 0), phi) == 0.0);
  CHECK_THROWS_AS(apply_to_subsystem(correlated_amplitude_damping(0.1, 0.1), phi, 0), Error);
  CHECK_THROWS_AS(apply_to_subsystem(amplitude_damping(0.1), phi, 2), Error);
}

TEST_CASE("compose") {
  const auto ad = amplitude_damping(0.4);
  const auto composed = compose(identity_channel(2), ad);
  for (const auto& s : qubit_probe_states()) CHECK(max_entry_difference(apply(composed, s), apply(ad, s)) < 1e-15);

  const double g1 = 0.3;
  const double g2 = 0.55;
  const auto serial = compose(amplitude_damping(g1), amplitude_damping(g2));
  CHECK(serial.operators().size() == 4);
  const auto direct = amplitude_damping(1 - (1 - g1) * (1 - g2));
  for (const auto& s : qubit_probe_states()) {
    CHECK(max_entry_difference(apply(serial, s), apply(direct, s)) <= 1e-12);
  }
  CHECK(completeness_error(serial.operators()) <= 1e-12);
  CHECK_THROWS_AS(compose(amplitude_damping(0.1), correlated_amplitude_damping(0.1, 0.1)), Error);
}

TEST_CASE("non trace-preserving operator sets are rejected") {
  ComplexMatrix half = identity(2) * 0.5;
  CHECK_THROWS_AS(KrausChannel("bad", {half}), Error);
  CHECK_THROWS_AS(KrausChannel("empty", {}), Error);
}
