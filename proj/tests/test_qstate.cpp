#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "haar_oracle.hpp"
#include "oracles.hpp"
#include "ontic/qstate.hpp"

using namespace ontic;

namespace {

PureState plus_state() { return PureState::normalized({1.0, 1.0}); }
PureState minus_state() { return PureState::normalized({1.0, -1.0}); }

}  // namespace

TEST_CASE("pure state construction and phase equivalence") {
  CHECK_THROWS_AS(PureState({}), std::invalid_argument);
  CHECK_THROWS_AS(PureState({1.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(PureState::normalized({0.0, 0.0}), std::invalid_argument);

  const PureState a = PureState::normalized({{0.0, 1.0}, {0.0, 1.0}});
  CHECK(a.same_ray(plus_state()));
  CHECK_FALSE(a.same_ray(minus_state()));

  const PureState c = a.canonical();
  CHECK(c[0].imag() == 0.0);
  CHECK(c[0].real() > 0.0);
  CHECK(c.same_ray(a));
}

TEST_CASE("born probabilities") {
  const std::size_t d = 3;
  const auto comp = order_for_anchor(Basis::computational(d), PureState::basis_state(d, 0));

  SUBCASE("eigenstate") {
    const auto p = born_probabilities(comp[0], comp);
    CHECK(p[0] == doctest::Approx(1.0));
    CHECK(p[1] == 0.0);
    CHECK(p[2] == 0.0);
  }
  SUBCASE("uniform superposition") {
    const auto p = born_probabilities(PureState::normalized({1.0, 1.0, 1.0}), comp);
    for (double v : p) CHECK(v == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  }
  SUBCASE("qubit polar angle") {
    const auto z = order_for_anchor(Basis::computational(2), PureState::basis_state(2, 0));
    for (double theta : {0.0, 0.3, 1.2, std::numbers::pi / 2, 2.5, std::numbers::pi}) {
      const auto p = born_probabilities(from_bloch({theta, 0.7}), z);
      CHECK(p[0] == doctest::Approx(std::pow(std::cos(theta / 2), 2)).epsilon(1e-12));
      CHECK(p[1] == doctest::Approx(std::pow(std::sin(theta / 2), 2)).epsilon(1e-12));
    }
  }
  SUBCASE("dimension mismatch") {
    CHECK_THROWS_AS(born_probabilities(PureState::basis_state(2, 0), comp), std::invalid_argument);
  }
  SUBCASE("sums to one for random bases") {
    Rng rng(11);
    for (int i = 0; i < 1000; ++i) {
      const std::size_t dd = 2 + i % 7;
      const auto p = born_probabilities(haar_random(dd, rng), random_measurement(dd, rng));
      double s = 0.0;
      for (double v : p) {
        CHECK(v >= 0.0);
        s += v;
      }
      CHECK(std::abs(s - 1.0) <= kArithmeticTol);
    }
  }
}

TEST_CASE("haar_random") {
  Rng rng(3);
  CHECK_THROWS_AS(haar_random(0, rng), std::invalid_argument);
  const auto one = haar_random(1, rng);
  CHECK(one.same_ray(PureState::basis_state(1, 0)));

  SUBCASE("mean anchor weight is 1/d") {
    for (std::size_t d : {2u, 3u, 5u}) {
      double s = 0.0;
      const int n = 100000;
      const auto zero = PureState::basis_state(d, 0);
      for (int i = 0; i < n; ++i) s += fidelity(zero, haar_random(d, rng));
      // sd of F is below 1/d; 5 sigma at n = 1e5
      CHECK(std::abs(s / n - 1.0 / d) < 5.0 / std::sqrt(static_cast<double>(n)) / d);
    }
  }

  SUBCASE("anchor-weight law matches 1 - (1-F)^(d-1), and the QR oracle") {
    const std::size_t d = 4;
    const int n = 100000;
    std::vector<double> ours, oracle;
    std::mt19937_64 gen(99);
    const auto zero = PureState::basis_state(d, 0);
    for (int i = 0; i < n; ++i) {
      ours.push_back(fidelity(zero, haar_random(d, rng)));
      oracle.push_back(std::norm(test::haar_column_by_qr(d, gen)[0]));
    }
    auto cdf = [&](double f) { return 1.0 - std::pow(1.0 - f, static_cast<double>(d - 1)); };
    CHECK(test::ks_statistic(ours, cdf) < 0.01);
    CHECK(test::ks_statistic(oracle, cdf) < 0.01);
  }

  SUBCASE("every sample normalized") {
    for (int i = 0; i < 1000; ++i) {
      const auto s = haar_random(6, rng);
      double n2 = 0.0;
      for (auto a : s.amplitudes()) n2 += std::norm(a);
      CHECK(std::abs(n2 - 1.0) <= kAlgebraicTol);
    }
  }
}

TEST_CASE("random_measurement") {
  Rng rng(5);
  CHECK(random_measurement(1, rng)[0].same_ray(PureState::basis_state(1, 0)));
  CHECK_THROWS_AS(random_measurement(0, rng), std::invalid_argument);

  for (std::size_t d = 2; d <= 8; ++d) {
    const auto b = random_measurement(d, rng);
    for (std::size_t j = 0; j < d; ++j) {
      for (std::size_t k = 0; k < d; ++k) {
        const Complex g = inner(b[j], b[k]);
        CHECK(std::abs(g - Complex(j == k ? 1.0 : 0.0, 0.0)) < kArithmeticTol);
      }
    }
  }

  SUBCASE("average max weight exceeds 1/d") {
    const std::size_t d = 3;
    const auto psi = PureState::basis_state(d, 0);
    double s = 0.0;
    for (int i = 0; i < 2000; ++i) {
      const auto p = born_probabilities(psi, random_measurement(d, rng));
      s += *std::max_element(p.begin(), p.end());
    }
    CHECK(s / 2000 > 1.0 / d + 0.1);
  }
}

TEST_CASE("order_for_anchor") {
  SUBCASE("computational basis keeps identity order") {
    const auto m = order_for_anchor(Basis::computational(4), PureState::basis_state(4, 0));
    for (std::size_t k = 0; k < 4; ++k) CHECK(m.source_index()[k] == k);
  }
  SUBCASE("ties keep input order") {
    const auto m = order_for_anchor(Basis({plus_state(), minus_state()}), PureState::basis_state(2, 0));
    CHECK(m.source_index() == std::vector<std::size_t>{0, 1});
    const auto m2 = order_for_anchor(Basis({minus_state(), plus_state()}), PureState::basis_state(2, 0));
    CHECK(m2[0].same_ray(minus_state()));
  }
  SUBCASE("non-orthonormal input rejected") {
    CHECK_THROWS_AS(Basis({plus_state(), PureState::basis_state(2, 0)}), std::invalid_argument);
    CHECK_THROWS_AS(Basis({plus_state()}), std::invalid_argument);
  }
  SUBCASE("random bases come out sorted, idempotent, first weight >= 1/d") {
    Rng rng(21);
    const std::size_t d = 3;
    for (int i = 0; i < 10000; ++i) {
      const auto anchor = haar_random(d, rng);
      const auto m = order_for_anchor(random_measurement(d, rng), anchor);
      const auto w = born_probabilities(anchor, m);
      for (std::size_t k = 1; k < d; ++k) REQUIRE(w[k] <= w[k - 1] + kAlgebraicTol);
      REQUIRE(w[0] >= 1.0 / d - kAlgebraicTol);
      const auto again = reorder_for_anchor(m, anchor);
      for (std::size_t k = 0; k < d; ++k) REQUIRE(again.source_index()[k] == k);
    }
  }
  SUBCASE("source_index points back into the basis") {
    Rng rng(8);
    const auto b = random_measurement(5, rng);
    const auto m = order_for_anchor(b, haar_random(5, rng));
    for (std::size_t k = 0; k < 5; ++k) CHECK(m[k].same_ray(b[m.source_index()[k]]));
  }
}

TEST_CASE("bloch map") {
  CHECK(to_bloch(PureState::basis_state(2, 0)).polar == 0.0);
  const auto eq = to_bloch(plus_state());
  CHECK(eq.polar == doctest::Approx(std::numbers::pi / 2));
  CHECK(eq.azimuth == doctest::Approx(0.0));
  CHECK_THROWS_AS(to_bloch(PureState::basis_state(3, 0)), std::invalid_argument);

  Rng rng(4);
  for (int i = 0; i < 10000; ++i) {
    const auto psi = haar_random(2, rng);
    const auto b = to_bloch(psi);
    REQUIRE(b.polar >= 0.0);
    REQUIRE(b.polar <= std::numbers::pi);
    REQUIRE(b.azimuth >= 0.0);
    REQUIRE(b.azimuth < 2 * std::numbers::pi);
    REQUIRE(fidelity(from_bloch(b), psi) >= 1.0 - 1e-10);
  }
}
