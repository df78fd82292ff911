#include <doctest.h>

#include <cmath>

#include "ontic/bell_model.hpp"

using namespace ontic;

namespace {

OrderedMeasurement computational(std::size_t d) {
  return order_for_anchor(Basis::computational(d), PureState::basis_state(d, 0));
}

}  // namespace

TEST_CASE("prepare_bell") {
  const auto s = prepare_bell(PureState::basis_state(2, 0));
  REQUIRE(s.components().size() == 1);
  CHECK(s.components()[0].weight == 1.0);
  const auto& line = std::get<DeltaLine>(s.components()[0].component);
  CHECK(line.center.same_ray(PureState::basis_state(2, 0)));
  CHECK(line.lo == 0.0);
  CHECK(line.hi == 1.0);
}

TEST_CASE("respond_bell examples") {
  const auto z = computational(2);
  CHECK(respond_bell(OnticState(PureState::basis_state(2, 0), 0.3), z).value == 0);

  // |<lambda|phi_0>|^2 = 0.7
  const auto lambda = PureState::normalized({std::sqrt(0.7), std::sqrt(0.3)});
  CHECK(respond_bell(OnticState(lambda, 0.69), z).value == 0);
  CHECK(respond_bell(OnticState(lambda, 0.71), z).value == 1);

  Rng rng(1);
  for (std::size_t d : {2u, 3u, 7u}) {
    for (int i = 0; i < 100; ++i) {
      const auto m = order_for_anchor(random_measurement(d, rng), haar_random(d, rng));
      CHECK(respond_bell(OnticState(haar_random(d, rng), 1.0), m).value == d - 1);
    }
  }
  CHECK_THROWS_AS(respond_bell(OnticState(PureState::basis_state(3, 0), 0.5), z), std::invalid_argument);
}

TEST_CASE("response intervals") {
  const auto m3 = computational(3);
  const auto u = PureState::normalized({1.0, 1.0, 1.0});
  for (std::size_t k = 0; k < 3; ++k) {
    const auto iv = response_interval(u, m3, k);
    CHECK(iv.lo == doctest::Approx(k / 3.0).epsilon(1e-12));
    CHECK(iv.hi == doctest::Approx((k + 1) / 3.0).epsilon(1e-12));
  }
  CHECK(response_interval(u, m3, 2).hi == 1.0);
  CHECK_THROWS_AS(response_interval(u, m3, 3), std::invalid_argument);

  // An orthogonal outcome gets an empty interval and is returned only at the
  // x = 1 endpoint, where the last outcome always wins.
  const auto psi = PureState::basis_state(3, 1);
  CHECK(response_interval(psi, m3, 2).length() == 0.0);
  CHECK(respond_bell(OnticState(psi, 1.0), m3).value == 2);
  for (int i = 0; i < 1000; ++i) {
    CHECK(respond_bell(OnticState(psi, i / 1000.0), m3).value == 1);
  }
}

TEST_CASE("cumulative weights partition [0, 1]") {
  Rng rng(3);
  for (int i = 0; i < 5000; ++i) {
    const std::size_t d = 2 + i % 7;
    const auto lambda = haar_random(d, rng);
    const auto m = order_for_anchor(random_measurement(d, rng), haar_random(d, rng));
    const auto c = cumulative_weights(lambda, m);
    const auto p = born_probabilities(lambda, m);
    REQUIRE(c.back() == 1.0);
    double prev = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
      const auto iv = response_interval(lambda, m, k);
      REQUIRE(iv.lo == prev);
      REQUIRE(std::abs(iv.length() - p[k]) <= 1e-12);
      prev = iv.hi;
    }
  }
}

TEST_CASE("exactly one outcome per ontic state, matching its interval") {
  Rng rng(4);
  for (int i = 0; i < 20000; ++i) {
    const std::size_t d = 2 + i % 5;
    const auto lambda = haar_random(d, rng);
    const auto m = order_for_anchor(random_measurement(d, rng), haar_random(d, rng));
    const double x = rng.uniform();
    const auto k = respond_bell(OnticState(lambda, x), m).value;
    int hits = 0;
    for (std::size_t j = 0; j < d; ++j) {
      const auto iv = response_interval(lambda, m, j);
      hits += (x >= iv.lo && x < iv.hi) ? 1 : 0;
    }
    REQUIRE(hits == 1);
    const auto iv = response_interval(lambda, m, k);
    REQUIRE(x >= iv.lo);
    REQUIRE(x < iv.hi);
  }
}

TEST_CASE("qubit Heaviside form") {
  // outcome 0 iff x < |<lambda|phi_0>|^2
  Rng rng(5);
  for (int i = 0; i < 20000; ++i) {
    const auto lambda = haar_random(2, rng);
    const auto m = order_for_anchor(random_measurement(2, rng), haar_random(2, rng));
    const double x = rng.uniform();
    const std::size_t expected = x < fidelity(m[0], lambda) ? 0 : 1;
    REQUIRE(respond_bell(OnticState(lambda, x), m).value == expected);
  }
}
