#include <doctest.h>

#include <cmath>
#include <random>

#include "lbv/errors.hpp"
#include "lbv/modulus.hpp"
#include "oracles.hpp"

using namespace lbv;
using lbv::testing::close_rel;

namespace {
StepFunction indicator(bool periodic = false) {
  return StepFunction::from_breakpoints({0, 0.5, 1}, {0, 1}, periodic);
}
}  // namespace

TEST_CASE("lq_shift_distance examples") {
  // mismatch set [0.4, 0.5)
  CHECK(lq_shift_distance(indicator(), 0.1, 1) == doctest::Approx(0.1).epsilon(1e-14));
  CHECK(lq_shift_distance(indicator(), 0.1, 2) == doctest::Approx(std::sqrt(0.1)).epsilon(1e-14));
  // wrap adds [0.9, 1)
  CHECK(lq_shift_distance(indicator(true), 0.1, 1) == doctest::Approx(0.2).epsilon(1e-14));
  CHECK(lq_shift_distance(indicator(), 0, 1) == 0.0);
  CHECK(lq_shift_distance(indicator(), 1, 1) == 0.0);
  CHECK(lq_shift_distance(indicator(true), 1, 1) == 0.0);
  CHECK(lq_shift_distance(indicator(true), 0.5, 1) == doctest::Approx(1.0));
  CHECK_THROWS_AS((void)lq_shift_distance(indicator(), 1.1, 1), ArgumentError);
  CHECK_THROWS_AS((void)lq_shift_distance(indicator(), 0.1, 0.5), ArgumentError);
}

TEST_CASE("shift integral matches a midpoint overlay") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> unit(0, 1);
  for (int trial = 0; trial < 300; ++trial) {
    auto f = testing::random_step_function(rng, 9, trial % 2 == 1);
    double gamma = unit(rng);
    double q = 1.0 + 2.0 * unit(rng);
    double got = lq_shift_integral(f, gamma, q);
    double want = testing::overlay_integral(f, gamma, q);
    CHECK(std::abs(got - want) <= 1e-12 * std::max(1.0, want));
  }
}

TEST_CASE("omega_q examples") {
  CHECK(omega_q(indicator(), 0, 1) == 0.0);
  CHECK(omega_q(indicator(), 0.1, 1) == doctest::Approx(0.1).epsilon(1e-14));
  CHECK(omega_q(StepFunction::constant(7), 0.3, 2) == 0.0);
  CHECK(omega_q(indicator(true), 0.1, 1) == doctest::Approx(0.2).epsilon(1e-14));
  CHECK_THROWS_AS((void)omega_q(indicator(), 1.5, 1), ArgumentError);
  CHECK_THROWS_AS((void)omega_q(indicator(), 0.5, 0.9), ArgumentError);
}

TEST_CASE("omega_q is nondecreasing in delta, shift-invariant and homogeneous") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> unit(0, 1);
  for (int trial = 0; trial < 60; ++trial) {
    auto f = testing::random_step_function(rng, 7, trial % 3 == 0);
    double q = 1.0 + 2.0 * unit(rng);
    double prev = 0.0;
    for (int i = 0; i <= 40; ++i) {
      double cur = omega_q(f, i / 40.0, q);
      CHECK(cur >= prev * (1 - 1e-12));
      prev = cur;
    }
    double delta = unit(rng);
    double base = omega_q(f, delta, q);
    CHECK(close_rel(omega_q(f.plus(3.25), delta, q), base, 1e-12));
    CHECK(close_rel(omega_q(f.times(-2.5), delta, q), 2.5 * base, 1e-12));
  }
}

TEST_CASE("candidate maximum dominates a dense shift grid") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> unit(0, 1);
  for (int trial = 0; trial < 25; ++trial) {
    auto f = testing::random_step_function(rng, 8, trial % 2 == 0);
    double q = trial % 3 == 0 ? 1.0 : 1.0 + 3.0 * unit(rng);
    double delta = unit(rng);
    auto exact = omega_q_detail(f, delta, q);
    double grid_best = 0.0;
    for (int i = 0; i <= 2000; ++i) {
      grid_best = std::max(grid_best, lq_shift_distance(f, delta * i / 2000.0, q));
    }
    CHECK(exact.value >= grid_best - 1e-12);
    CHECK(lq_shift_distance(f, exact.argmax_gamma, q) == doctest::Approx(exact.value).epsilon(1e-12));
  }
}

TEST_CASE("profile is affine between candidates") {
  std::mt19937_64 rng(123);
  std::uniform_real_distribution<double> unit(0, 1);
  for (int trial = 0; trial < 40; ++trial) {
    auto f = testing::random_step_function(rng, 6, trial % 2 == 1);
    double q = 1.0 + 2.0 * unit(rng);
    auto prof = shift_profile(f, unit(rng), q);
    for (std::size_t i = 0; i + 1 < prof.gamma_breaks.size(); ++i) {
      double mid = 0.5 * (prof.gamma_breaks[i] + prof.gamma_breaks[i + 1]);
      double interp = 0.5 * (prof.integrals[i] + prof.integrals[i + 1]);
      CHECK(std::abs(lq_shift_integral(f, mid, q) - interp) <= 1e-9);
    }
  }
}

TEST_CASE("threaded candidate evaluation is order independent") {
  std::mt19937_64 rng(4);
  auto f = testing::random_step_function(rng, 40);
  auto one = omega_q_detail(f, 0.7, 1.5, 1);
  auto many = omega_q_detail(f, 0.7, 1.5, 6);
  CHECK(one.value == many.value);
  CHECK(one.argmax_gamma == many.argmax_gamma);
}
