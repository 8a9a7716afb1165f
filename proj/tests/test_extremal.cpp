#include <doctest.h>

#include <cmath>
#include <random>

#include "lbv/errors.hpp"
#include "lbv/extremal.hpp"
#include "oracles.hpp"

using namespace lbv;
using lbv::testing::close_rel;

namespace {
WatermanSequence one_two_three() { return WatermanSequence::explicit_values({1, 2, 3}); }
}  // namespace

TEST_CASE("closed form, r >= 1 picks the best block") {
  // candidates 1, 2/1.5^2 ~ 0.8889, 3/(11/6)^2 ~ 0.8926
  auto sol = solve_closed_form({one_two_three(), 3, 2.0, 1.0});
  CHECK(sol.k_star == 1);
  CHECK(sol.x == std::vector<double>{1, 0, 0});
  CHECK(sol.value == 1.0);
}

TEST_CASE("closed form, r < 1 uses the full block") {
  auto sol = solve_closed_form({one_two_three(), 3, 0.5, 1.0});
  CHECK(sol.k_star == 3);
  for (double x : sol.x) CHECK(x == doctest::Approx(6.0 / 11.0).epsilon(1e-15));
  CHECK(sol.value == doctest::Approx(3 * std::sqrt(6.0 / 11.0)).epsilon(1e-14));
  CHECK(sol.value == doctest::Approx(2.21565).epsilon(1e-5));
}

TEST_CASE("ties resolve to the smallest k") {
  auto sol = solve_closed_form({WatermanSequence::constant(1), 4, 1.0, 1.0});
  CHECK(sol.k_star == 1);
  CHECK(sol.value == 1.0);
}

TEST_CASE("validation") {
  CHECK_THROWS_AS((void)solve_closed_form({WatermanSequence::constant(1), 0, 1.0, 1.0}), ArgumentError);
  CHECK_THROWS_AS((void)solve_closed_form({WatermanSequence::constant(1), 2, 0.0, 1.0}), ArgumentError);
  CHECK_THROWS_AS((void)solve_closed_form({WatermanSequence::constant(1), 2, 1.0, -1.0}), ArgumentError);
  CHECK_THROWS_AS((void)brute_force_value({WatermanSequence::constant(1), 4, 1.0, 1.0}, 10), ArgumentError);
  CHECK_NOTHROW((void)brute_force_value({WatermanSequence::constant(1), 40, 1.0, 1.0}, 10,
                                        BruteForceMode::Vertices));
}

TEST_CASE("grid oracle examples") {
  CHECK(brute_force_value({one_two_three(), 3, 2.0, 1.0}, 200) == doctest::Approx(1.0).epsilon(0.02));
  CHECK(std::abs(brute_force_value({one_two_three(), 3, 0.5, 1.0}, 200) - 2.2156) <= 0.02);
  auto flat = WatermanSequence::constant(1);
  for (std::size_t res : {1u, 2u, 7u, 50u}) {
    CHECK(brute_force_value({flat, 2, 1.0, 1.0}, res) == 1.0);
  }
}

TEST_CASE("closed form invariants on random problems") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    auto seq = testing::random_sequence(rng);
    std::size_t n = 1 + rng() % 30;
    double r = std::uniform_real_distribution<double>(0.2, 4.0)(rng);
    double budget = std::uniform_real_distribution<double>(0.1, 5.0)(rng);
    ExtremalProblem prob{seq, n, r, budget};
    auto sol = solve_closed_form(prob);

    double used = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      used += sol.x[i] / seq.lambda_at(static_cast<std::int64_t>(i + 1));
      if (i > 0) CHECK(sol.x[i] <= sol.x[i - 1]);
      CHECK(sol.x[i] >= 0.0);
    }
    CHECK(close_rel(used, budget, 1e-12));

    double f = 0.0;
    for (double x : sol.x) f += std::pow(x, r);
    CHECK(close_rel(f, sol.value, 1e-12));

    auto unit = solve_closed_form({seq, n, r, 1.0});
    CHECK(close_rel(sol.value, std::pow(budget, r) * unit.value, 1e-12));
    CHECK(close_rel(sol.value, brute_force_value(prob, 0, BruteForceMode::Vertices), 1e-12));
  }
}

TEST_CASE("for r < 1 the full block maximises k / Lambda_k^r") {
  for (double alpha : {0.0, 0.25, 0.5, 1.0}) {
    auto seq = WatermanSequence::power(alpha);
    for (double r : {0.1, 0.5, 0.9}) {
      for (std::size_t n = 1; n <= 100; ++n) {
        ExtremalProblem prob{seq, n, r, 1.0};
        double full = block_value(prob, n);
        for (std::size_t k = 1; k < n; ++k) CHECK(block_value(prob, k) <= full);
      }
    }
  }
}
