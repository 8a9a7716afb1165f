#include <doctest.h>

#include <cmath>
#include <thread>
#include <vector>

#include "lbv/errors.hpp"
#include "lbv/sequences.hpp"

using namespace lbv;

TEST_CASE("lambda_at") {
  CHECK(WatermanSequence::power(1).lambda_at(3) == 3.0);
  CHECK(WatermanSequence::constant(1).lambda_at(1'000'000) == 1.0);
  CHECK(WatermanSequence::explicit_values({1, 2, 5}).lambda_at(7) == 5.0);
  CHECK(WatermanSequence::explicit_values({1, 2, 5}).lambda_at(2) == 2.0);
  CHECK_THROWS_AS((void)WatermanSequence::power(1).lambda_at(0), ArgumentError);
  CHECK_THROWS_AS((void)WatermanSequence::power(1).lambda_at(-3), ArgumentError);
}

TEST_CASE("construction rejects invalid sequences") {
  CHECK_THROWS_AS(WatermanSequence::constant(0), ArgumentError);
  CHECK_THROWS_AS(WatermanSequence::power(1.5), ArgumentError);
  CHECK_THROWS_AS(WatermanSequence::power(-0.1), ArgumentError);
  CHECK_THROWS_AS(WatermanSequence::explicit_values({}), ArgumentError);
  CHECK_THROWS_AS(WatermanSequence::explicit_values({2, 1}), ArgumentError);
  CHECK_THROWS_AS(WatermanSequence::explicit_values({1, -1}), ArgumentError);
}

TEST_CASE("inv_partial_sum") {
  CHECK(WatermanSequence::constant(1).inv_partial_sum(5) == 5.0);
  auto h = WatermanSequence::power(1);
  CHECK(h.inv_partial_sum(3) == doctest::Approx(11.0 / 6.0).epsilon(1e-15));
  CHECK(h.inv_partial_sum(4) == doctest::Approx(25.0 / 12.0).epsilon(1e-15));
  CHECK_THROWS_AS((void)h.inv_partial_sum(0), ArgumentError);
}

TEST_CASE("divergence_prefix") {
  CHECK(WatermanSequence::constant(1).divergence_prefix(3, 100) == 3);
  // H_3 = 11/6 < 2 <= H_4 = 25/12
  CHECK(WatermanSequence::power(1).divergence_prefix(2, 100) == 4);
  CHECK_THROWS_AS((void)WatermanSequence::power(1).divergence_prefix(100, 10), DivergenceNotWitnessed);
  // reaching past an already-filled cache
  auto h = WatermanSequence::power(1);
  (void)h.inv_partial_sum(5000);
  CHECK(h.divergence_prefix(2, 100) == 4);
  CHECK(h.divergence_prefix(9, 1'000'000) == 4550);
  CHECK_THROWS_AS((void)h.divergence_prefix(9, 4549), DivergenceNotWitnessed);
}

TEST_CASE("prefix sums and monotonicity properties") {
  const std::vector<WatermanSequence> seqs{
      WatermanSequence::constant(2.5), WatermanSequence::power(0.0), WatermanSequence::power(0.3),
      WatermanSequence::power(1.0), WatermanSequence::explicit_values({0.5, 0.5, 1, 3, 3, 7})};
  for (const auto& seq : seqs) {
    double prev_lam = seq.lambda_at(1);
    double prev_sum = seq.inv_partial_sum(1);
    for (std::int64_t k = 1; k < 5000; ++k) {
      double lam = seq.lambda_at(k + 1);
      double sum = seq.inv_partial_sum(k + 1);
      CHECK(lam >= prev_lam);
      CHECK(sum > prev_sum);
      CHECK(std::abs((sum - prev_sum) - 1.0 / lam) <= 1e-12 * sum);
      prev_lam = lam;
      prev_sum = sum;
    }
  }
}

TEST_CASE("concurrent prefix queries agree with a sequential pass") {
  auto seq = WatermanSequence::power(0.5);
  auto reference = WatermanSequence::power(0.5).partial_sums(20000);
  std::vector<std::jthread> pool;
  std::vector<int> mismatches(8, 0);
  for (int w = 0; w < 8; ++w) {
    pool.emplace_back([&, w] {
      for (std::int64_t k = 20000 - w; k >= 1; k -= 97) {
        if (seq.inv_partial_sum(k) != reference[static_cast<std::size_t>(k - 1)]) ++mismatches[w];
      }
    });
  }
  pool.clear();
  for (int m : mismatches) CHECK(m == 0);
}

TEST_CASE("omega_eval") {
  CHECK(ModulusOfContinuity::power(0.5)(0.25) == 0.5);
  CHECK(ModulusOfContinuity::power(2)(0) == 0.0);
  CHECK(ModulusOfContinuity::power_log(0.5, 1)(0) == 0.0);
  auto tab = ModulusOfContinuity::tabulated({{0, 0}, {0.5, 0.2}, {1, 0.4}});
  CHECK(tab(0.25) == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(tab(0) == 0.0);
  CHECK(tab(1) == doctest::Approx(0.4));
  CHECK_THROWS_AS((void)tab(1.5), ArgumentError);
  CHECK_THROWS_AS((void)tab(-0.1), ArgumentError);
  CHECK(ModulusOfContinuity::power(1).scaled(3)(0.5) == 1.5);
}

TEST_CASE("modulus construction rejects illegal gauges") {
  CHECK_THROWS_AS(ModulusOfContinuity::power(0), ArgumentError);
  CHECK_THROWS_AS(ModulusOfContinuity::power_log(0.5, -0.7), ArgumentError);
  // jump encoded as a repeated abscissa
  CHECK_THROWS_AS(ModulusOfContinuity::tabulated({{0, 0}, {0.5, 0.1}, {0.5, 0.3}, {1, 1}}), ArgumentError);
  CHECK_THROWS_AS(ModulusOfContinuity::tabulated({{0, 0.1}, {1, 1}}), ArgumentError);
  CHECK_THROWS_AS(ModulusOfContinuity::tabulated({{0, 0}, {0.5, 0.3}, {1, 0.2}}), ArgumentError);
  CHECK_THROWS_AS(ModulusOfContinuity::tabulated({{0, 0}, {0.5, 0.3}}), ArgumentError);
}

TEST_CASE("moduli are nondecreasing on a 1001-point grid") {
  const std::vector<ModulusOfContinuity> mods{
      ModulusOfContinuity::power(0.5), ModulusOfContinuity::power(2),
      ModulusOfContinuity::power_log(1, 2), ModulusOfContinuity::power_log(0.5, -0.5),
      ModulusOfContinuity::tabulated({{0, 0}, {0.1, 0}, {0.3, 0.5}, {1, 0.6}})};
  for (const auto& w : mods) {
    double prev = w(0);
    CHECK(prev == 0.0);
    for (int i = 1; i <= 1000; ++i) {
      double cur = w(i / 1000.0);
      CHECK(cur >= prev);
      prev = cur;
    }
  }
}
