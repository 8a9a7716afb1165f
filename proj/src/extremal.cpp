#include "lbv/extremal.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lbv/errors.hpp"

namespace lbv {
namespace {

void validate(const ExtremalProblem& prob) {
  if (prob.n < 1) throw ArgumentError("extremal problem needs n >= 1");
  if (!(prob.r > 0.0) || !std::isfinite(prob.r)) throw ArgumentError("extremal exponent r must be > 0");
  if (!(prob.budget > 0.0) || !std::isfinite(prob.budget)) {
    throw ArgumentError("extremal budget must be > 0");
  }
}

struct GridSearch {
  const ExtremalProblem& prob;
  std::vector<double> lambdas;
  double step;
  std::vector<double> x;
  double best = 0.0;

  void descend(std::size_t i, double used, long cap) {
    if (i == prob.n) {
      double f = 0.0;
      for (double xi : x) f += std::pow(xi, prob.r);
      best = std::max(best, f);
      return;
    }
    for (long s = 0; s <= cap; ++s) {
      double xi = static_cast<double>(s) * step;
      double next = used + xi / lambdas[i];
      // exact grid points on the constraint boundary are admitted up to rounding
      if (next > prob.budget * (1.0 + 1e-12)) break;
      x[i] = xi;
      descend(i + 1, next, s);
    }
  }
};

}  // namespace

double block_value(const ExtremalProblem& prob, std::size_t k) {
  double lam = prob.seq.inv_partial_sum(static_cast<std::int64_t>(k));
  return std::pow(prob.budget, prob.r) * static_cast<double>(k) / std::pow(lam, prob.r);
}

ExtremalSolution solve_closed_form(const ExtremalProblem& prob) {
  validate(prob);
  ExtremalSolution sol;
  if (prob.r < 1.0) {
    sol.k_star = prob.n;
  } else {
    double best = -1.0;
    for (std::size_t k = 1; k <= prob.n; ++k) {
      double v = block_value(prob, k);
      if (v > best) {
        best = v;
        sol.k_star = k;
      }
    }
  }
  sol.value = block_value(prob, sol.k_star);
  double level = prob.budget / prob.seq.inv_partial_sum(static_cast<std::int64_t>(sol.k_star));
  sol.x.assign(prob.n, 0.0);
  std::fill_n(sol.x.begin(), sol.k_star, level);
  return sol;
}

double brute_force_value(const ExtremalProblem& prob, std::size_t resolution, BruteForceMode mode) {
  validate(prob);
  if (mode == BruteForceMode::Vertices) {
    // evaluate each block vertex x = (c, ..., c, 0, ..., 0) directly
    double best = 0.0;
    double lam = 0.0;
    for (std::size_t k = 1; k <= prob.n; ++k) {
      lam += 1.0 / prob.seq.lambda_at(static_cast<std::int64_t>(k));
      const double c = prob.budget / lam;
      double f = 0.0;
      for (std::size_t i = 0; i < k; ++i) f += std::pow(c, prob.r);
      best = std::max(best, f);
    }
    return best;
  }
  if (prob.n > kMaxGridDimension) {
    throw ArgumentError("grid brute force refused for n = " + std::to_string(prob.n) +
                        " (limit " + std::to_string(kMaxGridDimension) + ")");
  }
  if (resolution < 1) throw ArgumentError("grid resolution must be >= 1");
  GridSearch search{prob, {}, prob.budget / static_cast<double>(resolution), {}, 0.0};
  for (std::size_t i = 1; i <= prob.n; ++i) {
    search.lambdas.push_back(prob.seq.lambda_at(static_cast<std::int64_t>(i)));
  }
  search.x.assign(prob.n, 0.0);
  // x_1 <= budget * lambda_1
  long cap = static_cast<long>(std::floor(static_cast<double>(resolution) * search.lambdas[0] + 1e-9));
  search.descend(0, 0.0, cap);
  return search.best;
}

}  // namespace lbv
