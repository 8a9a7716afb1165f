#pragma once

#include <cstddef>
#include <vector>

#include "lbv/sequences.hpp"

namespace lbv {

/// maximise sum_i x_i^r  subject to  sum_i x_i / lambda_i <= budget,
///                                   x_1 >= x_2 >= ... >= x_n >= 0.
struct ExtremalProblem {
  WatermanSequence seq;
  std::size_t n = 1;
  double r = 1.0;
  double budget = 1.0;
};

struct ExtremalSolution {
  std::size_t k_star = 1;
  std::vector<double> x;
  double value = 0.0;
};

/// Block maximiser x_1 = ... = x_k = budget / Lambda_k, rest zero.
///
/// For r >= 1, k maximises k / Lambda_k^r (smallest on ties). For r < 1 the
/// full block k = n is optimal: x nonincreasing against nondecreasing lambda
/// forces sum x_i <= n budget / Lambda_n, and Hoelder does the rest.
[[nodiscard]] ExtremalSolution solve_closed_form(const ExtremalProblem& prob);

/// budget^r * k / Lambda_k^r, the objective at the k-th block vector.
[[nodiscard]] double block_value(const ExtremalProblem& prob, std::size_t k);

enum class BruteForceMode { Grid, Vertices };

inline constexpr std::size_t kMaxGridDimension = 3;

/// Independent check of the closed form.
///
/// Grid: exhaustive over nonincreasing vectors with coordinates on multiples
/// of budget/resolution that satisfy the constraint (n <= 3, otherwise
/// ArgumentError). Vertices: the best of the n block vectors.
[[nodiscard]] double brute_force_value(const ExtremalProblem& prob, std::size_t resolution,
                                       BruteForceMode mode = BruteForceMode::Grid);

}  // namespace lbv
