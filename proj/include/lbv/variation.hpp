#pragma once

#include <cstddef>
#include <vector>

#include "lbv/sequences.hpp"
#include "lbv/step_function.hpp"

namespace lbv {

/// Nonoverlapping closed intervals (shared endpoints allowed), kept sorted by
/// left endpoint.
using IntervalFamily = std::vector<Interval>;

struct VariationResult {
  double value = 0.0;
  IntervalFamily witness;
  bool exact = false;
};

inline constexpr std::size_t kDefaultExactLimit = 16;

/// (sum_j c_(j)^p / lambda_j)^(1/p) where c_(1) >= c_(2) >= ... are the
/// absolute increments of f over the family. Pairing the largest change with
/// the smallest weight maximises the sum over all orderings of the family.
///
/// Every endpoint must be a breakpoint of f and every interval nondegenerate;
/// otherwise ArgumentError.
[[nodiscard]] double family_value(const StepFunction& f, const IntervalFamily& family,
                                  const WatermanSequence& seq, double p);

/// Exact p-Lambda-variation by depth-first enumeration of families on the
/// breakpoint grid with branch-and-bound. Throws ExactModeRefused when f has
/// more than `limit` breakpoints.
///
/// Among equal-valued families the witness is the one with the fewest
/// intervals, then lexicographically smallest left endpoints, then right
/// endpoints.
[[nodiscard]] VariationResult variation_exact(const StepFunction& f, const WatermanSequence& seq,
                                              double p, std::size_t limit = kDefaultExactLimit);

/// Lower bound from steepest-ascent local search started at the monotone-run
/// family. Moves: merge neighbours, drop one interval, shift one endpoint to
/// an adjacent breakpoint.
[[nodiscard]] VariationResult variation_greedy(const StepFunction& f, const WatermanSequence& seq,
                                               double p);

/// Exact when f has at most `limit` breakpoints, greedy otherwise.
[[nodiscard]] VariationResult variation(const StepFunction& f, const WatermanSequence& seq, double p,
                                        std::size_t limit = kDefaultExactLimit);

/// |f(0)| + V(f), with V from variation(). In greedy mode this is a lower bound.
[[nodiscard]] double lambda_p_norm(const StepFunction& f, const WatermanSequence& seq, double p,
                                   std::size_t limit = kDefaultExactLimit);

}  // namespace lbv
