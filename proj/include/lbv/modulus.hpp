#pragma once

#include <cstddef>
#include <vector>

#include "lbv/step_function.hpp"

namespace lbv {

/// Integral of |f(t + gamma) - f(t)|^q over [0, 1 - gamma], or over [0, 1]
/// with wrap-around when f is periodic. Exact: the grids of f and of its
/// translate are overlaid and each cell contributes |v_a - v_b|^q * length.
[[nodiscard]] double lq_shift_integral(const StepFunction& f, double gamma, double q);

/// q-th root of lq_shift_integral.
[[nodiscard]] double lq_shift_distance(const StepFunction& f, double gamma, double q);

/// Shifts in [0, delta] at which gamma -> lq_shift_integral can change slope:
/// 0, delta, and every pairwise breakpoint difference (mod 1 when periodic)
/// that falls in the range. Sorted and deduplicated.
[[nodiscard]] std::vector<double> shift_candidates(const StepFunction& f, double delta);

struct ShiftDistanceProfile {
  std::vector<double> gamma_breaks;
  std::vector<double> integrals;  // q-th powers
  std::vector<double> distances;
};

[[nodiscard]] ShiftDistanceProfile shift_profile(const StepFunction& f, double delta, double q);

struct ModulusResult {
  double value = 0.0;
  double argmax_gamma = 0.0;  // smallest maximising shift
};

/// omega_q(delta, f) = sup_{0 <= gamma <= delta} lq_shift_distance(f, gamma, q).
/// The q-th power of the distance is piecewise affine in gamma with kinks
/// only at shift_candidates, so the supremum is a maximum over that set.
/// Candidates may be evaluated on `threads` workers; the result does not
/// depend on the thread count.
[[nodiscard]] ModulusResult omega_q_detail(const StepFunction& f, double delta, double q,
                                           unsigned threads = 1);

[[nodiscard]] inline double omega_q(const StepFunction& f, double delta, double q,
                                    unsigned threads = 1) {
  return omega_q_detail(f, delta, q, threads).value;
}

}  // namespace lbv
