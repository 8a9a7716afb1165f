#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace lbv {

/// Closed interval [a, b].
struct Interval {
  double a = 0.0;
  double b = 0.0;

  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Piecewise-constant function on [0, 1].
///
/// Breakpoints 0 = t_0 < t_1 < ... < t_m = 1 and values v_1..v_m, with
/// f = v_j on [t_{j-1}, t_j) and f(1) = v_m (right-continuous). The periodic
/// flag selects the wrap-around integral modulus.
class StepFunction {
 public:
  static StepFunction from_breakpoints(std::vector<double> breakpoints, std::vector<double> values,
                                       bool periodic = false);

  static StepFunction constant(double value, bool periodic = false);

  [[nodiscard]] double eval(double x) const;
  [[nodiscard]] double operator()(double x) const { return eval(x); }

  /// f(b) - f(a).
  [[nodiscard]] double increment_over(Interval interval) const;

  /// Index of the piece containing x in [0, 1] (0-based, so eval(x) == values()[piece_index(x)]).
  [[nodiscard]] std::size_t piece_index(double x) const;

  /// Values at the grid points t_0..t_m, i.e. f(t_j).
  [[nodiscard]] std::vector<double> grid_values() const;

  [[nodiscard]] std::span<const double> breakpoints() const noexcept { return breakpoints_; }
  [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
  [[nodiscard]] std::size_t pieces() const noexcept { return values_.size(); }
  [[nodiscard]] bool periodic() const noexcept { return periodic_; }

  [[nodiscard]] StepFunction plus(double c) const;
  [[nodiscard]] StepFunction times(double c) const;
  [[nodiscard]] StepFunction with_periodic(bool periodic) const;

  friend bool operator==(const StepFunction&, const StepFunction&) = default;

 private:
  StepFunction(std::vector<double> breakpoints, std::vector<double> values, bool periodic)
      : breakpoints_(std::move(breakpoints)), values_(std::move(values)), periodic_(periodic) {}

  std::vector<double> breakpoints_;
  std::vector<double> values_;
  bool periodic_ = false;
};

inline double increment_over(const StepFunction& f, Interval interval) {
  return f.increment_over(interval);
}

}  // namespace lbv
