#include "lbv/step_function.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lbv/errors.hpp"

namespace lbv {

StepFunction StepFunction::from_breakpoints(std::vector<double> breakpoints,
                                            std::vector<double> values, bool periodic) {
  if (values.empty()) throw ConstructionError("step function needs at least one piece");
  if (breakpoints.size() != values.size() + 1) {
    throw ConstructionError("step function needs |breakpoints| = |values| + 1 (got " +
                            std::to_string(breakpoints.size()) + " and " +
                            std::to_string(values.size()) + ")");
  }
  if (breakpoints.front() != 0.0 || breakpoints.back() != 1.0) {
    throw ConstructionError("step function breakpoints must start at 0 and end at 1");
  }
  for (std::size_t j = 1; j < breakpoints.size(); ++j) {
    if (!(breakpoints[j] > breakpoints[j - 1])) {
      throw ConstructionError("step function breakpoints must be strictly increasing");
    }
  }
  for (double v : values) {
    if (!std::isfinite(v)) throw ConstructionError("step function values must be finite");
  }
  return StepFunction(std::move(breakpoints), std::move(values), periodic);
}

StepFunction StepFunction::constant(double value, bool periodic) {
  return from_breakpoints({0.0, 1.0}, {value}, periodic);
}

std::size_t StepFunction::piece_index(double x) const {
  if (!(x >= 0.0 && x <= 1.0)) throw ArgumentError("step function argument outside [0, 1]");
  auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
  auto j = static_cast<std::size_t>(it - breakpoints_.begin());
  // j >= 1 since t_0 = 0 <= x; x = 1 lands past the end
  return std::min(j - 1, values_.size() - 1);
}

double StepFunction::eval(double x) const {
  if (periodic_ && std::isfinite(x) && (x < 0.0 || x > 1.0)) {
    x -= std::floor(x);
  }
  return values_[piece_index(x)];
}

double StepFunction::increment_over(Interval interval) const {
  if (!(interval.a <= interval.b)) throw ArgumentError("interval requires a <= b");
  if (!(interval.a >= 0.0 && interval.b <= 1.0)) {
    throw ArgumentError("interval must lie inside [0, 1]");
  }
  return values_[piece_index(interval.b)] - values_[piece_index(interval.a)];
}

std::vector<double> StepFunction::grid_values() const {
  std::vector<double> out(values_.begin(), values_.end());
  out.push_back(values_.back());
  return out;
}

StepFunction StepFunction::plus(double c) const {
  auto v = values_;
  for (double& x : v) x += c;
  return from_breakpoints(breakpoints_, std::move(v), periodic_);
}

StepFunction StepFunction::times(double c) const {
  auto v = values_;
  for (double& x : v) x *= c;
  return from_breakpoints(breakpoints_, std::move(v), periodic_);
}

StepFunction StepFunction::with_periodic(bool periodic) const {
  return StepFunction(breakpoints_, values_, periodic);
}

}  // namespace lbv
