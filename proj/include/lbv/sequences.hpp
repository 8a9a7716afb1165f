#pragma once

#include <cstdint>
#include <memory>
#include <utility>
#include <variant>
#include <vector>

namespace lbv {

/// Nondecreasing positive weights lambda_i, indexed from 1.
///
/// Partial sums of the reciprocals, Lambda_k = sum_{i<=k} 1/lambda_i, are
/// summed directly and memoised in a mutex-guarded cache shared between
/// copies. The observable value is immutable.
class WatermanSequence {
 public:
  struct Constant {
    double c;
  };
  /// lambda_i = i^alpha, 0 <= alpha <= 1.
  struct Power {
    double alpha;
  };
  /// Listed values, extended by repeating the last one.
  struct Explicit {
    std::vector<double> values;
  };
  using Kind = std::variant<Constant, Power, Explicit>;

  static WatermanSequence constant(double c);
  static WatermanSequence power(double alpha);
  static WatermanSequence explicit_values(std::vector<double> values);

  [[nodiscard]] const Kind& kind() const noexcept { return kind_; }

  [[nodiscard]] double lambda_at(std::int64_t i) const;
  [[nodiscard]] double inv_partial_sum(std::int64_t k) const;

  /// Smallest k <= k_max with Lambda_k >= target. Throws
  /// DivergenceNotWitnessed when none exists.
  [[nodiscard]] std::int64_t divergence_prefix(double target, std::int64_t k_max) const;

  /// Lambda_1..Lambda_k as a contiguous copy (index 0 holds Lambda_1).
  [[nodiscard]] std::vector<double> partial_sums(std::int64_t k) const;

 private:
  explicit WatermanSequence(Kind kind);

  struct PrefixCache;
  void ensure(std::int64_t k) const;

  Kind kind_;
  std::shared_ptr<PrefixCache> cache_;
};

/// Gauge omega on [0,1] with omega(0) = 0, optionally multiplied by a
/// positive constant.
class ModulusOfContinuity {
 public:
  struct Power {
    double beta;
  };
  /// delta^beta * (1 + log(1/delta))^(-gamma); requires gamma >= -beta so
  /// the gauge stays nondecreasing.
  struct PowerLog {
    double beta;
    double gamma;
  };
  /// Piecewise-linear through (delta, value) knots. Knots start at (0, 0),
  /// end at delta = 1, and have strictly increasing abscissae and
  /// nondecreasing values.
  struct Tabulated {
    std::vector<std::pair<double, double>> knots;
  };
  using Kind = std::variant<Power, PowerLog, Tabulated>;

  static ModulusOfContinuity power(double beta);
  static ModulusOfContinuity power_log(double beta, double gamma);
  static ModulusOfContinuity tabulated(std::vector<std::pair<double, double>> knots);

  [[nodiscard]] ModulusOfContinuity scaled(double factor) const;

  [[nodiscard]] double operator()(double delta) const;

  [[nodiscard]] const Kind& kind() const noexcept { return kind_; }
  [[nodiscard]] double scale() const noexcept { return scale_; }

 private:
  explicit ModulusOfContinuity(Kind kind) : kind_(std::move(kind)) {}

  Kind kind_;
  double scale_ = 1.0;
};

inline double omega_eval(const ModulusOfContinuity& mod, double delta) { return mod(delta); }

}  // namespace lbv
