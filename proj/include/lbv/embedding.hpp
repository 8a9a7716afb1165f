#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "lbv/sequences.hpp"
#include "lbv/step_function.hpp"
#include "lbv/variation.hpp"

namespace lbv {

struct EmbeddingParams {
  WatermanSequence seq;
  ModulusOfContinuity mod;
  double p = 1.0;
  double q = 1.0;
};

void validate(const EmbeddingParams& params);

struct CriterionTerm {
  std::int64_t n = 1;
  double value = 0.0;
  std::int64_t k_star = 1;  // smallest maximiser of k^(1/q) / Lambda_k^(1/p)
};

/// E_n = max_{k<=n} k^(1/q) / Lambda_k^(1/p)  /  (omega(1/n) n^(1/q)).
/// The inner maximum is a full scan. Throws DegenerateModulus when
/// omega(1/n) = 0.
[[nodiscard]] CriterionTerm criterion_evaluate(const EmbeddingParams& params, std::int64_t n);

[[nodiscard]] inline double criterion_term(const EmbeddingParams& params, std::int64_t n) {
  return criterion_evaluate(params, n).value;
}

[[nodiscard]] inline std::int64_t criterion_argmax(const EmbeddingParams& params, std::int64_t n) {
  return criterion_evaluate(params, n).k_star;
}

/// E_1..E_{n_max} in one pass; entry n-1 is bit-identical to
/// criterion_evaluate(params, n).
[[nodiscard]] std::vector<CriterionTerm> criterion_series(const EmbeddingParams& params,
                                                          std::int64_t n_max);

/// 1 / (omega(1/n) Lambda_n^(1/p)); only defined for p >= q, where it agrees
/// with E_n. Throws CorollaryInapplicable when p < q.
[[nodiscard]] double corollary_term(const EmbeddingParams& params, std::int64_t n);

/// Right-hand side of
///   omega_q(1/n, f) <= V(f) * ((1/n) max_{k<=n} k / Lambda_k^(q/p))^(1/q)
/// with V(f) computed exactly. The inequality is for the truncated
/// (non-periodic) modulus.
[[nodiscard]] double sufficiency_bound(const StepFunction& f, const EmbeddingParams& params,
                                       std::int64_t n, std::size_t limit = kDefaultExactLimit);

enum class Verdict { Bounded, Divergent, Inconclusive };

[[nodiscard]] std::string_view to_string(Verdict v);

struct EmbeddingReport {
  std::vector<std::int64_t> sampled_n;
  std::vector<double> terms;
  std::vector<std::int64_t> argmax_k;
  double sup_term = 0.0;
  double slope = 0.0;  // least squares of log E_n on log n, last half of samples
  double median_term = 0.0;
  double last_quarter_max = 0.0;
  double first_term = 0.0;
  double last_term = 0.0;
  Verdict verdict = Verdict::Inconclusive;
};

inline constexpr double kSlopeThreshold = 0.05;
inline constexpr double kPlateauRatio = 1.1;
inline constexpr double kGrowthFactor = 10.0;

/// Geometric sample sizes round(n_max^(i/(samples-1))), deduplicated.
[[nodiscard]] std::vector<std::int64_t> geometric_samples(std::int64_t n_max, std::size_t samples);

/// Finite-scale reading of limsup E_n.
///   bounded:   slope < 0.05 and last-quarter max <= 1.1 * median
///   divergent: slope > 0.05 and E_{n_max} > 10 * E_{first sample}
///   otherwise inconclusive.
[[nodiscard]] EmbeddingReport embed_report(const EmbeddingParams& params, std::int64_t n_max,
                                           std::size_t samples);

}  // namespace lbv
