#pragma once

#include <cstdint>
#include <vector>

#include "lbv/embedding.hpp"
#include "lbv/sequences.hpp"
#include "lbv/step_function.hpp"

namespace lbv {

/// Stage-k smallness target c * 2^(-a k). The default (4, 1) is 2^(-4k).
struct Relaxation {
  double a = 4.0;
  double c = 1.0;

  [[nodiscard]] bool is_default() const { return a == 4.0 && c == 1.0; }
  friend bool operator==(const Relaxation&, const Relaxation&) = default;
};

struct StagePlan {
  int k = 1;
  std::int64_t n = 0;  // grid count, n >= 2^(k+2)
  std::int64_t m = 0;  // largest maximiser of rho^(1/q) / Lambda_rho^(1/p) over rho <= n
  std::int64_t s = 0;  // max { j : 2j <= n/2^k + 1 }
  std::int64_t N = 0;  // spike count, min(m, s)
  double phi = 0.0;    // 1 / Lambda_m

  friend bool operator==(const StagePlan&, const StagePlan&) = default;
};

struct CounterexamplePlan {
  std::vector<StagePlan> stages;
  Relaxation relaxation;

  [[nodiscard]] int K() const { return static_cast<int>(stages.size()); }
  friend bool operator==(const CounterexamplePlan&, const CounterexamplePlan&) = default;
};

/// max { j : 2j <= n/2^k + 1 }.
[[nodiscard]] std::int64_t spike_capacity(std::int64_t n, int k);

/// Checks the structural invariants (n_k >= 2^(k+2), m_k <= n_k, the s_k and
/// N_k formulas, strictly increasing n_k); throws ArgumentError otherwise.
void validate_plan(const CounterexamplePlan& plan);

/// For each stage scans n upward from max(2^(k+2), previous n + 1) until
///   omega(1/n) (n/m)^(1/q) Lambda_m^(1/p) < c 2^(-a k).
/// Throws CriterionNotViolated when a stage reaches n_limit.
[[nodiscard]] CounterexamplePlan find_violation(const EmbeddingParams& params, int K,
                                                std::int64_t n_limit, Relaxation relaxation = {});

/// Stage-k level 2^(-k) phi_k^(1/p).
[[nodiscard]] double stage_height(const StagePlan& stage, double p);

/// Smallest closed interval holding the stage's spikes.
[[nodiscard]] Interval stage_support(const StagePlan& stage);

/// Spikes of height stage_height on
///   [2^-k + (2j-2)/n_k, 2^-k + (2j-1)/n_k),  1 <= j <= N_k,
/// summed over the plan's stages; zero elsewhere. Non-periodic.
[[nodiscard]] StepFunction build_g(const CounterexamplePlan& plan, const WatermanSequence& seq,
                                   double p);

/// g_k alone.
[[nodiscard]] StepFunction build_stage(const StagePlan& stage, double p);

struct MembershipCheck {
  int k = 0;
  double computed = 0.0;  // V(g_k)
  double bound = 0.0;     // 2^(1/p - k)
  bool exact_search = false;
  [[nodiscard]] bool ok() const { return computed <= bound * (1.0 + 1e-12); }
};

/// V(g_k) per stage. g_k takes two values, so each nonzero-change interval
/// owns at least one jump and the 2N_k-jump family is optimal; exact search
/// cross-checks it when the grid is small, the greedy bound otherwise.
[[nodiscard]] std::vector<MembershipCheck> membership_bounds(const CounterexamplePlan& plan,
                                                             const WatermanSequence& seq, double p);

/// As membership_bounds, throwing CertificationFailure on a violated bound.
std::vector<MembershipCheck> verify_membership_bound(const CounterexamplePlan& plan,
                                                     const WatermanSequence& seq, double p);

struct DivergenceCheck {
  int k = 0;
  std::int64_t n = 0;
  double omega_q = 0.0;     // omega_q(1/n_k, g), exact
  double omega = 0.0;       // omega(1/n_k)
  double ratio = 0.0;
  double guaranteed = 0.0;  // 2^k by default, 2^((a-1-1/q)k - 1/q) / c when relaxed
  double chain_lhs = 0.0;   // omega_q^q
  double chain_rhs = 0.0;   // (2N_k - 1)/n_k * 2^(-kq) * phi_k^(q/p)
  bool chain_ok = false;
  /// The shifted window [2^-k, 2^-k + (2N_k-1)/n_k] + 1/n_k reaches past
  /// 2^(1-k), i.e. into the previous stage or beyond the truncated domain,
  /// where |g(x + 1/n_k) - g(x)| need not equal the stage height.
  bool window_clipped = false;
  [[nodiscard]] bool ok() const { return ratio >= guaranteed; }
};

[[nodiscard]] double guaranteed_growth(int k, double q, Relaxation relaxation);

[[nodiscard]] std::vector<DivergenceCheck> divergence_ratios(const StepFunction& g,
                                                             const CounterexamplePlan& plan,
                                                             const EmbeddingParams& params,
                                                             unsigned threads = 1);

/// As divergence_ratios, throwing CertificationFailure when any stage misses
/// its guaranteed growth.
std::vector<DivergenceCheck> verify_divergence_ratio(const StepFunction& g,
                                                     const CounterexamplePlan& plan,
                                                     const EmbeddingParams& params,
                                                     unsigned threads = 1);

struct Certificate {
  CounterexamplePlan plan;
  StepFunction g;
  std::vector<MembershipCheck> membership;
  std::vector<DivergenceCheck> divergence;
  double norm = 0.0;       // |g(0)| + V(g), a lower bound when g is too large for exact search
  bool norm_exact = false;
  double norm_bound = 0.0;  // sum_k 2^(1/p - k)
  [[nodiscard]] bool passed() const;
};

/// Builds g for the plan and runs every check without throwing.
[[nodiscard]] Certificate certify(const CounterexamplePlan& plan, const EmbeddingParams& params,
                                  unsigned threads = 1);

}  // namespace lbv
