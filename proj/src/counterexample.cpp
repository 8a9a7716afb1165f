#include "lbv/counterexample.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <tuple>

#include "lbv/errors.hpp"
#include "lbv/modulus.hpp"
#include "lbv/variation.hpp"

namespace lbv {
namespace {

constexpr int kMaxStage = 40;

std::int64_t pow2(int e) { return std::int64_t{1} << e; }

/// (n + i 2^k) / (2^k n), correctly rounded: 2^-k + i/n.
double spike_edge(const StagePlan& st, std::int64_t i) {
  const std::int64_t scale = pow2(st.k);
  return static_cast<double>(st.n + i * scale) / static_cast<double>(scale * st.n);
}

struct Piece {
  double lo;
  double hi;
  double value;
};

void append_stage(std::vector<Piece>& out, const StagePlan& st, double p) {
  const double h = stage_height(st, p);
  for (std::int64_t j = 1; j <= st.N; ++j) {
    out.push_back({spike_edge(st, 2 * j - 2), spike_edge(st, 2 * j - 1), h});
  }
}

StepFunction assemble(std::vector<Piece> pieces) {
  std::sort(pieces.begin(), pieces.end(), [](const Piece& x, const Piece& y) { return x.lo < y.lo; });
  std::vector<double> t{0.0};
  std::vector<double> v;
  double last = 0.0;
  for (const auto& pc : pieces) {
    if (pc.lo < last) throw std::logic_error("counterexample spikes overlap");
    if (pc.lo > last) {
      t.push_back(pc.lo);
      v.push_back(0.0);
    }
    t.push_back(pc.hi);
    v.push_back(pc.value);
    last = pc.hi;
  }
  if (last < 1.0) {
    t.push_back(1.0);
    v.push_back(0.0);
  }
  return StepFunction::from_breakpoints(std::move(t), std::move(v), false);
}

}  // namespace

std::int64_t spike_capacity(std::int64_t n, int k) {
  // 2j <= n/2^k + 1  <=>  j <= (n + 2^k) / 2^(k+1)
  return (n + pow2(k)) / pow2(k + 1);
}

void validate_plan(const CounterexamplePlan& plan) {
  if (!(plan.relaxation.a > 0.0) || !(plan.relaxation.c > 0.0)) {
    throw ArgumentError("relaxation requires a > 0 and c > 0");
  }
  std::int64_t prev = 0;
  for (std::size_t i = 0; i < plan.stages.size(); ++i) {
    const auto& st = plan.stages[i];
    auto where = " at stage " + std::to_string(i + 1);
    if (st.k != static_cast<int>(i) + 1) throw ArgumentError("stages must be numbered 1..K" + where);
    if (st.k > kMaxStage) throw ArgumentError("too many stages" + where);
    if (st.n < pow2(st.k + 2)) throw ArgumentError("n_k >= 2^(k+2) fails" + where);
    if (st.n <= prev) throw ArgumentError("n_k must be strictly increasing" + where);
    if (st.m < 1 || st.m > st.n) throw ArgumentError("1 <= m_k <= n_k fails" + where);
    if (st.s != spike_capacity(st.n, st.k)) throw ArgumentError("s_k does not match n_k" + where);
    if (st.N != std::min(st.m, st.s)) throw ArgumentError("N_k != min(m_k, s_k)" + where);
    if (!(st.phi > 0.0)) throw ArgumentError("phi_k must be positive" + where);
    prev = st.n;
  }
}

CounterexamplePlan find_violation(const EmbeddingParams& params, int K, std::int64_t n_limit,
                                  Relaxation relaxation) {
  validate(params);
  if (K < 0) throw ArgumentError("stage count K must be >= 0");
  if (K > kMaxStage) throw ArgumentError("stage count K must be <= " + std::to_string(kMaxStage));
  if (!(relaxation.a > 0.0) || !(relaxation.c > 0.0)) {
    throw ArgumentError("relaxation requires a > 0 and c > 0");
  }

  CounterexamplePlan plan;
  plan.relaxation = relaxation;

  // running largest maximiser of rho^(1/q) / Lambda_rho^(1/p) over rho <= scanned
  std::int64_t scanned = 0;
  double best = -1.0;
  std::int64_t arg = 0;
  auto advance_to = [&](std::int64_t n) {
    for (std::int64_t rho = scanned + 1; rho <= n; ++rho) {
      double r = std::pow(static_cast<double>(rho), 1.0 / params.q) /
                 std::pow(params.seq.inv_partial_sum(rho), 1.0 / params.p);
      if (r >= best) {
        best = r;
        arg = rho;
      }
    }
    scanned = std::max(scanned, n);
  };

  std::int64_t prev = 0;
  for (int k = 1; k <= K; ++k) {
    const double target = relaxation.c * std::exp2(-relaxation.a * k);
    std::int64_t n = std::max(pow2(k + 2), prev + 1);
    bool found = false;
    for (; n <= n_limit; ++n) {
      advance_to(n);
      double w = params.mod(1.0 / static_cast<double>(n));
      if (!(w > 0.0)) throw DegenerateModulus("omega(1/n) = 0 at n = " + std::to_string(n));
      double lhs = w * std::pow(static_cast<double>(n) / static_cast<double>(arg), 1.0 / params.q) *
                   std::pow(params.seq.inv_partial_sum(arg), 1.0 / params.p);
      if (lhs < target) {
        found = true;
        break;
      }
    }
    if (!found) {
      throw CriterionNotViolated("stage " + std::to_string(k) + ": no n <= " +
                                 std::to_string(n_limit) + " violates the criterion at level " +
                                 std::to_string(target));
    }
    StagePlan st;
    st.k = k;
    st.n = n;
    st.m = arg;
    st.s = spike_capacity(n, k);
    st.N = std::min(st.m, st.s);
    st.phi = 1.0 / params.seq.inv_partial_sum(st.m);
    plan.stages.push_back(st);
    prev = n;
  }
  return plan;
}

double stage_height(const StagePlan& stage, double p) {
  return std::exp2(-stage.k) * std::pow(stage.phi, 1.0 / p);
}

Interval stage_support(const StagePlan& stage) {
  return {spike_edge(stage, 0), spike_edge(stage, 2 * stage.N - 1)};
}

StepFunction build_stage(const StagePlan& stage, double p) {
  std::vector<Piece> pieces;
  append_stage(pieces, stage, p);
  return assemble(std::move(pieces));
}

StepFunction build_g(const CounterexamplePlan& plan, const WatermanSequence& seq, double p) {
  (void)seq;  // heights only need phi_k, which the plan already carries
  if (!(p >= 1.0)) throw ArgumentError("p must be >= 1");
  validate_plan(plan);
  std::vector<Piece> pieces;
  for (const auto& st : plan.stages) append_stage(pieces, st, p);
  return assemble(std::move(pieces));
}

std::vector<MembershipCheck> membership_bounds(const CounterexamplePlan& plan,
                                               const WatermanSequence& seq, double p) {
  validate_plan(plan);
  std::vector<MembershipCheck> out;
  for (const auto& st : plan.stages) {
    auto gk = build_stage(st, p);
    // every consecutive grid interval of g_k carries exactly one jump
    IntervalFamily jumps;
    auto t = gk.breakpoints();
    for (std::size_t j = 0; j + 1 < t.size(); ++j) {
      if (gk.increment_over({t[j], t[j + 1]}) != 0.0) jumps.push_back({t[j], t[j + 1]});
    }
    MembershipCheck chk;
    chk.k = st.k;
    chk.computed = family_value(gk, jumps, seq, p);
    chk.bound = std::exp2(1.0 / p - st.k);

    VariationResult search = t.size() <= kDefaultExactLimit ? variation_exact(gk, seq, p)
                                                            : variation_greedy(gk, seq, p);
    chk.exact_search = search.exact;
    if (search.value > chk.computed * (1.0 + 1e-12)) {
      throw CertificationFailure("stage " + std::to_string(st.k) +
                                 ": a family beats the jump family of a two-valued function");
    }
    out.push_back(chk);
  }
  return out;
}

std::vector<MembershipCheck> verify_membership_bound(const CounterexamplePlan& plan,
                                                     const WatermanSequence& seq, double p) {
  auto out = membership_bounds(plan, seq, p);
  for (const auto& c : out) {
    if (!c.ok()) {
      throw CertificationFailure("stage " + std::to_string(c.k) + ": V(g_k) = " +
                                 std::to_string(c.computed) + " exceeds " + std::to_string(c.bound));
    }
  }
  return out;
}

double guaranteed_growth(int k, double q, Relaxation relaxation) {
  if (relaxation.is_default()) return std::exp2(k);
  return std::exp2((relaxation.a - 1.0 - 1.0 / q) * k - 1.0 / q) / relaxation.c;
}

std::vector<DivergenceCheck> divergence_ratios(const StepFunction& g, const CounterexamplePlan& plan,
                                               const EmbeddingParams& params, unsigned threads) {
  validate(params);
  validate_plan(plan);
  std::vector<DivergenceCheck> out;
  for (const auto& st : plan.stages) {
    DivergenceCheck chk;
    chk.k = st.k;
    chk.n = st.n;
    const double delta = 1.0 / static_cast<double>(st.n);
    chk.omega_q = omega_q(g, delta, params.q, threads);
    chk.omega = params.mod(delta);
    chk.ratio = chk.omega > 0.0 ? chk.omega_q / chk.omega : 0.0;
    chk.guaranteed = guaranteed_growth(st.k, params.q, plan.relaxation);
    chk.chain_lhs = std::pow(chk.omega_q, params.q);
    chk.chain_rhs = static_cast<double>(2 * st.N - 1) / static_cast<double>(st.n) *
                    std::exp2(-st.k * params.q) * std::pow(st.phi, params.q / params.p);
    chk.chain_ok = chk.chain_lhs >= chk.chain_rhs * (1.0 - 1e-12);
    chk.window_clipped = stage_support(st).b + delta > std::exp2(1 - st.k);
    out.push_back(chk);
  }
  return out;
}

std::vector<DivergenceCheck> verify_divergence_ratio(const StepFunction& g,
                                                     const CounterexamplePlan& plan,
                                                     const EmbeddingParams& params,
                                                     unsigned threads) {
  auto out = divergence_ratios(g, plan, params, threads);
  for (const auto& c : out) {
    if (!c.ok()) {
      throw CertificationFailure("stage " + std::to_string(c.k) + ": ratio " +
                                 std::to_string(c.ratio) + " below guaranteed " +
                                 std::to_string(c.guaranteed));
    }
  }
  return out;
}

bool Certificate::passed() const {
  auto ok = [](const auto& c) { return c.ok(); };
  return std::all_of(membership.begin(), membership.end(), ok) &&
         std::all_of(divergence.begin(), divergence.end(), ok) && norm <= norm_bound + 1e-9;
}

Certificate certify(const CounterexamplePlan& plan, const EmbeddingParams& params, unsigned threads) {
  Certificate cert{plan, build_g(plan, params.seq, params.p), {}, {}, 0.0, false, 0.0};
  cert.membership = membership_bounds(plan, params.seq, params.p);
  cert.divergence = divergence_ratios(cert.g, plan, params, threads);
  auto v = variation(cert.g, params.seq, params.p);
  cert.norm = std::abs(cert.g.eval(0.0)) + v.value;
  cert.norm_exact = v.exact;
  for (const auto& st : plan.stages) cert.norm_bound += std::exp2(1.0 / params.p - st.k);
  return cert;
}

}  // namespace lbv
