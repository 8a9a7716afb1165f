#include "lbv/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lbv/errors.hpp"

namespace lbv {
namespace {

double inner_ratio(std::int64_t k, double lam, double p, double q) {
  return std::pow(static_cast<double>(k), 1.0 / q) / std::pow(lam, 1.0 / p);
}

double gauge_at(const EmbeddingParams& params, std::int64_t n) {
  double w = params.mod(1.0 / static_cast<double>(n));
  if (!(w > 0.0)) {
    throw DegenerateModulus("omega(1/n) = 0 at n = " + std::to_string(n));
  }
  return w;
}

double finish(const EmbeddingParams& params, std::int64_t n, double inner) {
  return inner / (gauge_at(params, n) * std::pow(static_cast<double>(n), 1.0 / params.q));
}

}  // namespace

void validate(const EmbeddingParams& params) {
  if (!(params.p >= 1.0) || !std::isfinite(params.p)) throw ArgumentError("p must be >= 1");
  if (!(params.q >= 1.0) || !std::isfinite(params.q)) throw ArgumentError("q must be >= 1");
}

CriterionTerm criterion_evaluate(const EmbeddingParams& params, std::int64_t n) {
  validate(params);
  if (n < 1) throw ArgumentError("criterion index n must be >= 1");
  auto sums = params.seq.partial_sums(n);
  CriterionTerm out{n, 0.0, 1};
  double best = -1.0;
  for (std::int64_t k = 1; k <= n; ++k) {
    double r = inner_ratio(k, sums[static_cast<std::size_t>(k - 1)], params.p, params.q);
    if (r > best) {
      best = r;
      out.k_star = k;
    }
  }
  out.value = finish(params, n, best);
  return out;
}

std::vector<CriterionTerm> criterion_series(const EmbeddingParams& params, std::int64_t n_max) {
  validate(params);
  if (n_max < 1) throw ArgumentError("n_max must be >= 1");
  auto sums = params.seq.partial_sums(n_max);
  std::vector<CriterionTerm> out;
  out.reserve(static_cast<std::size_t>(n_max));
  double best = -1.0;
  std::int64_t arg = 1;
  for (std::int64_t n = 1; n <= n_max; ++n) {
    double r = inner_ratio(n, sums[static_cast<std::size_t>(n - 1)], params.p, params.q);
    if (r > best) {
      best = r;
      arg = n;
    }
    out.push_back({n, finish(params, n, best), arg});
  }
  return out;
}

double corollary_term(const EmbeddingParams& params, std::int64_t n) {
  validate(params);
  if (params.p < params.q) {
    throw CorollaryInapplicable("the simplified criterion requires p >= q");
  }
  if (n < 1) throw ArgumentError("criterion index n must be >= 1");
  double lam = params.seq.inv_partial_sum(n);
  return 1.0 / (gauge_at(params, n) * std::pow(lam, 1.0 / params.p));
}

double sufficiency_bound(const StepFunction& f, const EmbeddingParams& params, std::int64_t n,
                         std::size_t limit) {
  validate(params);
  if (n < 1) throw ArgumentError("n must be >= 1");
  double v = variation_exact(f, params.seq, params.p, limit).value;
  if (v == 0.0) return 0.0;
  auto sums = params.seq.partial_sums(n);
  double best = 0.0;
  for (std::int64_t k = 1; k <= n; ++k) {
    best = std::max(best, static_cast<double>(k) /
                              std::pow(sums[static_cast<std::size_t>(k - 1)], params.q / params.p));
  }
  return v * std::pow(best / static_cast<double>(n), 1.0 / params.q);
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Bounded:
      return "bounded";
    case Verdict::Divergent:
      return "divergent";
    case Verdict::Inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

std::vector<std::int64_t> geometric_samples(std::int64_t n_max, std::size_t samples) {
  std::vector<std::int64_t> out;
  const double top = std::log(static_cast<double>(n_max));
  for (std::size_t i = 0; i < samples; ++i) {
    double e = top * static_cast<double>(i) / static_cast<double>(samples - 1);
    auto n = static_cast<std::int64_t>(std::llround(std::exp(e)));
    n = std::clamp<std::int64_t>(n, 1, n_max);
    if (out.empty() || n > out.back()) out.push_back(n);
  }
  if (out.back() != n_max) out.push_back(n_max);
  return out;
}

EmbeddingReport embed_report(const EmbeddingParams& params, std::int64_t n_max, std::size_t samples) {
  if (n_max < 16) throw ArgumentError("embed_report needs n_max >= 16");
  if (samples < 8) throw ArgumentError("embed_report needs at least 8 samples");
  auto series = criterion_series(params, n_max);

  EmbeddingReport rep;
  rep.sampled_n = geometric_samples(n_max, samples);
  for (auto n : rep.sampled_n) {
    const auto& t = series[static_cast<std::size_t>(n - 1)];
    rep.terms.push_back(t.value);
    rep.argmax_k.push_back(t.k_star);
  }
  const std::size_t m = rep.terms.size();
  rep.sup_term = *std::max_element(rep.terms.begin(), rep.terms.end());
  rep.first_term = rep.terms.front();
  rep.last_term = rep.terms.back();

  std::size_t half = m / 2;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  auto cnt = static_cast<double>(m - half);
  for (std::size_t i = half; i < m; ++i) {
    double x = std::log(static_cast<double>(rep.sampled_n[i]));
    double y = std::log(rep.terms[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  double denom = cnt * sxx - sx * sx;
  rep.slope = denom > 0.0 ? (cnt * sxy - sx * sy) / denom : 0.0;

  auto sorted = rep.terms;
  std::sort(sorted.begin(), sorted.end());
  rep.median_term = m % 2 == 1 ? sorted[m / 2] : 0.5 * (sorted[m / 2 - 1] + sorted[m / 2]);
  std::size_t quarter = (3 * m) / 4;
  rep.last_quarter_max = *std::max_element(rep.terms.begin() + static_cast<std::ptrdiff_t>(quarter),
                                           rep.terms.end());

  if (rep.slope < kSlopeThreshold && rep.last_quarter_max <= kPlateauRatio * rep.median_term) {
    rep.verdict = Verdict::Bounded;
  } else if (rep.slope > kSlopeThreshold && rep.last_term > kGrowthFactor * rep.first_term) {
    rep.verdict = Verdict::Divergent;
  } else {
    rep.verdict = Verdict::Inconclusive;
  }
  return rep;
}

}  // namespace lbv
