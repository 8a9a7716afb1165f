#include "lbv/variation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <utility>

#include "lbv/errors.hpp"

namespace lbv {
namespace {

using GridInterval = std::pair<std::size_t, std::size_t>;
using GridFamily = std::vector<GridInterval>;

void check_exponent(double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw ArgumentError("variation exponent p must be >= 1");
}

double power_of(double c, double p) { return p == 1.0 ? c : std::pow(c, p); }

/// Sum of w_(j) / lambda_j for weights sorted in nonincreasing order.
double paired_sum(const std::vector<double>& sorted_desc, const std::vector<double>& lambdas) {
  double s = 0.0;
  for (std::size_t j = 0; j < sorted_desc.size(); ++j) s += sorted_desc[j] / lambdas[j];
  return s;
}

std::vector<double> lambda_table(const WatermanSequence& seq, std::size_t n) {
  std::vector<double> out(n);
  for (std::size_t j = 0; j < n; ++j) out[j] = seq.lambda_at(static_cast<std::int64_t>(j + 1));
  return out;
}

IntervalFamily to_intervals(const StepFunction& f, const GridFamily& fam) {
  auto t = f.breakpoints();
  IntervalFamily out;
  out.reserve(fam.size());
  for (auto [a, b] : fam) out.push_back({t[a], t[b]});
  return out;
}

/// Fewer intervals first, then smaller left endpoints, then longer intervals.
bool key_less(const GridFamily& x, const GridFamily& y) {
  if (x.size() != y.size()) return x.size() < y.size();
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].first != y[i].first) return x[i].first < y[i].first;
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].second != y[i].second) return x[i].second > y[i].second;
  }
  return false;
}

class GridProblem {
 public:
  GridProblem(const StepFunction& f, const WatermanSequence& seq, double p)
      : g_(f.grid_values()), p_(p), lambdas_(lambda_table(seq, g_.size())) {}

  [[nodiscard]] std::size_t size() const { return g_.size(); }
  [[nodiscard]] double weight(std::size_t a, std::size_t b) const {
    return power_of(std::abs(g_[b] - g_[a]), p_);
  }
  [[nodiscard]] const std::vector<double>& grid() const { return g_; }
  [[nodiscard]] const std::vector<double>& lambdas() const { return lambdas_; }
  [[nodiscard]] double p() const { return p_; }

  [[nodiscard]] double objective(const GridFamily& fam) const {
    std::vector<double> w;
    w.reserve(fam.size());
    for (auto [a, b] : fam) w.push_back(weight(a, b));
    std::sort(w.begin(), w.end(), std::greater<>());
    return paired_sum(w, lambdas_);
  }

 private:
  std::vector<double> g_;
  double p_;
  std::vector<double> lambdas_;
};

class ExactSearch {
 public:
  explicit ExactSearch(const GridProblem& prob) : prob_(prob), n_(prob.size()) {
    weights_.assign(n_ * n_, 0.0);
    for (std::size_t a = 0; a < n_; ++a) {
      for (std::size_t b = a + 1; b < n_; ++b) weights_[a * n_ + b] = prob.weight(a, b);
    }
    // largest single-interval weight available with left endpoint >= pos
    suffix_best_.assign(n_ + 1, 0.0);
    const auto& g = prob.grid();
    double lo = g.empty() ? 0.0 : g.back();
    double hi = lo;
    for (std::size_t pos = n_; pos-- > 0;) {
      lo = std::min(lo, g[pos]);
      hi = std::max(hi, g[pos]);
      suffix_best_[pos] = power_of(hi - lo, prob.p());
    }
  }

  void run() {
    best_value_ = 0.0;
    best_.clear();
    visit(0);
  }

  [[nodiscard]] const GridFamily& best() const { return best_; }

 private:
  void consider() {
    double v = paired_sum(sorted_, prob_.lambdas());
    if (v > best_value_ || (v == best_value_ && key_less(current_, best_))) {
      best_value_ = v;
      best_ = current_;
    }
  }

  /// Value if every remaining slot received the largest weight still available.
  [[nodiscard]] double bound(std::size_t pos) const {
    std::size_t slots = n_ - 1 - std::min(pos, n_ - 1);
    double fill = suffix_best_[pos];
    const auto& lambdas = prob_.lambdas();
    double s = 0.0;
    std::size_t i = 0;
    std::size_t j = 0;
    for (std::size_t rank = 0; i < sorted_.size() || j < slots; ++rank) {
      double w;
      if (j < slots && (i == sorted_.size() || fill >= sorted_[i])) {
        w = fill;
        ++j;
      } else {
        w = sorted_[i++];
      }
      s += w / lambdas[rank];
    }
    return s;
  }

  void visit(std::size_t pos) {
    consider();
    if (pos + 1 >= n_ || bound(pos) < best_value_) return;
    for (std::size_t a = pos; a + 1 < n_; ++a) {
      for (std::size_t b = a + 1; b < n_; ++b) {
        double w = weights_[a * n_ + b];
        // zero-change intervals never raise the value and only consume room
        if (w == 0.0) continue;
        auto at = std::lower_bound(sorted_.begin(), sorted_.end(), w, std::greater<>());
        auto idx = at - sorted_.begin();
        sorted_.insert(at, w);
        current_.emplace_back(a, b);
        visit(b);
        current_.pop_back();
        sorted_.erase(sorted_.begin() + idx);
      }
    }
  }

  const GridProblem& prob_;
  std::size_t n_;
  std::vector<double> weights_;
  std::vector<double> suffix_best_;
  std::vector<double> sorted_;
  GridFamily current_;
  double best_value_ = 0.0;
  GridFamily best_;
};

GridFamily monotone_runs(const std::vector<double>& g) {
  GridFamily runs;
  if (g.size() < 2) return runs;
  std::size_t start = 0;
  std::size_t last_move = 0;
  int dir = 0;
  for (std::size_t i = 1; i < g.size(); ++i) {
    int d = (g[i] > g[i - 1]) - (g[i] < g[i - 1]);
    if (d == 0) continue;
    if (dir != 0 && d != dir) {
      runs.emplace_back(start, i - 1);
      start = i - 1;
    }
    dir = d;
    last_move = i;
  }
  if (dir != 0) runs.emplace_back(start, last_move);
  return runs;
}

/// Local search state: the family plus its weights in nonincreasing order.
class LocalSearch {
 public:
  LocalSearch(const GridProblem& prob, GridFamily fam) : prob_(prob) { reset(std::move(fam)); }

  [[nodiscard]] double value() const { return value_; }
  [[nodiscard]] const GridFamily& family() const { return fam_; }

  /// One steepest-ascent step; false at a local optimum.
  bool step() {
    const std::size_t k = fam_.size();
    const std::size_t last = prob_.size() - 1;
    Move best{0, 0, std::nullopt};
    double best_value = value_;
    auto consider = [&](std::size_t i, std::size_t j, std::optional<GridInterval> add) {
      double v = evaluate(i, j, add);
      if (v > best_value) {
        best_value = v;
        best = {i, j, add};
      }
    };
    for (std::size_t i = 0; i < k; ++i) {
      auto [a, b] = fam_[i];
      std::size_t lo = i == 0 ? 0 : fam_[i - 1].second;
      std::size_t hi = i + 1 == k ? last : fam_[i + 1].first;
      consider(i, i, std::nullopt);
      if (a > lo) consider(i, i, GridInterval{a - 1, b});
      if (a + 1 < b) consider(i, i, GridInterval{a + 1, b});
      if (b < hi) consider(i, i, GridInterval{a, b + 1});
      if (b > a + 1) consider(i, i, GridInterval{a, b - 1});
      // fuse i..j into one interval spanning the gaps between them
      for (std::size_t j = i + 1; j < k; ++j) consider(i, j, GridInterval{a, fam_[j].second});
    }
    if (!(best_value > value_)) return false;
    GridFamily next(fam_.begin(), fam_.begin() + static_cast<std::ptrdiff_t>(best.first));
    if (best.add) next.push_back(*best.add);
    next.insert(next.end(), fam_.begin() + static_cast<std::ptrdiff_t>(best.last + 1), fam_.end());
    reset(std::move(next));
    return true;
  }

 private:
  struct Move {
    std::size_t first;
    std::size_t last;
    std::optional<GridInterval> add;
  };

  void reset(GridFamily fam) {
    fam_ = std::move(fam);
    order_.clear();
    for (std::size_t i = 0; i < fam_.size(); ++i) {
      order_.emplace_back(prob_.weight(fam_[i].first, fam_[i].second), i);
    }
    std::stable_sort(order_.begin(), order_.end(),
                     [](const auto& x, const auto& y) { return x.first > y.first; });
    value_ = prob_.objective(fam_);
  }

  /// Objective after removing intervals first..last and inserting `add`.
  [[nodiscard]] double evaluate(std::size_t first, std::size_t last,
                                std::optional<GridInterval> add) const {
    const auto& lambdas = prob_.lambdas();
    double extra = add ? prob_.weight(add->first, add->second) : 0.0;
    bool pending = add.has_value();
    double s = 0.0;
    std::size_t rank = 0;
    for (const auto& [w, idx] : order_) {
      if (idx >= first && idx <= last) continue;
      if (pending && extra > w) {
        s += extra / lambdas[rank++];
        pending = false;
      }
      s += w / lambdas[rank++];
    }
    if (pending) s += extra / lambdas[rank];
    return s;
  }

  const GridProblem& prob_;
  GridFamily fam_;
  std::vector<std::pair<double, std::size_t>> order_;
  double value_ = 0.0;
};

}  // namespace

double family_value(const StepFunction& f, const IntervalFamily& family,
                    const WatermanSequence& seq, double p) {
  check_exponent(p);
  auto t = f.breakpoints();
  auto on_grid = [&](double x) { return std::binary_search(t.begin(), t.end(), x); };

  IntervalFamily sorted = family;
  std::sort(sorted.begin(), sorted.end(),
            [](const Interval& x, const Interval& y) { return x.a < y.a || (x.a == y.a && x.b < y.b); });
  std::vector<double> w;
  w.reserve(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const auto& iv = sorted[i];
    if (!on_grid(iv.a) || !on_grid(iv.b)) {
      throw ArgumentError("family endpoints must be breakpoints of the function");
    }
    if (!(iv.a < iv.b)) throw ArgumentError("family contains a degenerate interval");
    if (i > 0 && sorted[i - 1].b > iv.a) throw ArgumentError("family intervals overlap");
    w.push_back(power_of(std::abs(f.increment_over(iv)), p));
  }
  std::sort(w.begin(), w.end(), std::greater<>());
  double s = paired_sum(w, lambda_table(seq, w.size()));
  return p == 1.0 ? s : std::pow(s, 1.0 / p);
}

VariationResult variation_exact(const StepFunction& f, const WatermanSequence& seq, double p,
                                std::size_t limit) {
  check_exponent(p);
  const std::size_t points = f.breakpoints().size();
  if (points > limit) {
    throw ExactModeRefused("exact variation refused: " + std::to_string(points) +
                           " breakpoints exceed the limit of " + std::to_string(limit) +
                           "; use the greedy lower bound instead");
  }
  GridProblem prob(f, seq, p);
  ExactSearch search(prob);
  search.run();
  VariationResult out;
  out.witness = to_intervals(f, search.best());
  out.value = family_value(f, out.witness, seq, p);
  out.exact = true;
  return out;
}

VariationResult variation_greedy(const StepFunction& f, const WatermanSequence& seq, double p) {
  check_exponent(p);
  GridProblem prob(f, seq, p);
  LocalSearch search(prob, monotone_runs(prob.grid()));
  while (search.step()) {
  }
  const GridFamily& fam = search.family();
  VariationResult out;
  out.witness = to_intervals(f, fam);
  out.value = family_value(f, out.witness, seq, p);
  out.exact = false;
  return out;
}

VariationResult variation(const StepFunction& f, const WatermanSequence& seq, double p,
                          std::size_t limit) {
  if (f.breakpoints().size() <= limit) return variation_exact(f, seq, p, limit);
  return variation_greedy(f, seq, p);
}

double lambda_p_norm(const StepFunction& f, const WatermanSequence& seq, double p,
                     std::size_t limit) {
  return std::abs(f.eval(0.0)) + variation(f, seq, p, limit).value;
}

}  // namespace lbv
