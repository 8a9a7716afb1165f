#include "lbv/modulus.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "lbv/errors.hpp"

namespace lbv {
namespace {

struct Segment {
  double end;
  double value;
};

void check_shift(double gamma, const char* what) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw ArgumentError(std::string(what) + " must lie in [0, 1]");
  }
}

void check_q(double q) {
  if (!(q >= 1.0) || !std::isfinite(q)) throw ArgumentError("modulus exponent q must be >= 1");
}

/// Pieces of f restricted to [0, length], as (right end, value).
std::vector<Segment> own_segments(const StepFunction& f, double length) {
  auto t = f.breakpoints();
  auto v = f.values();
  std::vector<Segment> out;
  for (std::size_t j = 0; j < v.size() && t[j] < length; ++j) {
    out.push_back({std::min(t[j + 1], length), v[j]});
  }
  return out;
}

/// Pieces of t -> f(t + gamma) on [0, length], wrapping when periodic.
std::vector<Segment> shifted_segments(const StepFunction& f, double gamma, double length) {
  auto t = f.breakpoints();
  auto v = f.values();
  std::vector<Segment> out;
  const double head = std::min(1.0 - gamma, length);
  if (head > 0.0) {
    for (std::size_t j = f.piece_index(gamma); j < v.size(); ++j) {
      out.push_back({std::min(t[j + 1] - gamma, head), v[j]});
    }
    out.back().end = head;
  }
  if (length > head) {
    for (std::size_t j = 0; j < v.size(); ++j) {
      out.push_back({std::min(t[j + 1] - gamma + 1.0, length), v[j]});
      if (t[j + 1] >= gamma) break;
    }
    out.back().end = length;
  }
  return out;
}

double power_of(double c, double q) { return q == 1.0 ? c : std::pow(c, q); }

}  // namespace

double lq_shift_integral(const StepFunction& f, double gamma, double q) {
  check_shift(gamma, "shift");
  check_q(q);
  const double length = f.periodic() ? 1.0 : 1.0 - gamma;
  if (!(length > 0.0) || gamma == 0.0) return 0.0;

  auto base = own_segments(f, length);
  auto moved = shifted_segments(f, gamma, length);
  base.back().end = length;

  double total = 0.0;
  double pos = 0.0;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < base.size() && j < moved.size()) {
    double end = std::min(base[i].end, moved[j].end);
    if (end > pos) {
      double diff = std::abs(moved[j].value - base[i].value);
      if (diff != 0.0) total += power_of(diff, q) * (end - pos);
      pos = end;
    }
    if (base[i].end <= end) ++i;
    if (moved[j].end <= end) ++j;
  }
  return total;
}

double lq_shift_distance(const StepFunction& f, double gamma, double q) {
  double s = lq_shift_integral(f, gamma, q);
  return q == 1.0 ? s : std::pow(s, 1.0 / q);
}

std::vector<double> shift_candidates(const StepFunction& f, double delta) {
  check_shift(delta, "delta");
  auto t = f.breakpoints();
  std::vector<double> out{0.0, delta};
  for (std::size_t i = 0; i < t.size(); ++i) {
    for (std::size_t j = 0; j < t.size(); ++j) {
      double d = t[j] - t[i];
      if (f.periodic() && d < 0.0) d += 1.0;
      if (d > 0.0 && d <= delta) out.push_back(d);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

ShiftDistanceProfile shift_profile(const StepFunction& f, double delta, double q) {
  check_q(q);
  ShiftDistanceProfile out;
  out.gamma_breaks = shift_candidates(f, delta);
  for (double g : out.gamma_breaks) {
    double s = lq_shift_integral(f, g, q);
    out.integrals.push_back(s);
    out.distances.push_back(q == 1.0 ? s : std::pow(s, 1.0 / q));
  }
  return out;
}

ModulusResult omega_q_detail(const StepFunction& f, double delta, double q, unsigned threads) {
  check_shift(delta, "delta");
  check_q(q);
  auto cands = shift_candidates(f, delta);
  std::vector<double> vals(cands.size());

  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) vals[i] = lq_shift_integral(f, cands[i], q);
  };
  threads = std::max(1u, threads);
  if (threads == 1 || cands.size() < 64) {
    work(0, cands.size());
  } else {
    std::vector<std::jthread> pool;
    std::size_t chunk = (cands.size() + threads - 1) / threads;
    for (std::size_t b = 0; b < cands.size(); b += chunk) {
      pool.emplace_back(work, b, std::min(cands.size(), b + chunk));
    }
  }

  ModulusResult out;
  double best = 0.0;
  for (std::size_t i = 0; i < cands.size(); ++i) {
    if (vals[i] > best) {
      best = vals[i];
      out.argmax_gamma = cands[i];
    }
  }
  out.value = q == 1.0 ? best : std::pow(best, 1.0 / q);
  return out;
}

}  // namespace lbv
