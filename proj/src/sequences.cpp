#include "lbv/sequences.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <string>

#include "lbv/errors.hpp"

namespace lbv {

struct WatermanSequence::PrefixCache {
  std::mutex mutex;
  std::vector<double> sums;  // sums[k-1] = Lambda_k
};

WatermanSequence::WatermanSequence(Kind kind)
    : kind_(std::move(kind)), cache_(std::make_shared<PrefixCache>()) {}

WatermanSequence WatermanSequence::constant(double c) {
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw ArgumentError("constant sequence requires a finite c > 0");
  }
  return WatermanSequence(Constant{c});
}

WatermanSequence WatermanSequence::power(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw ArgumentError("power sequence requires 0 <= alpha <= 1");
  }
  return WatermanSequence(Power{alpha});
}

WatermanSequence WatermanSequence::explicit_values(std::vector<double> values) {
  if (values.empty()) {
    throw ArgumentError("explicit sequence requires at least one value");
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] > 0.0) || !std::isfinite(values[i])) {
      throw ArgumentError("explicit sequence values must be finite and positive");
    }
    if (i > 0 && values[i] < values[i - 1]) {
      throw ArgumentError("explicit sequence values must be nondecreasing");
    }
  }
  return WatermanSequence(Explicit{std::move(values)});
}

double WatermanSequence::lambda_at(std::int64_t i) const {
  if (i < 1) {
    throw ArgumentError("sequence index must be >= 1, got " + std::to_string(i));
  }
  return std::visit(
      [i](const auto& k) -> double {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, Constant>) {
          return k.c;
        } else if constexpr (std::is_same_v<K, Power>) {
          return std::pow(static_cast<double>(i), k.alpha);
        } else {
          auto idx = std::min<std::int64_t>(i, static_cast<std::int64_t>(k.values.size()));
          return k.values[static_cast<std::size_t>(idx - 1)];
        }
      },
      kind_);
}

void WatermanSequence::ensure(std::int64_t k) const {
  // caller holds the lock
  auto& sums = cache_->sums;
  auto have = static_cast<std::int64_t>(sums.size());
  if (have >= k) return;
  if (sums.capacity() < static_cast<std::size_t>(k)) {
    sums.reserve(std::max(static_cast<std::size_t>(k), 2 * sums.capacity()));
  }
  double acc = have > 0 ? sums.back() : 0.0;
  for (std::int64_t i = have + 1; i <= k; ++i) {
    acc += 1.0 / lambda_at(i);
    sums.push_back(acc);
  }
}

double WatermanSequence::inv_partial_sum(std::int64_t k) const {
  if (k < 1) {
    throw ArgumentError("partial-sum length must be >= 1, got " + std::to_string(k));
  }
  std::lock_guard lock(cache_->mutex);
  ensure(k);
  return cache_->sums[static_cast<std::size_t>(k - 1)];
}

std::vector<double> WatermanSequence::partial_sums(std::int64_t k) const {
  if (k < 0) throw ArgumentError("partial-sum length must be >= 0");
  std::lock_guard lock(cache_->mutex);
  ensure(k);
  return {cache_->sums.begin(), cache_->sums.begin() + k};
}

std::int64_t WatermanSequence::divergence_prefix(double target, std::int64_t k_max) const {
  if (!(target > 0.0)) throw ArgumentError("divergence target must be > 0");
  if (k_max < 1) throw ArgumentError("k_max must be >= 1");

  std::lock_guard lock(cache_->mutex);
  auto& sums = cache_->sums;
  for (;;) {
    if (!sums.empty() && sums.back() >= target) {
      auto it = std::lower_bound(sums.begin(), sums.end(), target);
      auto k = static_cast<std::int64_t>(it - sums.begin()) + 1;
      if (k <= k_max) return k;
      break;
    }
    auto have = static_cast<std::int64_t>(sums.size());
    if (have >= k_max) break;
    ensure(std::min<std::int64_t>(k_max, std::max<std::int64_t>(2 * have, 1024)));
  }
  throw DivergenceNotWitnessed("partial sums stay below " + std::to_string(target) +
                               " up to k = " + std::to_string(k_max));
}

ModulusOfContinuity ModulusOfContinuity::power(double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw ArgumentError("power modulus requires beta > 0");
  }
  return ModulusOfContinuity(Power{beta});
}

ModulusOfContinuity ModulusOfContinuity::power_log(double beta, double gamma) {
  if (!(beta > 0.0) || !std::isfinite(beta) || !std::isfinite(gamma)) {
    throw ArgumentError("power-log modulus requires beta > 0 and finite gamma");
  }
  if (gamma < -beta) {
    throw ArgumentError("power-log modulus requires gamma >= -beta to stay nondecreasing");
  }
  return ModulusOfContinuity(PowerLog{beta, gamma});
}

ModulusOfContinuity ModulusOfContinuity::tabulated(std::vector<std::pair<double, double>> knots) {
  if (knots.size() < 2) throw ArgumentError("tabulated modulus needs at least two knots");
  if (knots.front().first != 0.0 || knots.front().second != 0.0) {
    throw ArgumentError("tabulated modulus must start at (0, 0)");
  }
  if (knots.back().first != 1.0) throw ArgumentError("tabulated modulus must end at delta = 1");
  for (std::size_t i = 1; i < knots.size(); ++i) {
    const auto [d0, v0] = knots[i - 1];
    const auto [d1, v1] = knots[i];
    if (!std::isfinite(d1) || !std::isfinite(v1)) {
      throw ArgumentError("tabulated modulus knots must be finite");
    }
    // a repeated abscissa would encode a jump
    if (!(d1 > d0)) {
      throw ArgumentError("tabulated modulus abscissae must be strictly increasing (no jumps)");
    }
    if (v1 < v0) throw ArgumentError("tabulated modulus values must be nondecreasing");
  }
  return ModulusOfContinuity(Tabulated{std::move(knots)});
}

ModulusOfContinuity ModulusOfContinuity::scaled(double factor) const {
  if (!(factor > 0.0) || !std::isfinite(factor)) {
    throw ArgumentError("modulus scale factor must be finite and positive");
  }
  ModulusOfContinuity out = *this;
  out.scale_ *= factor;
  return out;
}

double ModulusOfContinuity::operator()(double delta) const {
  if (!(delta >= 0.0 && delta <= 1.0)) {
    throw ArgumentError("modulus argument must lie in [0, 1]");
  }
  if (delta == 0.0) return 0.0;
  double value = std::visit(
      [delta](const auto& k) -> double {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, Power>) {
          return std::pow(delta, k.beta);
        } else if constexpr (std::is_same_v<K, PowerLog>) {
          return std::pow(delta, k.beta) * std::pow(1.0 + std::log(1.0 / delta), -k.gamma);
        } else {
          const auto& kn = k.knots;
          auto it = std::upper_bound(kn.begin(), kn.end(), delta,
                                     [](double d, const auto& knot) { return d < knot.first; });
          if (it == kn.end()) return kn.back().second;
          const auto& [d1, v1] = *it;
          const auto& [d0, v0] = *(it - 1);
          return v0 + (v1 - v0) * (delta - d0) / (d1 - d0);
        }
      },
      kind_);
  return scale_ * value;
}

}  // namespace lbv
