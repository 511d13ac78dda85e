#pragma once

#include <setdyn/interval.hpp>
#include <setdyn/rational.hpp>

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <numeric>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

namespace setdyn {

/// Ground space of diameter 1: either a finite set {0, .., n-1} with the
/// discrete metric, or the unit interval with |x - y|. Finite-space
/// coordinates are carried as integer-valued rationals so sequences over both
/// kinds of space share one representation.
class ground_metric {
 public:
  enum class kind_t { discrete, interval };

  static ground_metric discrete_on(int states) {
    if (states < 1) {
      throw std::invalid_argument("ground_metric: need at least one state");
    }
    return ground_metric(kind_t::discrete, states);
  }

  static ground_metric unit_interval() { return ground_metric(kind_t::interval, 0); }

  [[nodiscard]] kind_t kind() const { return kind_; }

  [[nodiscard]] rational diameter() const { return rational(1); }

  [[nodiscard]] rational distance(const rational& a, const rational& b) const {
    check_coordinate(a);
    check_coordinate(b);
    if (kind_ == kind_t::discrete) {
      return a == b ? rational(0) : rational(1);
    }
    return abs(a - b);
  }

 private:
  ground_metric(kind_t kind, int states) : kind_(kind), states_(states) {}

  void check_coordinate(const rational& x) const {
    if (kind_ == kind_t::discrete) {
      if (!x.is_integer() || x.sign() < 0 || x >= rational(states_)) {
        throw std::domain_error("ground_metric: coordinate " + x.str() +
                                " is not a state index below " + std::to_string(states_));
      }
    } else if (x.sign() < 0 || x > rational(1)) {
      throw std::domain_error("ground_metric: coordinate " + x.str() +
                              " outside the unit interval");
    }
  }

  kind_t kind_;
  int states_;
};

/// An eventually periodic sequence (x_0, x_1, ...) stored as a finite
/// preperiod followed by a repeating cycle. Construction canonicalizes: the
/// cycle is reduced to its primitive period and the preperiod is rolled back
/// into the cycle as far as possible, so equal sequences compare equal
/// structurally.
class eventually_periodic_seq {
 public:
  eventually_periodic_seq(std::vector<rational> preperiod, std::vector<rational> cycle)
      : pre_(std::move(preperiod)), cycle_(std::move(cycle)) {
    if (cycle_.empty()) {
      throw std::invalid_argument("eventually_periodic_seq: empty cycle");
    }
    canonicalize();
  }

  static eventually_periodic_seq constant(const rational& value) {
    return {{}, {value}};
  }

  [[nodiscard]] const std::vector<rational>& preperiod() const { return pre_; }
  [[nodiscard]] const std::vector<rational>& cycle() const { return cycle_; }

  [[nodiscard]] const rational& at(std::size_t i) const {
    if (i < pre_.size()) {
      return pre_[i];
    }
    return cycle_[(i - pre_.size()) % cycle_.size()];
  }

  /// First `count` coordinates.
  [[nodiscard]] std::vector<rational> prefix(std::size_t count) const {
    std::vector<rational> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
      out.push_back(at(i));
    }
    return out;
  }

  /// The sequence with the first coordinate dropped.
  [[nodiscard]] eventually_periodic_seq shifted() const {
    if (!pre_.empty()) {
      return {{pre_.begin() + 1, pre_.end()}, cycle_};
    }
    std::vector<rational> rotated(cycle_.begin() + 1, cycle_.end());
    rotated.push_back(cycle_.front());
    return {{}, std::move(rotated)};
  }

  [[nodiscard]] eventually_periodic_seq shifted(std::size_t times) const {
    eventually_periodic_seq out = *this;
    for (std::size_t i = 0; i < times; ++i) {
      out = out.shifted();
    }
    return out;
  }

  friend bool operator==(const eventually_periodic_seq& a, const eventually_periodic_seq& b) {
    return a.pre_ == b.pre_ && a.cycle_ == b.cycle_;
  }

  friend bool operator!=(const eventually_periodic_seq& a, const eventually_periodic_seq& b) {
    return !(a == b);
  }

  friend bool operator<(const eventually_periodic_seq& a, const eventually_periodic_seq& b) {
    if (a.pre_ != b.pre_) {
      return a.pre_ < b.pre_;
    }
    return a.cycle_ < b.cycle_;
  }

 private:
  void canonicalize() {
    // Primitive period: smallest divisor p of |cycle| with c[i] == c[i mod p].
    const std::size_t m = cycle_.size();
    for (std::size_t p = 1; p <= m / 2; ++p) {
      if (m % p != 0) {
        continue;
      }
      bool periodic = true;
      for (std::size_t i = p; i < m && periodic; ++i) {
        periodic = cycle_[i] == cycle_[i % p];
      }
      if (periodic) {
        cycle_.resize(p);
        break;
      }
    }
    // Roll the preperiod tail into the cycle: (.., a | c_0 .. c_{k-1} a) with
    // a == cycle back describes the same sequence as (.. | a c_0 .. c_{k-1}).
    while (!pre_.empty() && pre_.back() == cycle_.back()) {
      pre_.pop_back();
      std::rotate(cycle_.rbegin(), cycle_.rbegin() + 1, cycle_.rend());
    }
  }

  std::vector<rational> pre_;
  std::vector<rational> cycle_;
};

/// Exact value of rho(x, y) = sum_i d(x_i, y_i) / 2^i for eventually periodic
/// sequences: finite head sum plus a closed-form geometric tail over the
/// aligned common cycle.
[[nodiscard]] inline rational rho_exact(const eventually_periodic_seq& x,
                                        const eventually_periodic_seq& y,
                                        const ground_metric& metric) {
  const std::size_t head = std::max(x.preperiod().size(), y.preperiod().size());
  const std::size_t period = std::lcm(x.cycle().size(), y.cycle().size());
  rational sum(0);
  for (std::size_t i = 0; i < head; ++i) {
    sum += metric.distance(x.at(i), y.at(i)) * pow2(-static_cast<int>(i));
  }
  rational cycle_sum(0);
  for (std::size_t j = 0; j < period; ++j) {
    const std::size_t i = head + j;
    cycle_sum += metric.distance(x.at(i), y.at(i)) * pow2(-static_cast<int>(i));
  }
  // sum_{k>=0} 2^(-k*period) = 2^period / (2^period - 1)
  rational two_l = pow2(static_cast<int>(period));
  return sum + cycle_sum * two_l / (two_l - rational(1));
}

/// Lower and upper bounds on rho from length-k prefixes: the partial sum and
/// the partial sum plus the worst-case tail 2^(1-k) at ground diameter 1.
[[nodiscard]] inline std::pair<rational, rational> rho_bounds(const std::vector<rational>& x,
                                                              const std::vector<rational>& y,
                                                              const ground_metric& metric) {
  if (x.empty() || x.size() != y.size()) {
    throw std::invalid_argument("rho_bounds: prefixes must be non-empty and of equal length");
  }
  rational lower(0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    lower += metric.distance(x[i], y[i]) * pow2(-static_cast<int>(i));
  }
  return {lower, lower + pow2(1 - static_cast<int>(x.size()))};
}

/// Hausdorff distance between two non-empty finite state sets under the
/// discrete metric: 0 when the sets are equal, 1 otherwise.
[[nodiscard]] inline rational hausdorff(const std::set<int>& a, const std::set<int>& b) {
  if (a.empty() || b.empty()) {
    throw std::domain_error("hausdorff: empty state set");
  }
  return a == b ? rational(0) : rational(1);
}

}  // namespace setdyn
