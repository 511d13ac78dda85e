#pragma once

#include <setdyn/rational.hpp>

#include <algorithm>
#include <cassert>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace setdyn {

/// One connected component of a subset of the line: an interval with an
/// open/closed flag at each endpoint. A degenerate component (lo == hi) is a
/// point and must be closed on both sides; open degenerate intervals are
/// empty and are never stored.
struct interval {
  rational lo;
  rational hi;
  bool closed_lo = true;
  bool closed_hi = true;

  [[nodiscard]] bool empty() const {
    if (lo > hi) {
      return true;
    }
    return lo == hi && !(closed_lo && closed_hi);
  }

  [[nodiscard]] bool is_point() const { return lo == hi && closed_lo && closed_hi; }

  [[nodiscard]] bool contains(const rational& x) const {
    if (x < lo || x > hi) {
      return false;
    }
    if (x == lo && !closed_lo) {
      return false;
    }
    if (x == hi && !closed_hi) {
      return false;
    }
    return true;
  }

  friend bool operator==(const interval& a, const interval& b) {
    return a.lo == b.lo && a.hi == b.hi && a.closed_lo == b.closed_lo &&
           a.closed_hi == b.closed_hi;
  }
};

/// Finite union of disjoint intervals and isolated points, kept in canonical
/// form: components sorted ascending, pairwise disjoint, and maximal (any two
/// components that touch with at least one closed endpoint are merged).
/// Open endpoint flags let the same type carry open basis sets and closed
/// images side by side.
class interval_union {
 public:
  interval_union() = default;

  static interval_union empty() { return {}; }

  static interval_union point(const rational& x) { return of(x, x, true, true); }

  static interval_union closed(const rational& lo, const rational& hi) {
    return of(lo, hi, true, true);
  }

  static interval_union open(const rational& lo, const rational& hi) {
    return of(lo, hi, false, false);
  }

  static interval_union of(const rational& lo, const rational& hi, bool closed_lo,
                           bool closed_hi) {
    interval_union u;
    u.comps_.push_back({lo, hi, closed_lo, closed_hi});
    u.normalize();
    return u;
  }

  static interval_union unit() { return closed(rational(0), rational(1)); }

  static interval_union from_components(std::vector<interval> components) {
    interval_union u;
    u.comps_ = std::move(components);
    u.normalize();
    return u;
  }

  [[nodiscard]] const std::vector<interval>& components() const { return comps_; }

  [[nodiscard]] bool is_empty() const { return comps_.empty(); }

  [[nodiscard]] bool contains(const rational& x) const {
    for (const interval& c : comps_) {
      if (c.contains(x)) {
        return true;
      }
      if (c.lo > x) {
        break;
      }
    }
    return false;
  }

  /// Least point of the closure. Requires a non-empty union.
  [[nodiscard]] const rational& inf() const {
    require_nonempty("inf");
    return comps_.front().lo;
  }

  /// Greatest point of the closure. Requires a non-empty union.
  [[nodiscard]] const rational& sup() const {
    require_nonempty("sup");
    return comps_.back().hi;
  }

  [[nodiscard]] rational spread() const { return is_empty() ? rational(0) : sup() - inf(); }

  [[nodiscard]] interval_union closure() const {
    std::vector<interval> out = comps_;
    for (interval& c : out) {
      c.closed_lo = true;
      c.closed_hi = true;
    }
    return from_components(std::move(out));
  }

  [[nodiscard]] interval_union unite(const interval_union& other) const {
    std::vector<interval> out = comps_;
    out.insert(out.end(), other.comps_.begin(), other.comps_.end());
    return from_components(std::move(out));
  }

  [[nodiscard]] interval_union intersect(const interval_union& other) const {
    std::vector<interval> out;
    for (const interval& a : comps_) {
      for (const interval& b : other.comps_) {
        if (b.lo > a.hi) {
          break;
        }
        interval c;
        if (a.lo > b.lo || (a.lo == b.lo && !a.closed_lo)) {
          c.lo = a.lo;
          c.closed_lo = a.closed_lo && b.contains(a.lo);
        } else {
          c.lo = b.lo;
          c.closed_lo = b.closed_lo && a.contains(b.lo);
        }
        if (a.hi < b.hi || (a.hi == b.hi && !a.closed_hi)) {
          c.hi = a.hi;
          c.closed_hi = a.closed_hi && b.contains(a.hi);
        } else {
          c.hi = b.hi;
          c.closed_hi = b.closed_hi && a.contains(b.hi);
        }
        if (!c.empty()) {
          out.push_back(c);
        }
      }
    }
    return from_components(std::move(out));
  }

  [[nodiscard]] bool intersects(const interval_union& other) const {
    return !intersect(other).is_empty();
  }

  /// True if this set is contained in `other`. Each component of a canonical
  /// union is connected, so it must fit inside a single component of `other`.
  [[nodiscard]] bool subset_of(const interval_union& other) const {
    for (const interval& a : comps_) {
      bool covered = false;
      for (const interval& b : other.comps_) {
        bool lo_ok = b.lo < a.lo || (b.lo == a.lo && (b.closed_lo || !a.closed_lo));
        bool hi_ok = b.hi > a.hi || (b.hi == a.hi && (b.closed_hi || !a.closed_hi));
        if (lo_ok && hi_ok) {
          covered = true;
          break;
        }
      }
      if (!covered) {
        return false;
      }
    }
    return true;
  }

  /// Image under x -> a*x + b, applied component-wise. Constant maps collapse
  /// components to points; negative slopes swap endpoint flags.
  [[nodiscard]] interval_union affine_image(const rational& a, const rational& b) const {
    std::vector<interval> out;
    out.reserve(comps_.size());
    for (const interval& c : comps_) {
      if (a.is_zero()) {
        out.push_back({b, b, true, true});
      } else if (a.sign() > 0) {
        out.push_back({a * c.lo + b, a * c.hi + b, c.closed_lo, c.closed_hi});
      } else {
        out.push_back({a * c.hi + b, a * c.lo + b, c.closed_hi, c.closed_lo});
      }
    }
    return from_components(std::move(out));
  }

  /// Distance from a point to the closure of this union. Requires non-empty.
  [[nodiscard]] rational distance_to(const rational& x) const {
    require_nonempty("distance_to");
    std::optional<rational> best;
    for (const interval& c : comps_) {
      rational d = x < c.lo ? c.lo - x : (x > c.hi ? x - c.hi : rational(0));
      if (!best || d < *best) {
        best = d;
      }
    }
    return *best;
  }

  friend bool operator==(const interval_union& a, const interval_union& b) {
    return a.comps_ == b.comps_;
  }

  friend bool operator!=(const interval_union& a, const interval_union& b) { return !(a == b); }

  [[nodiscard]] std::string str() const {
    if (comps_.empty()) {
      return "{}";
    }
    std::string out;
    for (std::size_t i = 0; i < comps_.size(); ++i) {
      const interval& c = comps_[i];
      if (i > 0) {
        out += " u ";
      }
      if (c.is_point()) {
        out += "{" + c.lo.str() + "}";
      } else {
        out += (c.closed_lo ? "[" : "(") + c.lo.str() + ", " + c.hi.str() +
               (c.closed_hi ? "]" : ")");
      }
    }
    return out;
  }

  friend std::ostream& operator<<(std::ostream& os, const interval_union& u) {
    return os << u.str();
  }

 private:
  void require_nonempty(const char* op) const {
    if (comps_.empty()) {
      throw std::domain_error(std::string("interval_union::") + op + ": empty union");
    }
  }

  void normalize() {
    std::vector<interval> in;
    in.reserve(comps_.size());
    for (const interval& c : comps_) {
      if (!c.empty()) {
        in.push_back(c);
      }
    }
    std::sort(in.begin(), in.end(), [](const interval& a, const interval& b) {
      if (a.lo != b.lo) {
        return a.lo < b.lo;
      }
      if (a.closed_lo != b.closed_lo) {
        return a.closed_lo;  // closed end first so the sweep keeps the flag
      }
      if (a.hi != b.hi) {
        return a.hi < b.hi;
      }
      return a.closed_hi && !b.closed_hi;
    });
    std::vector<interval> out;
    for (const interval& c : in) {
      if (out.empty()) {
        out.push_back(c);
        continue;
      }
      interval& r = out.back();
      bool joins = c.lo < r.hi || (c.lo == r.hi && (r.closed_hi || c.closed_lo));
      if (!joins) {
        out.push_back(c);
        continue;
      }
      if (c.lo == r.lo) {
        r.closed_lo = r.closed_lo || c.closed_lo;
      }
      if (c.hi > r.hi) {
        r.hi = c.hi;
        r.closed_hi = c.closed_hi;
      } else if (c.hi == r.hi) {
        r.closed_hi = r.closed_hi || c.closed_hi;
      }
    }
    comps_ = std::move(out);
  }

  std::vector<interval> comps_;
};

/// Relative complement [0,1] \ u, with exact endpoint flags: the complement
/// is open where u is closed and vice versa, except at the domain ends.
[[nodiscard]] inline interval_union unit_complement(const interval_union& u) {
  const interval_union clipped = u.intersect(interval_union::unit());
  std::vector<interval> out;
  rational cursor(0);
  bool cursor_closed = true;
  for (const interval& c : clipped.components()) {
    out.push_back({cursor, c.lo, cursor_closed, !c.closed_lo});
    cursor = c.hi;
    cursor_closed = !c.closed_hi;
  }
  out.push_back({cursor, rational(1), cursor_closed, true});
  return interval_union::from_components(std::move(out));
}

/// Exact Hausdorff distance between the closures of two non-empty unions
/// under |x - y|. The supremum of d(., B) over a closed set A is attained
/// either at a component endpoint of A or at the midpoint of a gap of B that
/// lies inside A, so a finite candidate scan is exact.
[[nodiscard]] inline rational hausdorff(const interval_union& a, const interval_union& b) {
  if (a.is_empty() || b.is_empty()) {
    throw std::domain_error("hausdorff: empty set");
  }
  interval_union ca = a.closure();
  interval_union cb = b.closure();
  auto directed = [](const interval_union& from, const interval_union& to) {
    rational best(0);
    for (const interval& c : from.components()) {
      best = max(best, to.distance_to(c.lo));
      best = max(best, to.distance_to(c.hi));
    }
    const auto& tc = to.components();
    for (std::size_t i = 0; i + 1 < tc.size(); ++i) {
      rational mid = (tc[i].hi + tc[i + 1].lo) / rational(2);
      if (from.contains(mid)) {
        best = max(best, to.distance_to(mid));
      }
    }
    return best;
  };
  return max(directed(ca, cb), directed(cb, ca));
}

}  // namespace setdyn
