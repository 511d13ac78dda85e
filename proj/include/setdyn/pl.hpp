#pragma once

#include <setdyn/interval.hpp>
#include <setdyn/rational.hpp>

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace setdyn {

/// One piece of the graph of a multivalued map on [0,1]: an affine segment
/// y = slope*x + offset over a closed nondegenerate x-interval, or a closed
/// axis-aligned rectangle. Rectangles may degenerate to vertical or
/// horizontal segments or to single points; they are the only pieces whose
/// fibers are more than one point, so they are first-class, not a fallback.
/// Zero-slope segments are stored as degenerate rectangles so that every
/// graph has exactly one piece-level representation.
class graph_piece {
 public:
  enum class kind_t { segment, rectangle };

  static graph_piece segment(const rational& slope, const rational& offset,
                             const rational& x_lo, const rational& x_hi) {
    if (x_lo >= x_hi)
      throw std::invalid_argument("graph_piece: segment needs a nondegenerate x-interval");
    if (slope.is_zero()) return rectangle(x_lo, x_hi, offset, offset);
    graph_piece p;
    p.kind_ = kind_t::segment;
    p.slope_ = slope;
    p.offset_ = offset;
    p.x_lo_ = x_lo;
    p.x_hi_ = x_hi;
    const rational v0 = slope * x_lo + offset;
    const rational v1 = slope * x_hi + offset;
    p.y_lo_ = min(v0, v1);
    p.y_hi_ = max(v0, v1);
    p.check_bounds();
    return p;
  }

  static graph_piece rectangle(const rational& x_lo, const rational& x_hi,
                               const rational& y_lo, const rational& y_hi) {
    if (x_lo > x_hi || y_lo > y_hi)
      throw std::invalid_argument("graph_piece: rectangle extents must be ordered");
    graph_piece p;
    p.kind_ = kind_t::rectangle;
    p.x_lo_ = x_lo;
    p.x_hi_ = x_hi;
    p.y_lo_ = y_lo;
    p.y_hi_ = y_hi;
    p.check_bounds();
    return p;
  }

  [[nodiscard]] kind_t kind() const { return kind_; }
  [[nodiscard]] bool is_segment() const { return kind_ == kind_t::segment; }
  [[nodiscard]] bool is_rectangle() const { return kind_ == kind_t::rectangle; }

  [[nodiscard]] const rational& slope() const {
    require_segment("slope");
    return slope_;
  }
  [[nodiscard]] const rational& offset() const {
    require_segment("offset");
    return offset_;
  }

  [[nodiscard]] const rational& x_lo() const { return x_lo_; }
  [[nodiscard]] const rational& x_hi() const { return x_hi_; }
  [[nodiscard]] const rational& y_lo() const { return y_lo_; }
  [[nodiscard]] const rational& y_hi() const { return y_hi_; }

  [[nodiscard]] bool degenerate_x() const { return x_lo_ == x_hi_; }
  [[nodiscard]] bool degenerate_y() const { return y_lo_ == y_hi_; }
  [[nodiscard]] bool is_point() const { return degenerate_x() && degenerate_y(); }

  [[nodiscard]] interval_union x_extent() const {
    return interval_union::closed(x_lo_, x_hi_);
  }
  [[nodiscard]] interval_union y_extent() const {
    return interval_union::closed(y_lo_, y_hi_);
  }

  [[nodiscard]] bool covers_x(const rational& x) const { return x >= x_lo_ && x <= x_hi_; }

  /// Value of the affine formula at x; segments only.
  [[nodiscard]] rational value_at(const rational& x) const {
    require_segment("value_at");
    return slope_ * x + offset_;
  }

  /// The fiber contribution of this piece at x: a single point for a
  /// segment, the full y-interval for a rectangle, empty off the x-extent.
  [[nodiscard]] interval_union fiber_at(const rational& x) const {
    if (!covers_x(x)) return interval_union::empty();
    if (is_segment()) return interval_union::point(value_at(x));
    return interval_union::closed(y_lo_, y_hi_);
  }

  /// Whether the graph point (x, y) lies on this piece.
  [[nodiscard]] bool contains(const rational& x, const rational& y) const {
    if (!covers_x(x)) return false;
    if (is_segment()) return value_at(x) == y;
    return y >= y_lo_ && y <= y_hi_;
  }

  /// Swap the roles of x and y. Nonzero-slope segments invert to segments;
  /// rectangles transpose. (Horizontal pieces are rectangles by invariant,
  /// so the result never needs a vertical "segment".)
  [[nodiscard]] graph_piece transposed() const {
    if (is_rectangle()) return rectangle(y_lo_, y_hi_, x_lo_, x_hi_);
    const rational inv_slope = rational(1) / slope_;
    return segment(inv_slope, -offset_ / slope_, y_lo_, y_hi_);
  }

  friend bool operator==(const graph_piece& a, const graph_piece& b) {
    return a.sort_key() == b.sort_key();
  }
  friend bool operator!=(const graph_piece& a, const graph_piece& b) { return !(a == b); }
  friend bool operator<(const graph_piece& a, const graph_piece& b) {
    return a.sort_key() < b.sort_key();
  }

  [[nodiscard]] std::string str() const {
    if (is_segment())
      return "segment(y = " + slope_.str() + "*x + " + offset_.str() + ", x in [" +
             x_lo_.str() + ", " + x_hi_.str() + "])";
    return "rect([" + x_lo_.str() + ", " + x_hi_.str() + "] x [" + y_lo_.str() + ", " +
           y_hi_.str() + "])";
  }

 private:
  graph_piece() = default;

  void require_segment(const char* op) const {
    if (!is_segment())
      throw std::logic_error(std::string("graph_piece::") + op + ": not a segment");
  }

  void check_bounds() const {
    const rational zero(0);
    const rational one(1);
    if (x_lo_ < zero || x_hi_ > one || y_lo_ < zero || y_hi_ > one)
      throw std::invalid_argument("graph_piece: " + str() + " leaves the unit square");
  }

  [[nodiscard]] std::tuple<rational, rational, int, rational, rational, rational, rational>
  sort_key() const {
    return {x_lo_, x_hi_, kind_ == kind_t::segment ? 0 : 1, slope_, offset_, y_lo_, y_hi_};
  }

  kind_t kind_ = kind_t::rectangle;
  rational slope_;
  rational offset_;
  rational x_lo_;
  rational x_hi_;
  rational y_lo_;
  rational y_hi_;
};

/// Thrown when a map cannot be inverted because part of [0,1] has no
/// preimage; carries the exact uncovered set.
class pl_not_invertible_error : public std::domain_error {
 public:
  explicit pl_not_invertible_error(interval_union uncovered)
      : std::domain_error("invert: no preimage over " + uncovered.str()),
        uncovered_(std::move(uncovered)) {}

  [[nodiscard]] const interval_union& uncovered() const { return uncovered_; }

 private:
  interval_union uncovered_;
};

/// A multivalued map on [0,1] represented by the closed pieces of its graph.
/// Working with closed pieces over a compact square makes the graph closed,
/// which is exactly upper semi-continuity, so there is nothing to check at
/// runtime. Construction enforces the one genuine invariant: every fiber is
/// nonempty, i.e. the x-extents of the pieces cover [0,1].
///
/// Canonical form: zero-slope segments become degenerate rectangles,
/// collinear touching segments merge, axis-aligned touching rectangles
/// merge, pieces swallowed by a rectangle disappear, and the list is sorted.
/// Two maps are equal iff their canonical piece lists are equal.
class pl_multimap {
 public:
  explicit pl_multimap(std::vector<graph_piece> pieces) : pieces_(std::move(pieces)) {
    if (pieces_.empty()) throw std::invalid_argument("pl_multimap: no pieces");
    canonicalize();
    const interval_union covered = domain_cover();
    if (!interval_union::unit().subset_of(covered))
      throw std::invalid_argument("pl_multimap: fibers empty over " +
                                  unit_complement(covered).str());
  }

  static pl_multimap identity() {
    return pl_multimap({graph_piece::segment(rational(1), rational(0), rational(0), rational(1))});
  }

  [[nodiscard]] const std::vector<graph_piece>& pieces() const { return pieces_; }

  /// Union of the x-extents: [0,1] by the construction invariant.
  [[nodiscard]] interval_union domain_cover() const {
    interval_union u;
    for (const auto& p : pieces_) u = u.unite(p.x_extent());
    return u;
  }

  /// Union of the y-extents: the image of the whole space.
  [[nodiscard]] interval_union range_cover() const {
    interval_union u;
    for (const auto& p : pieces_) u = u.unite(p.y_extent());
    return u;
  }

  /// The fiber F(x), exactly: isolated points from segments, intervals from
  /// rectangles, over every piece whose closed x-extent contains x.
  [[nodiscard]] interval_union evaluate(const rational& x) const {
    if (x < rational(0) || x > rational(1))
      throw std::domain_error("evaluate: " + x.str() + " outside [0,1]");
    interval_union fiber;
    for (const auto& p : pieces_) fiber = fiber.unite(p.fiber_at(x));
    return fiber;
  }

  /// Exact image of a set, component by component and piece by piece. Open
  /// endpoints of U are respected: a piece touching U only in an excluded
  /// endpoint contributes nothing.
  [[nodiscard]] interval_union image_of(const interval_union& U) const {
    std::vector<interval> parts;
    for (const interval& c : U.components()) {
      const interval_union cu = interval_union::from_components({c});
      for (const auto& p : pieces_) {
        const interval_union overlap = cu.intersect(p.x_extent());
        if (overlap.is_empty()) continue;
        if (p.is_rectangle()) {
          parts.push_back({p.y_lo(), p.y_hi(), true, true});
          continue;
        }
        const interval_union img = overlap.affine_image(p.slope(), p.offset());
        for (const interval& o : img.components()) parts.push_back(o);
      }
    }
    return interval_union::from_components(std::move(parts));
  }

  /// The transposed graph. Requires every point of [0,1] to have a
  /// preimage, i.e. the y-extents to cover [0,1].
  [[nodiscard]] pl_multimap invert() const {
    const interval_union range = range_cover();
    if (!interval_union::unit().subset_of(range))
      throw pl_not_invertible_error(unit_complement(range));
    std::vector<graph_piece> out;
    out.reserve(pieces_.size());
    for (const auto& p : pieces_) out.push_back(p.transposed());
    return pl_multimap(std::move(out));
  }

  /// Whether the graph contains (x, y), i.e. y is in the fiber at x.
  [[nodiscard]] bool graph_contains(const rational& x, const rational& y) const {
    for (const auto& p : pieces_)
      if (p.contains(x, y)) return true;
    return false;
  }

  friend bool operator==(const pl_multimap& a, const pl_multimap& b) {
    return a.pieces_ == b.pieces_;
  }
  friend bool operator!=(const pl_multimap& a, const pl_multimap& b) { return !(a == b); }

  /// Relational composition: (x, z) with some y such that (x, y) is on G's
  /// graph and (y, z) on F's. The piece algebra is closed under this: chained
  /// segments compose affinely, and any step through a rectangle forgets one
  /// coordinate, producing a rectangle.
  friend pl_multimap compose(const pl_multimap& F, const pl_multimap& G) {
    std::vector<graph_piece> out;
    for (const auto& g : G.pieces_)
      for (const auto& f : F.pieces_) {
        const interval_union link = g.y_extent().intersect(f.x_extent());
        for (const interval& yc : link.components()) {
          if (g.is_segment() && f.is_segment()) {
            // x-range producing y in yc; the affine bijection keeps it
            // inside g's extent.
            const rational xa = (yc.lo - g.offset()) / g.slope();
            const rational xb = (yc.hi - g.offset()) / g.slope();
            const rational x0 = min(xa, xb);
            const rational x1 = max(xa, xb);
            if (x0 == x1) {
              const rational z = f.value_at(g.value_at(x0));
              out.push_back(graph_piece::rectangle(x0, x0, z, z));
            } else {
              out.push_back(graph_piece::segment(
                  f.slope() * g.slope(), f.slope() * g.offset() + f.offset(), x0, x1));
            }
          } else if (g.is_segment()) {
            const rational xa = (yc.lo - g.offset()) / g.slope();
            const rational xb = (yc.hi - g.offset()) / g.slope();
            out.push_back(
                graph_piece::rectangle(min(xa, xb), max(xa, xb), f.y_lo(), f.y_hi()));
          } else if (f.is_segment()) {
            const rational za = f.slope() * yc.lo + f.offset();
            const rational zb = f.slope() * yc.hi + f.offset();
            out.push_back(
                graph_piece::rectangle(g.x_lo(), g.x_hi(), min(za, zb), max(za, zb)));
          } else {
            out.push_back(graph_piece::rectangle(g.x_lo(), g.x_hi(), f.y_lo(), f.y_hi()));
          }
        }
      }
    return pl_multimap(std::move(out));
  }

  [[nodiscard]] std::string str() const {
    std::string s = "{";
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
      if (i > 0) s += ", ";
      s += pieces_[i].str();
    }
    return s + "}";
  }

 private:
  void canonicalize() {
    std::sort(pieces_.begin(), pieces_.end());
    pieces_.erase(std::unique(pieces_.begin(), pieces_.end()), pieces_.end());
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t i = 0; i < pieces_.size() && !changed; ++i)
        for (std::size_t j = i + 1; j < pieces_.size() && !changed; ++j) {
          if (auto merged = merge_pair(pieces_[i], pieces_[j])) {
            pieces_[i] = *merged;
            pieces_.erase(pieces_.begin() + static_cast<std::ptrdiff_t>(j));
            changed = true;
          } else if (swallowed_by(pieces_[j], pieces_[i])) {
            pieces_.erase(pieces_.begin() + static_cast<std::ptrdiff_t>(j));
            changed = true;
          } else if (swallowed_by(pieces_[i], pieces_[j])) {
            pieces_.erase(pieces_.begin() + static_cast<std::ptrdiff_t>(i));
            changed = true;
          }
        }
      if (changed) std::sort(pieces_.begin(), pieces_.end());
    }
  }

  /// Collinear touching segments merge; rectangles merge along either axis
  /// when the other extent matches exactly.
  static std::optional<graph_piece> merge_pair(const graph_piece& a, const graph_piece& b) {
    if (a.is_segment() && b.is_segment()) {
      if (a.slope() != b.slope() || a.offset() != b.offset()) return std::nullopt;
      if (b.x_lo() > a.x_hi() || a.x_lo() > b.x_hi()) return std::nullopt;
      return graph_piece::segment(a.slope(), a.offset(), min(a.x_lo(), b.x_lo()),
                                  max(a.x_hi(), b.x_hi()));
    }
    if (a.is_rectangle() && b.is_rectangle()) {
      if (a.y_lo() == b.y_lo() && a.y_hi() == b.y_hi() && b.x_lo() <= a.x_hi() &&
          a.x_lo() <= b.x_hi())
        return graph_piece::rectangle(min(a.x_lo(), b.x_lo()), max(a.x_hi(), b.x_hi()),
                                      a.y_lo(), a.y_hi());
      if (a.x_lo() == b.x_lo() && a.x_hi() == b.x_hi() && b.y_lo() <= a.y_hi() &&
          a.y_lo() <= b.y_hi())
        return graph_piece::rectangle(a.x_lo(), a.x_hi(), min(a.y_lo(), b.y_lo()),
                                      max(a.y_hi(), b.y_hi()));
    }
    return std::nullopt;
  }

  /// A piece adds nothing when a rectangle already contains it, and a point
  /// rectangle adds nothing when it lies on a segment.
  static bool swallowed_by(const graph_piece& inner, const graph_piece& outer) {
    if (outer.is_rectangle()) {
      return inner.x_lo() >= outer.x_lo() && inner.x_hi() <= outer.x_hi() &&
             inner.y_lo() >= outer.y_lo() && inner.y_hi() <= outer.y_hi();
    }
    return inner.is_rectangle() && inner.is_point() &&
           outer.contains(inner.x_lo(), inner.y_lo());
  }

  std::vector<graph_piece> pieces_;
};

}  // namespace setdyn
