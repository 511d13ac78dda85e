#pragma once

#include <setdyn/interval.hpp>
#include <setdyn/pl.hpp>
#include <setdyn/rational.hpp>
#include <setdyn/verdict.hpp>

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace setdyn {

/// A finite orbit together with the piece chosen at each step, so any
/// claimed orbit can be replayed against the map it came from.
struct branch_orbit {
  std::vector<rational> points;
  std::vector<std::size_t> choices;

  [[nodiscard]] json to_json() const {
    json pts = json::array();
    for (const auto& p : points) pts.push_back(p.str());
    json ch = json::array();
    for (auto c : choices) ch.push_back(c);
    return {{"points", pts}, {"choices", ch}};
  }
};

[[nodiscard]] inline bool replays(const pl_multimap& F, const branch_orbit& o) {
  if (o.points.empty() || o.choices.size() + 1 != o.points.size()) return false;
  for (std::size_t i = 0; i < o.choices.size(); ++i) {
    if (o.choices[i] >= F.pieces().size()) return false;
    if (!F.pieces()[o.choices[i]].contains(o.points[i], o.points[i + 1])) return false;
  }
  return true;
}

namespace detail {

/// Image sets are canonical unions, but hostile inputs can double the
/// component count every step; past this cap a bounded search gives up on
/// the affected probe instead of thrashing.
inline constexpr std::size_t image_component_cap = 4096;

/// Extend a chain of exact iterated images to length n+1. False when the
/// component cap is hit first.
[[nodiscard]] inline bool grow_chain(const pl_multimap& F, std::vector<interval_union>& chain,
                                     int n) {
  while (static_cast<int>(chain.size()) <= n) {
    interval_union next = F.image_of(chain.back());
    if (next.components().size() > image_component_cap) return false;
    chain.push_back(std::move(next));
  }
  return true;
}

/// Walk an orbit backwards from `target` through precomputed images
/// chain[i] = F^i(start-set). Piece order and least admissible points make
/// the reconstruction deterministic. Fails only if the target is not in the
/// final image.
[[nodiscard]] inline std::optional<branch_orbit> reconstruct_orbit(
    const pl_multimap& F, const std::vector<interval_union>& chain, const rational& target) {
  const std::size_t n = chain.size() - 1;
  if (!chain[n].contains(target)) return std::nullopt;
  std::vector<rational> points(n + 1);
  std::vector<std::size_t> choices(n);
  points[n] = target;
  for (std::size_t i = n; i > 0; --i) {
    bool found = false;
    for (std::size_t pi = 0; pi < F.pieces().size() && !found; ++pi) {
      const auto& p = F.pieces()[pi];
      if (p.is_segment()) {
        const rational x = (points[i] - p.offset()) / p.slope();
        if (p.covers_x(x) && chain[i - 1].contains(x)) {
          points[i - 1] = x;
          choices[i - 1] = pi;
          found = true;
        }
      } else if (points[i] >= p.y_lo() && points[i] <= p.y_hi()) {
        const interval_union from = chain[i - 1].intersect(p.x_extent());
        if (!from.is_empty()) {
          points[i - 1] = from.inf();
          choices[i - 1] = pi;
          found = true;
        }
      }
    }
    if (!found) return std::nullopt;
  }
  return branch_orbit{std::move(points), std::move(choices)};
}

/// The exact diagonal {x : (x, x) in graph(F)}: per segment a solution of
/// x = a*x + b inside the extent (or the whole extent for the identity
/// piece), per rectangle the overlap of its two extents.
[[nodiscard]] inline interval_union graph_diagonal(const pl_multimap& F) {
  std::vector<interval> parts;
  for (const auto& piece : F.pieces()) {
    if (piece.is_segment()) {
      if (piece.slope() == rational(1)) {
        if (piece.offset().is_zero())
          parts.push_back({piece.x_lo(), piece.x_hi(), true, true});
      } else {
        const rational x = piece.offset() / (rational(1) - piece.slope());
        if (piece.covers_x(x)) parts.push_back({x, x, true, true});
      }
    } else {
      const rational lo = max(piece.x_lo(), piece.y_lo());
      const rational hi = min(piece.x_hi(), piece.y_hi());
      if (lo <= hi) parts.push_back({lo, hi, true, true});
    }
  }
  return interval_union::from_components(std::move(parts));
}

/// The point of closed T farthest from closed S, with its distance. The
/// maximum is attained at a component endpoint of T or at a gap midpoint of
/// S lying in T; ties resolve to the least point.
[[nodiscard]] inline std::pair<rational, rational> farthest_point(const interval_union& T,
                                                                  const interval_union& S) {
  std::vector<rational> candidates;
  for (const interval& c : T.components()) {
    candidates.push_back(c.lo);
    candidates.push_back(c.hi);
  }
  const auto& sc = S.components();
  for (std::size_t i = 0; i + 1 < sc.size(); ++i) {
    const rational mid = (sc[i].hi + sc[i + 1].lo) / rational(2);
    if (T.contains(mid)) candidates.push_back(mid);
  }
  rational best_d(-1);
  rational best_x(0);
  for (const auto& x : candidates) {
    const rational d = S.distance_to(x);
    if (d > best_d || (d == best_d && x < best_x)) {
      best_d = d;
      best_x = x;
    }
  }
  return {best_x, best_d};
}

/// Exact minimum over x of the fiber spread sup F(x) - inf F(x). The spread
/// is piecewise linear in x with kinks only where two of the pieces' value
/// lines cross or a piece begins or ends, so scanning those finitely many
/// x-values is exact.
[[nodiscard]] inline std::pair<rational, rational> min_fiber_spread(const pl_multimap& F) {
  std::set<rational> xs{rational(0), rational(1)};
  struct line {
    rational a, b;
  };
  std::vector<line> lines;
  for (const auto& p : F.pieces()) {
    xs.insert(p.x_lo());
    xs.insert(p.x_hi());
    if (p.is_segment()) {
      lines.push_back({p.slope(), p.offset()});
    } else {
      lines.push_back({rational(0), p.y_lo()});
      lines.push_back({rational(0), p.y_hi()});
    }
  }
  for (std::size_t i = 0; i < lines.size(); ++i)
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      if (lines[i].a == lines[j].a) continue;
      const rational x = (lines[j].b - lines[i].b) / (lines[i].a - lines[j].a);
      if (x >= rational(0) && x <= rational(1)) xs.insert(x);
    }
  rational best_x(0);
  rational best_spread;
  bool first = true;
  for (const auto& x : xs) {
    const rational s = F.evaluate(x).spread();
    if (first || s < best_spread) {
      best_x = x;
      best_spread = s;
      first = false;
    }
  }
  return {best_x, best_spread};
}

}  // namespace detail

/// The exact set of points whose fiber is all of [0,1]. Segments contribute
/// single values, so only stacked rectangles can fill a fiber; between
/// rectangle breakpoints the active set of rectangles does not change.
[[nodiscard]] inline interval_union full_fiber_points(const pl_multimap& F) {
  std::set<rational> cuts{rational(0), rational(1)};
  for (const auto& p : F.pieces())
    if (p.is_rectangle()) {
      cuts.insert(p.x_lo());
      cuts.insert(p.x_hi());
    }
  const std::vector<rational> xs(cuts.begin(), cuts.end());
  const auto full_at = [&](const rational& probe) {
    interval_union u;
    for (const auto& p : F.pieces())
      if (p.is_rectangle() && p.covers_x(probe)) u = u.unite(p.y_extent());
    return u == interval_union::unit();
  };
  std::vector<interval> out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (full_at(xs[i])) out.push_back({xs[i], xs[i], true, true});
    if (i + 1 < xs.size() && full_at((xs[i] + xs[i + 1]) / rational(2)))
      out.push_back({xs[i], xs[i + 1], false, false});
  }
  return interval_union::from_components(std::move(out));
}

/// Periodic structure up to period p: for each k the diagonal of the exact
/// k-th relational iterate, with replayed branch cycles from the component
/// endpoints as evidence.
struct periodic_points_report {
  int max_period = 0;
  int period_reached = 0;
  std::vector<std::pair<int, interval_union>> by_period;
  interval_union all;
  std::vector<std::pair<int, branch_orbit>> witnesses;

  [[nodiscard]] json to_json() const {
    json per = json::array();
    for (const auto& [k, set] : by_period)
      per.push_back({{"period", k}, {"points", set.str()}});
    json wit = json::array();
    for (const auto& [k, orbit] : witnesses)
      wit.push_back({{"period", k}, {"orbit", orbit.to_json()}});
    return {{"max_period", max_period},
            {"period_reached", period_reached},
            {"by_period", per},
            {"all", all.str()},
            {"witnesses", wit}};
  }
};

/// The k-th iterate's piece count can grow geometrically, so an optional
/// piece budget stops the scan once the composed graph exceeds it; the
/// report then covers only the periods reached, never falsely fewer points.
[[nodiscard]] inline periodic_points_report pl_periodic_points_bounded(const pl_multimap& F,
                                                                       int p,
                                                                       int piece_budget = 0) {
  if (p < 1) throw std::invalid_argument("pl_periodic_points_bounded: p must be positive");
  periodic_points_report rep;
  rep.max_period = p;
  pl_multimap Fk = F;
  for (int k = 1; k <= p; ++k) {
    if (k > 1) {
      if (piece_budget > 0 && static_cast<int>(Fk.pieces().size()) > piece_budget) break;
      Fk = compose(F, Fk);
    }
    rep.period_reached = k;
    interval_union diag = detail::graph_diagonal(Fk);
    for (const interval& c : diag.components()) {
      for (const rational& x : {c.lo, c.hi}) {
        auto chain = std::vector<interval_union>{interval_union::point(x)};
        if (!detail::grow_chain(F, chain, k))
          throw std::logic_error("pl_periodic_points_bounded: image blow-up on replay");
        auto orbit = detail::reconstruct_orbit(F, chain, x);
        if (!orbit || !replays(F, *orbit) || orbit->points.front() != x)
          throw std::logic_error("pl_periodic_points_bounded: diagonal point failed replay");
        if (x == c.lo) rep.witnesses.push_back({k, std::move(*orbit)});
        if (c.lo == c.hi) break;
      }
    }
    rep.all = rep.all.unite(diag);
    rep.by_period.emplace_back(k, std::move(diag));
  }
  return rep;
}

/// Least n in [1, horizon] with F^n(U) meeting V, by exact image iteration.
[[nodiscard]] inline std::optional<int> pl_reaches(const pl_multimap& F, const interval_union& U,
                                                   const interval_union& V, int horizon) {
  if (horizon < 1) throw std::invalid_argument("pl_reaches: horizon must be positive");
  std::vector<interval_union> chain{U};
  for (int n = 1; n <= horizon; ++n) {
    if (!detail::grow_chain(F, chain, n)) return std::nullopt;
    if (chain[static_cast<std::size_t>(n)].intersects(V)) return n;
  }
  return std::nullopt;
}

/// Bounded transitivity search over the dyadic open basis at the given
/// resolution. A bounded search can verify (every basis pair meets under
/// iteration, and open sets contain basis cells) but never refute, so the
/// verdict is TRUE or UNDECIDED.
[[nodiscard]] inline verdict pl_is_transitive_bounded(const pl_multimap& F, int resolution,
                                                      int horizon) {
  if (resolution < 1 || horizon < 1)
    throw std::invalid_argument("pl_is_transitive_bounded: bounds must be positive");
  const int cells = 1 << resolution;
  std::vector<interval_union> basis;
  basis.reserve(static_cast<std::size_t>(cells));
  for (int j = 0; j < cells; ++j)
    basis.push_back(interval_union::open(rational(j, cells), rational(j + 1, cells)));
  json table = json::array();
  json failures = json::array();
  for (const auto& U : basis) {
    std::vector<interval_union> chain{U};
    for (const auto& V : basis) {
      std::optional<int> hit;
      for (int n = 1; n <= horizon && !hit; ++n) {
        if (!detail::grow_chain(F, chain, n)) break;
        if (chain[static_cast<std::size_t>(n)].intersects(V)) hit = n;
      }
      if (hit)
        table.push_back({{"from", U.str()}, {"to", V.str()}, {"steps", *hit}});
      else
        failures.push_back({{"from", U.str()}, {"to", V.str()}});
    }
  }
  if (failures.empty())
    return verdict::yes({{"kind", "all-basis-pairs-reached"},
                         {"resolution", resolution},
                         {"horizon", horizon},
                         {"pairs", table}});
  return verdict::undecided({{"kind", "horizon-exhausted"},
                             {"resolution", resolution},
                             {"horizon", horizon},
                             {"unreached_pairs", failures}});
}

/// Grid search for the strong-sensitivity quantifier with delta fixed: for
/// every grid point x and every epsilon of the schedule, hunt for a nearby
/// start y and a step count n at which some orbit value of y keeps an exact
/// distance above delta from the whole of F^n(x). The full-fiber fast path
/// is exact: a full fiber anywhere makes separation impossible, since each
/// later image of that point contains every competing orbit value.
/// Grid success is evidence, not proof, for the continuum statement, so the
/// positive verdict is TRUE with kind "true-on-grid".
[[nodiscard]] inline verdict verify_strong_sensitivity(const pl_multimap& F,
                                                       const rational& delta, int grid,
                                                       const std::vector<rational>& eps_schedule,
                                                       int horizon) {
  if (!(delta > rational(0)))
    throw std::invalid_argument("verify_strong_sensitivity: delta must be positive");
  if (grid < 1 || horizon < 1)
    throw std::invalid_argument("verify_strong_sensitivity: bounds must be positive");
  if (eps_schedule.empty())
    throw std::invalid_argument("verify_strong_sensitivity: empty epsilon schedule");
  for (const auto& eps : eps_schedule)
    if (!(eps > rational(0)))
      throw std::invalid_argument("verify_strong_sensitivity: epsilons must be positive");

  const interval_union full = full_fiber_points(F);
  if (!full.is_empty())
    return verdict::no(
        {{"kind", "full-fiber"},
         {"witness_x", full.inf().str()},
         {"full_fiber_points", full.str()},
         {"reason",
          "the fiber at the witness is all of the space, so every later image of the witness "
          "contains every competing orbit value and no separation exceeds delta"}});

  json rows = json::array();
  json failures = json::array();
  for (int gi = 0; gi <= grid; ++gi) {
    const rational x(gi, grid);
    std::vector<interval_union> x_chain{interval_union::point(x)};
    for (const auto& eps : eps_schedule) {
      std::vector<rational> ys;
      for (int q = 1; q <= 3; ++q)
        for (const int sgn : {-1, 1}) {
          const rational y = x + rational(sgn * q, 4) * eps;
          if (y >= rational(0) && y <= rational(1) && y != x) ys.push_back(y);
        }
      std::sort(ys.begin(), ys.end());
      ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
      std::vector<std::vector<interval_union>> y_chains;
      y_chains.reserve(ys.size());
      for (const auto& y : ys) y_chains.push_back({interval_union::point(y)});
      std::optional<json> row;
      bool capped = false;
      for (int n = 1; n <= horizon && !row && !capped; ++n) {
        if (!detail::grow_chain(F, x_chain, n)) {
          capped = true;
          break;
        }
        for (std::size_t yi = 0; yi < ys.size() && !row; ++yi) {
          if (!detail::grow_chain(F, y_chains[yi], n)) {
            capped = true;
            break;
          }
          const auto [pt, dist] = detail::farthest_point(
              y_chains[yi][static_cast<std::size_t>(n)], x_chain[static_cast<std::size_t>(n)]);
          if (dist > delta) {
            std::vector<interval_union> prefix(y_chains[yi].begin(),
                                               y_chains[yi].begin() + n + 1);
            auto orbit = detail::reconstruct_orbit(F, prefix, pt);
            row = json{{"x", x.str()},
                       {"eps", eps.str()},
                       {"y", ys[yi].str()},
                       {"n", n},
                       {"separated_point", pt.str()},
                       {"distance", dist.str()},
                       {"orbit", orbit ? orbit->to_json() : json()}};
          }
        }
      }
      if (row)
        rows.push_back(*row);
      else
        failures.push_back({{"x", x.str()},
                            {"eps", eps.str()},
                            {"reason", capped ? "image-complexity-cap" : "horizon-exhausted"}});
    }
  }
  if (failures.empty())
    return verdict::yes({{"kind", "true-on-grid"},
                         {"delta", delta.str()},
                         {"grid", grid},
                         {"horizon", horizon},
                         {"witnesses", rows}});
  return verdict::undecided({{"kind", "no-separation-at-grid-points"},
                             {"delta", delta.str()},
                             {"grid", grid},
                             {"horizon", horizon},
                             {"failing", failures},
                             {"witnesses_found", rows.size()}});
}

/// Hunt for a point and radius around which no orbit can drift more than
/// delta away: a window around a candidate anchor whose forward orbit
/// closure stabilizes within the horizon and has spread at most delta is an
/// exact certificate. The opposite direction is also decidable in one
/// family of cases: when the minimum fiber spread of some iterate exceeds
/// delta, the point itself carries two orbits separated beyond delta, so no
/// witness exists at all. Otherwise the search is inconclusive.
[[nodiscard]] inline verdict find_non_sensitivity_witness(const pl_multimap& F,
                                                          const rational& delta, int horizon) {
  if (!(delta > rational(0)))
    throw std::invalid_argument("find_non_sensitivity_witness: delta must be positive");
  if (horizon < 1)
    throw std::invalid_argument("find_non_sensitivity_witness: horizon must be positive");

  std::set<rational> anchors{rational(0)};
  const auto add_anchor = [&](const rational& a) {
    const rational clipped = max(rational(0), min(a, rational(1)));
    if (clipped < rational(1)) anchors.insert(clipped);
  };
  add_anchor(rational(1) - delta);
  for (const auto& p : F.pieces()) {
    add_anchor(p.x_lo());
    add_anchor(p.x_hi());
    add_anchor(p.x_lo() - delta);
    add_anchor(p.x_hi() - delta);
    if (p.is_segment()) {
      if (p.slope() != rational(1)) {
        const rational fp = p.offset() / (rational(1) - p.slope());
        if (p.covers_x(fp)) {
          add_anchor(fp);
          add_anchor(fp - delta / rational(2));
          add_anchor(fp - delta);
        }
      }
    } else {
      const rational lo = max(p.x_lo(), p.y_lo());
      if (lo <= min(p.x_hi(), p.y_hi())) add_anchor(lo);
    }
  }

  for (const auto& c : anchors) {
    const rational hi = min(c + delta, rational(1));
    if (c >= hi) continue;
    const interval_union window = interval_union::closed(c, hi);
    interval_union orbit_hull = window;
    bool stable = false;
    int stable_after = 0;
    for (int k = 1; k <= horizon; ++k) {
      interval_union next = orbit_hull.unite(F.image_of(orbit_hull));
      if (next == orbit_hull) {
        stable = true;
        stable_after = k;
        break;
      }
      if (next.components().size() > detail::image_component_cap) break;
      orbit_hull = std::move(next);
    }
    if (!stable || orbit_hull.spread() > delta) continue;
    rational x;
    rational eps;
    if (c == rational(0)) {
      x = c;
      eps = hi - c;
    } else if (hi == rational(1)) {
      x = hi;
      eps = hi - c;
    } else {
      x = (c + hi) / rational(2);
      eps = (hi - c) / rational(2);
    }
    return verdict::yes({{"kind", "trapping-region"},
                         {"found", true},
                         {"x", x.str()},
                         {"eps", eps.str()},
                         {"window", window.str()},
                         {"region", orbit_hull.str()},
                         {"spread", orbit_hull.spread().str()},
                         {"stable_after", stable_after},
                         {"delta", delta.str()}});
  }

  pl_multimap Fn = F;
  for (int n = 1; n <= horizon; ++n) {
    if (n > 1) {
      if (Fn.pieces().size() > 256) break;
      Fn = compose(F, Fn);
    }
    const auto [at_x, spread] = detail::min_fiber_spread(Fn);
    if (spread > delta)
      return verdict::no(
          {{"kind", "fibers-forced-apart"},
           {"found", false},
           {"iterate", n},
           {"min_spread", spread.str()},
           {"tightest_x", at_x.str()},
           {"reason",
            "every point's image at this iterate contains two values more than delta apart, "
            "so even y = x carries an orbit separating from some orbit of x"}});
  }
  return verdict::undecided(
      {{"kind", "no-witness-found"}, {"found", false}, {"delta", delta.str()},
       {"horizon", horizon}, {"windows_tried", anchors.size()}});
}

/// Minimal separation after L matched-branch steps of the doubling/tripling
/// map started at x0 and x0 + eps. Matched branches multiply both orbits,
/// and so the gap, by the same factor each step; the factors are positive,
/// so minimizing each step minimizes the product, and the all-doubling
/// schedule realizes eps * 2^L.
[[nodiscard]] inline rational ratio_orbit_separation(const rational& x0, const rational& eps,
                                                     int L) {
  if (x0 < rational(0))
    throw std::invalid_argument("ratio_orbit_separation: x0 must be nonnegative");
  if (eps < rational(0))
    throw std::invalid_argument("ratio_orbit_separation: eps must be nonnegative");
  if (L < 1) throw std::invalid_argument("ratio_orbit_separation: L must be positive");
  rational gap = eps;
  for (int l = 0; l < L; ++l) gap = min(rational(2) * gap, rational(3) * gap);
  return gap;
}

/// The two orbits realizing the minimal separation, for replayable reports.
struct ratio_orbit_witness {
  std::vector<rational> base_orbit;
  std::vector<rational> shifted_orbit;
  std::vector<int> factors;
  rational separation;

  [[nodiscard]] json to_json() const {
    const auto encode = [](const std::vector<rational>& v) {
      json a = json::array();
      for (const auto& r : v) a.push_back(r.str());
      return a;
    };
    json f = json::array();
    for (int m : factors) f.push_back(m);
    return {{"base_orbit", encode(base_orbit)},
            {"shifted_orbit", encode(shifted_orbit)},
            {"factors", f},
            {"separation", separation.str()}};
  }
};

[[nodiscard]] inline ratio_orbit_witness ratio_orbit_separation_witness(const rational& x0,
                                                                        const rational& eps,
                                                                        int L) {
  const rational sep = ratio_orbit_separation(x0, eps, L);
  ratio_orbit_witness w;
  w.base_orbit.push_back(x0);
  w.shifted_orbit.push_back(x0 + eps);
  for (int l = 0; l < L; ++l) {
    w.factors.push_back(2);
    w.base_orbit.push_back(rational(2) * w.base_orbit.back());
    w.shifted_orbit.push_back(rational(2) * w.shifted_orbit.back());
  }
  w.separation = abs(w.shifted_orbit.back() - w.base_orbit.back());
  if (w.separation != sep)
    throw std::logic_error("ratio_orbit_separation_witness: schedule does not realize minimum");
  return w;
}

/// Bounded exactness of a single-valued map: the least n with f^n(U) equal
/// to the whole space. Multivalued input is a caller error, checked
/// exactly: no thick rectangles, and overlapping pieces must agree.
[[nodiscard]] inline verdict is_exact_bounded(const pl_multimap& f, const interval_union& U,
                                              int horizon) {
  if (horizon < 1) throw std::invalid_argument("is_exact_bounded: horizon must be positive");
  if (U.is_empty()) throw std::invalid_argument("is_exact_bounded: U must be nonempty");
  const auto value_on = [](const graph_piece& p, const rational& x) {
    return p.is_segment() ? p.value_at(x) : p.y_lo();
  };
  for (const auto& p : f.pieces())
    if (p.is_rectangle() && p.y_lo() < p.y_hi())
      throw std::invalid_argument("is_exact_bounded: multivalued fiber over [" + p.x_lo().str() +
                                  ", " + p.x_hi().str() + "]");
  const auto& pieces = f.pieces();
  for (std::size_t i = 0; i < pieces.size(); ++i)
    for (std::size_t j = i + 1; j < pieces.size(); ++j) {
      const rational lo = max(pieces[i].x_lo(), pieces[j].x_lo());
      const rational hi = min(pieces[i].x_hi(), pieces[j].x_hi());
      if (lo > hi) continue;
      for (const rational& probe : {lo, hi})
        if (value_on(pieces[i], probe) != value_on(pieces[j], probe))
          throw std::invalid_argument("is_exact_bounded: multivalued at x = " + probe.str());
    }
  interval_union S = U;
  for (int n = 1; n <= horizon; ++n) {
    S = f.image_of(S);
    if (S == interval_union::unit())
      return verdict::yes({{"kind", "image-fills-space"}, {"steps", n}});
  }
  return verdict::undecided(
      {{"kind", "horizon-exhausted"}, {"horizon", horizon}, {"final_image", S.str()}});
}

/// Lower semi-continuity, decided exactly on a finite sufficient basis of
/// relatively open intervals. The interesting values are the pieces' y
/// endpoints and corner values; gaps between consecutive values catch fiber
/// components that appear as intervals, and midpoint-framed neighborhoods
/// of each value catch components that appear as isolated points. For each
/// basis set V, the set of x whose fiber meets V is computed exactly; lower
/// semi-continuity is equivalent to all of these being relatively open.
[[nodiscard]] inline verdict is_lsc(const pl_multimap& F) {
  std::set<rational> ys{rational(0), rational(1)};
  for (const auto& p : F.pieces()) {
    if (p.is_segment()) {
      ys.insert(p.value_at(p.x_lo()));
      ys.insert(p.value_at(p.x_hi()));
    } else {
      ys.insert(p.y_lo());
      ys.insert(p.y_hi());
    }
  }
  const std::vector<rational> v(ys.begin(), ys.end());
  std::vector<interval_union> basis;
  for (std::size_t i = 0; i + 1 < v.size(); ++i)
    basis.push_back(interval_union::open(v[i], v[i + 1]));
  for (std::size_t i = 0; i < v.size(); ++i) {
    interval b;
    if (i == 0) {
      b.lo = v.front();
      b.closed_lo = true;
    } else {
      b.lo = (v[i - 1] + v[i]) / rational(2);
      b.closed_lo = false;
    }
    if (i + 1 == v.size()) {
      b.hi = v.back();
      b.closed_hi = true;
    } else {
      b.hi = (v[i] + v[i + 1]) / rational(2);
      b.closed_hi = false;
    }
    basis.push_back(interval_union::from_components({b}));
  }
  std::sort(basis.begin(), basis.end(), [](const interval_union& a, const interval_union& b) {
    const auto& ca = a.components().front();
    const auto& cb = b.components().front();
    if (ca.lo != cb.lo) return ca.lo < cb.lo;
    return ca.hi < cb.hi;
  });
  basis.erase(std::unique(basis.begin(), basis.end()), basis.end());

  for (const auto& V : basis) {
    interval_union preimage;
    for (const auto& p : F.pieces()) {
      if (p.is_segment()) {
        const rational inv_slope = rational(1) / p.slope();
        preimage = preimage.unite(
            V.affine_image(inv_slope, -p.offset() / p.slope()).intersect(p.x_extent()));
      } else if (p.y_extent().intersects(V)) {
        preimage = preimage.unite(p.x_extent());
      }
    }
    for (const interval& c : preimage.components()) {
      std::optional<rational> bad;
      if (c.closed_lo && c.lo > rational(0)) bad = c.lo;
      else if (c.closed_hi && c.hi < rational(1)) bad = c.hi;
      if (bad)
        return verdict::no({{"kind", "abrupt-fiber"},
                            {"x", bad->str()},
                            {"basis_interval", V.str()},
                            {"preimage", preimage.str()}});
    }
  }
  return verdict::yes(
      {{"kind", "preimage-open-on-basis"}, {"basis_size", basis.size()}});
}

}  // namespace setdyn
