#pragma once

#include <setdyn/interval.hpp>
#include <setdyn/metric.hpp>
#include <setdyn/pl.hpp>
#include <setdyn/pl_checks.hpp>
#include <setdyn/rational.hpp>
#include <setdyn/verdict.hpp>

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace setdyn {

/// Thrown when a truncated point admits no next coordinate.
class dead_end_error : public std::domain_error {
 public:
  explicit dead_end_error(const rational& last)
      : std::domain_error("dead end: " + last.str() +
                          " lies outside every fiber of the step relation"),
        last_(last) {}

  [[nodiscard]] const rational& last_coordinate() const { return last_; }

 private:
  rational last_;
};

/// A generalized inverse limit over a piecewise-linear multimap, presented
/// through the relation linking consecutive coordinates. of(M) is the space
/// of sequences with coords[i] in M(coords[i+1]). of_inverse(M) runs the
/// unfolded condition coords[i+1] in M(coords[i]) — the limit of the inverse
/// of M — without materializing that inverse, which need not exist as a
/// total map (e.g. when the forward branches leave the unit square). When
/// invert(M) does exist, of_inverse(M) and of(invert(M)) describe the same
/// space.
class limit_system {
 public:
  [[nodiscard]] static limit_system of(pl_multimap m) { return {std::move(m), false}; }

  [[nodiscard]] static limit_system of_inverse(pl_multimap m) { return {std::move(m), true}; }

  [[nodiscard]] const pl_multimap& base_map() const { return m_; }
  [[nodiscard]] bool inverse_direction() const { return inverse_; }

  /// Whether `next` may follow `prev` as the next coordinate.
  [[nodiscard]] bool links(const rational& prev, const rational& next) const {
    return inverse_ ? m_.graph_contains(prev, next) : m_.graph_contains(next, prev);
  }

  /// Exact set of admissible coordinates after `last`. May be empty.
  [[nodiscard]] interval_union continuation_set(const rational& last) const {
    if (inverse_) return m_.evaluate(last);
    interval_union out;
    for (const auto& p : m_.pieces()) out = out.unite(p.transposed().fiber_at(last));
    return out;
  }

  /// Exact set of values that may repeat forever: {c : links(c, c)}. The
  /// step relation is the base graph or its transpose, and both have the
  /// same diagonal.
  [[nodiscard]] interval_union loop_points() const { return detail::graph_diagonal(m_); }

 private:
  limit_system(pl_multimap m, bool inverse) : m_(std::move(m)), inverse_(inverse) {}

  pl_multimap m_;
  bool inverse_;
};

namespace detail {

inline void check_limit_coordinates(const std::vector<rational>& t) {
  for (std::size_t i = 0; i < t.size(); ++i)
    if (t[i] < rational(0) || t[i] > rational(1))
      throw std::domain_error("coordinate " + std::to_string(i) + " = " + t[i].str() +
                              " outside [0,1]");
}

/// Least lambda with y <= lambda*x across the given graph pieces, when one
/// exists. On a segment the ratio (a*x + b)/x is monotone in x, so it peaks
/// at an extent endpoint; on a rectangle at the top-left corner. A piece
/// meeting the y-axis above the origin admits no bound.
[[nodiscard]] inline std::optional<rational> step_ratio_bound(
    const std::vector<graph_piece>& pieces) {
  rational lam(0);
  for (const auto& p : pieces) {
    if (p.is_rectangle()) {
      if (p.y_hi().is_zero()) continue;
      if (p.x_lo().is_zero()) return std::nullopt;
      lam = max(lam, p.y_hi() / p.x_lo());
      continue;
    }
    const rational b = p.offset();
    if (b.is_zero()) {
      lam = max(lam, p.slope());
    } else if (b.sign() > 0) {
      if (p.x_lo().is_zero()) return std::nullopt;
      lam = max(lam, p.slope() + b / p.x_lo());
    } else {
      lam = max(lam, p.slope() + b / p.x_hi());
    }
  }
  return lam;
}

}  // namespace detail

/// Exact prefix test for membership in the limit: TRUE iff every consecutive
/// pair satisfies the step relation, FALSE at the first violating index.
[[nodiscard]] inline verdict validate_tuple(const limit_system& sys,
                                            const std::vector<rational>& t) {
  if (t.empty()) throw std::invalid_argument("validate_tuple: empty tuple");
  detail::check_limit_coordinates(t);
  for (std::size_t i = 0; i + 1 < t.size(); ++i) {
    if (!sys.links(t[i], t[i + 1]))
      return verdict::no({{"kind", "broken-link"},
                          {"index", i},
                          {"from", t[i].str()},
                          {"to", t[i + 1].str()},
                          {"continuations", sys.continuation_set(t[i]).str()}});
  }
  return verdict::yes({{"kind", "limit-prefix"}, {"length", t.size()}});
}

/// The exact set of admissible next coordinates of a valid truncated point.
/// Agrees with evaluate(invert(M), last) whenever that inverse exists.
[[nodiscard]] inline interval_union continuations(const limit_system& sys,
                                                  const std::vector<rational>& t) {
  const verdict valid = validate_tuple(sys, t);
  if (!valid.is_true())
    throw std::invalid_argument("continuations: tuple breaks at index " +
                                valid.certificate()["index"].dump());
  interval_union out = sys.continuation_set(t.back());
  if (out.is_empty()) throw dead_end_error(t.back());
  return out;
}

/// Follow the continuation sets from a single head coordinate while they
/// stay singletons. A revisited value closes a deterministic cycle, so the
/// whole infinite ray is forced; a non-singleton set is a branch point and
/// an empty one a dead end.
[[nodiscard]] inline verdict forced_ray(const limit_system& sys, const rational& x0, int depth) {
  if (depth < 1) throw std::invalid_argument("forced_ray: depth must be positive");
  detail::check_limit_coordinates({x0});
  std::vector<rational> ray{x0};
  json ray_json = json::array();
  ray_json.push_back(x0.str());
  for (int step = 1; step <= depth; ++step) {
    const interval_union c = sys.continuation_set(ray.back());
    if (c.is_empty())
      return verdict::no({{"kind", "dead-end"}, {"coordinate", step}, {"ray", ray_json}});
    if (c.components().size() != 1 || !c.components().front().is_point())
      return verdict::no({{"kind", "branching"},
                          {"coordinate", step},
                          {"continuations", c.str()},
                          {"ray", ray_json}});
    const rational next = c.inf();
    for (std::size_t j = 0; j < ray.size(); ++j) {
      if (ray[j] == next) {
        json cycle = json::array();
        for (std::size_t i = j; i < ray.size(); ++i) cycle.push_back(ray[i].str());
        return verdict::yes({{"kind", "forced-forever"},
                             {"ray", ray_json},
                             {"cycle_start", j},
                             {"cycle", cycle}});
      }
    }
    ray.push_back(next);
    ray_json.push_back(next.str());
  }
  return verdict::yes({{"kind", "forced-to-depth"}, {"depth", depth}, {"ray", ray_json}});
}

struct probe_options {
  /// Adopt the convention that membership in the rho-ball pins the head
  /// coordinate to the base's head, instead of only bounding its distance.
  bool force_head = false;
  std::size_t node_budget = 50'000;
};

/// Point-local sensitivity probe for the shift on the limit: search for a
/// point y within rho-distance eps of base whose shifted distance exceeds
/// delta at some n <= depth. Candidates carry eventually constant tails, so
/// every rho value is an exact rational. A contracting step relation (or a
/// delta beyond the metric's diameter) refutes the existence of a witness
/// outright; otherwise a fruitless search is only UNDECIDED.
[[nodiscard]] inline verdict point_sensitivity_probe(const limit_system& sys,
                                                     const eventually_periodic_seq& base,
                                                     const rational& eps, const rational& delta,
                                                     int depth, const probe_options& opt = {}) {
  if (eps.sign() <= 0 || delta.sign() <= 0)
    throw std::invalid_argument("point_sensitivity_probe: eps and delta must be positive");
  if (depth < 1) throw std::invalid_argument("point_sensitivity_probe: depth must be positive");
  const ground_metric metric = ground_metric::unit_interval();
  const std::size_t base_span = base.preperiod().size() + base.cycle().size();
  for (std::size_t i = 0; i < base_span; ++i) {
    const rational& v = base.at(i);
    if (v < rational(0) || v > rational(1))
      throw std::invalid_argument("point_sensitivity_probe: base coordinate " +
                                  std::to_string(i) + " = " + v.str() + " outside [0,1]");
    if (!sys.links(v, base.at(i + 1)))
      throw std::invalid_argument("point_sensitivity_probe: base is not a limit point (link " +
                                  std::to_string(i) + " -> " + std::to_string(i + 1) +
                                  " fails)");
  }

  // rho is capped by twice the ground diameter, so such a delta is never
  // exceeded by any pair at any depth.
  if (delta >= rational(2))
    return verdict::no({{"status", "NO-WITNESS-AT-DEPTH"},
                        {"depth", depth},
                        {"certificate", {{"kind", "diameter-bound"}, {"rho_max", "2"}}}});

  const bool zero_base = base == eventually_periodic_seq::constant(rational(0));

  // Contracting step relation around the zero ray: y_{i+1} <= lambda*y_i
  // forces y_i <= lambda^i*y_0 < lambda^i*eps for every ball member, hence
  // rho(sigma^n base, sigma^n y) <= eps*lambda^n/(1 - lambda/2) for n >= 1.
  if (zero_base) {
    std::vector<graph_piece> step;
    for (const auto& p : sys.base_map().pieces())
      step.push_back(sys.inverse_direction() ? p : p.transposed());
    if (auto lam = detail::step_ratio_bound(step); lam && *lam < rational(1)) {
      const rational bound = eps * *lam / (rational(1) - *lam / rational(2));
      if (bound <= delta)
        return verdict::no({{"status", "NO-WITNESS-AT-DEPTH"},
                            {"depth", depth},
                            {"certificate",
                             {{"kind", "contracting-step"},
                              {"lambda", lam->str()},
                              {"shifted_rho_bound", bound.str()}}}});
    }
  }

  if (opt.force_head) {
    const verdict ray = forced_ray(sys, base.at(0), depth);
    if (ray.is_true() && ray.certificate()["kind"] == "forced-forever") {
      // A pinned head with deterministic continuations leaves base itself as
      // the only candidate: the forced values must match base coordinate by
      // coordinate, and then every shifted distance vanishes.
      rational v = base.at(0);
      for (std::size_t i = 1; i <= static_cast<std::size_t>(depth); ++i) {
        const interval_union c = sys.continuation_set(v);
        v = c.inf();
        if (v != base.at(i))
          throw std::logic_error("point_sensitivity_probe: forced ray disagrees with base");
      }
      return verdict::no({{"status", "NO-WITNESS-AT-DEPTH"},
                          {"depth", depth},
                          {"certificate",
                           {{"kind", "forced-ray-merging"},
                            {"ray", ray.certificate()["ray"]}}}});
    }
  }

  const interval_union loops = sys.loop_points();
  const std::size_t head_cap = static_cast<std::size_t>(depth) + 2;

  // Candidate head coordinates: the base head and dyadic displacements from
  // it, smallest first.
  std::vector<rational> heads;
  if (opt.force_head) {
    heads.push_back(base.at(0));
  } else {
    heads.push_back(base.at(0));
    for (int j = 0; j <= depth; ++j) {
      for (const rational& v : {base.at(0) + pow2(-j), base.at(0) - pow2(-j)})
        if (v >= rational(0) && v <= rational(1)) heads.push_back(v);
    }
    std::sort(heads.begin(), heads.end());
    heads.erase(std::unique(heads.begin(), heads.end()), heads.end());
  }

  std::size_t nodes = 0;
  std::optional<verdict> found;

  // Exact ball and separation tests for head + constant tail c.
  auto try_close = [&](const std::vector<rational>& head, const rational& c) {
    eventually_periodic_seq y(head, {c});
    if (rho_exact(base, y, metric) >= eps) return;
    for (int n = 1; n <= depth; ++n) {
      const rational separated = rho_exact(base.shifted(n), y.shifted(n), metric);
      if (separated > delta) {
        json pre = json::array();
        for (const auto& v : y.preperiod()) pre.push_back(v.str());
        json cyc = json::array();
        for (const auto& v : y.cycle()) cyc.push_back(v.str());
        found = verdict::yes({{"status", "SEPARATION-WITNESS"},
                              {"witness_preperiod", pre},
                              {"witness_cycle", cyc},
                              {"n", n},
                              {"rho_to_base", rho_exact(base, y, metric).str()},
                              {"rho_shifted", separated.str()}});
        return;
      }
    }
  };

  auto search = [&](auto&& self, std::vector<rational>& head, const rational& ball_lower) -> void {
    if (found || ++nodes > opt.node_budget) return;
    const interval_union c = sys.continuation_set(head.back());
    if (c.is_empty()) return;
    const interval_union closers = c.intersect(loops);
    for (const interval& comp : closers.components()) {
      try_close(head, comp.lo);
      if (found) return;
      if (comp.lo != comp.hi) {
        try_close(head, comp.hi);
        if (found) return;
      }
    }
    if (head.size() >= head_cap) return;
    std::vector<rational> nexts;
    for (const interval& comp : c.components()) {
      nexts.push_back(comp.lo);
      if (comp.lo != comp.hi) nexts.push_back(comp.hi);
    }
    const rational follow = base.at(head.size());
    if (c.contains(follow)) nexts.push_back(follow);
    std::sort(nexts.begin(), nexts.end());
    nexts.erase(std::unique(nexts.begin(), nexts.end()), nexts.end());
    for (const rational& v : nexts) {
      const rational lower =
          ball_lower +
          metric.distance(base.at(head.size()), v) * pow2(-static_cast<int>(head.size()));
      if (lower >= eps) continue;
      head.push_back(v);
      self(self, head, lower);
      head.pop_back();
      if (found) return;
    }
  };

  for (const rational& h : heads) {
    const rational lower = metric.distance(base.at(0), h);
    if (lower >= eps) continue;
    std::vector<rational> head{h};
    search(search, head, lower);
    if (found) return *found;
    if (nodes > opt.node_budget) break;
  }

  json cert = {{"status", "NO-WITNESS-AT-DEPTH"},
               {"depth", depth},
               {"nodes", nodes},
               {"exhausted", nodes > opt.node_budget ? "node-budget" : "search-space"}};
  return verdict::undecided(std::move(cert));
}

namespace detail {

/// Minimum over v in [0,1] of the distance between the fibers of two step
/// pieces that both span the whole domain. Each fiber is an interval whose
/// endpoints are linear in v, so the gap is a convex piecewise-linear
/// function and its minimum sits at a domain endpoint or a breakpoint.
[[nodiscard]] inline rational min_vertical_gap(const graph_piece& p, const graph_piece& q) {
  struct lin {
    rational a, b;
    [[nodiscard]] rational at(const rational& v) const { return a * v + b; }
  };
  auto bounds = [](const graph_piece& g) -> std::pair<lin, lin> {
    if (g.is_rectangle()) return {{rational(0), g.y_lo()}, {rational(0), g.y_hi()}};
    return {{g.slope(), g.offset()}, {g.slope(), g.offset()}};
  };
  const auto [p_lo, p_hi] = bounds(p);
  const auto [q_lo, q_hi] = bounds(q);
  const lin g1{q_lo.a - p_hi.a, q_lo.b - p_hi.b};
  const lin g2{p_lo.a - q_hi.a, p_lo.b - q_hi.b};

  std::vector<rational> candidates{rational(0), rational(1)};
  auto add_root = [&](const lin& f, const lin& g) {
    const rational da = f.a - g.a;
    if (da.is_zero()) return;
    const rational v = (g.b - f.b) / da;
    if (v > rational(0) && v < rational(1)) candidates.push_back(v);
  };
  const lin zero{rational(0), rational(0)};
  add_root(g1, g2);
  add_root(g1, zero);
  add_root(g2, zero);

  std::optional<rational> best;
  for (const rational& v : candidates) {
    const rational gap = max(max(g1.at(v), g2.at(v)), rational(0));
    if (!best || gap < *best) best = gap;
  }
  return *best;
}

}  // namespace detail

/// Certified lower bound on the diameter of every continuation set.
///
/// A step piece whose domain covers all of [0,1] feeds into the continuation
/// set of every coordinate value. When two such pieces never come within s of
/// each other, every continuation set contains two points at distance >= s,
/// so from any tuple and any prescribed successor a branch at least s/2 away
/// is admissible at every position: the shift on the limit is sensitive with
/// delta = s/2. Returns the largest s certified by some pair of full-domain
/// pieces, or nullopt when no pair stays apart.
[[nodiscard]] inline std::optional<rational> branch_separation_bound(const limit_system& sys) {
  std::vector<graph_piece> full;
  for (const auto& p : sys.base_map().pieces()) {
    const graph_piece step = sys.inverse_direction() ? p : p.transposed();
    if (step.x_lo().is_zero() && step.x_hi() == rational(1)) full.push_back(step);
  }
  std::optional<rational> best;
  for (std::size_t i = 0; i < full.size(); ++i)
    for (std::size_t j = i + 1; j < full.size(); ++j) {
      const rational gap = detail::min_vertical_gap(full[i], full[j]);
      if (gap.sign() > 0 && (!best || gap > *best)) best = gap;
    }
  return best;
}

}  // namespace setdyn
