#pragma once

#include <setdyn/finite_checks.hpp>
#include <setdyn/metric.hpp>
#include <setdyn/rational.hpp>
#include <setdyn/relation.hpp>
#include <setdyn/verdict.hpp>

#include <algorithm>
#include <cstdint>
#include <iterator>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace setdyn {

/// The space of sequences (x_0, x_1, ...) with x_i in F(x_{i+1}), presented
/// as the set of infinite walks of a step graph: a step from a to b is
/// allowed iff a in F(b). Only core states (those admitting an infinite
/// chain of predecessors) can appear in such sequences, and on the core
/// every state keeps at least one allowed continuation.
class vertex_shift {
 public:
  explicit vertex_shift(relation_system base) : base_(std::move(base)) {
    // Greatest fixpoint: repeatedly drop states with no surviving
    // predecessor. One pruning round is one application of the image map,
    // so the survivors are the eventual image of the whole space.
    std::vector<bool> alive(static_cast<std::size_t>(base_.size()), true);
    bool changed = true;
    while (changed) {
      changed = false;
      std::vector<bool> covered(static_cast<std::size_t>(base_.size()), false);
      for (state u = 0; u < base_.size(); ++u)
        if (alive[static_cast<std::size_t>(u)])
          for (state v : base_.fiber(u)) covered[static_cast<std::size_t>(v)] = true;
      for (state v = 0; v < base_.size(); ++v)
        if (alive[static_cast<std::size_t>(v)] && !covered[static_cast<std::size_t>(v)]) {
          alive[static_cast<std::size_t>(v)] = false;
          changed = true;
        }
    }
    for (state v = 0; v < base_.size(); ++v)
      if (alive[static_cast<std::size_t>(v)]) core_.push_back(v);
    continuations_.resize(static_cast<std::size_t>(base_.size()));
    for (state v : core_)
      for (state u : core_)
        if (base_.has_edge(u, v)) continuations_[static_cast<std::size_t>(v)].push_back(u);
  }

  [[nodiscard]] const relation_system& base() const { return base_; }
  [[nodiscard]] const std::vector<state>& core() const { return core_; }
  [[nodiscard]] bool empty() const { return core_.empty(); }

  [[nodiscard]] bool in_core(state s) const {
    return std::binary_search(core_.begin(), core_.end(), s);
  }

  /// States allowed at the next coordinate after v: {u in core : v in F(u)}.
  [[nodiscard]] const std::vector<state>& continuations(state v) const {
    if (!in_core(v)) throw std::domain_error("continuations: state not in core");
    return continuations_[static_cast<std::size_t>(v)];
  }

  [[nodiscard]] bool step_allowed(state a, state b) const {
    return in_core(a) && in_core(b) && base_.has_edge(b, a);
  }

  /// Position of an original state inside the sorted core.
  [[nodiscard]] state core_position(state s) const {
    const auto it = std::lower_bound(core_.begin(), core_.end(), s);
    if (it == core_.end() || *it != s) throw std::domain_error("core_position: not in core");
    return static_cast<state>(it - core_.begin());
  }

  /// The step graph as a relation system over core positions, keeping the
  /// original labels. Undefined on an empty core.
  [[nodiscard]] relation_system step_system() const {
    if (empty()) throw std::domain_error("step_system: empty core");
    std::vector<std::string> labels;
    std::vector<std::vector<state>> fibers;
    for (state v : core_) {
      labels.push_back(base_.label(v));
      std::vector<state> fiber;
      for (state u : continuations_[static_cast<std::size_t>(v)])
        fiber.push_back(core_position(u));
      fibers.push_back(std::move(fiber));
    }
    return {std::move(labels), std::move(fibers)};
  }

 private:
  relation_system base_;
  std::vector<state> core_;
  std::vector<std::vector<state>> continuations_;
};

[[nodiscard]] inline vertex_shift build_limit(relation_system F) {
  return vertex_shift(std::move(F));
}

/// A finite prefix of a limit point, anchored at coordinate 0. Construction
/// rejects words that are not prefixes of any point: every consecutive pair
/// must be an allowed step and the last entry must be extendable.
class cylinder_word {
 public:
  cylinder_word(const vertex_shift& S, std::vector<state> entries)
      : entries_(std::move(entries)) {
    if (entries_.empty()) throw std::invalid_argument("cylinder_word: empty word");
    if (!S.in_core(entries_.back()))
      throw std::invalid_argument("cylinder_word: last entry not extendable");
    for (std::size_t i = 0; i + 1 < entries_.size(); ++i)
      if (!S.step_allowed(entries_[i], entries_[i + 1]))
        throw std::invalid_argument("cylinder_word: step " + std::to_string(i) + " -> " +
                                    std::to_string(i + 1) + " not allowed");
  }

  [[nodiscard]] const std::vector<state>& entries() const { return entries_; }
  [[nodiscard]] std::size_t size() const { return entries_.size(); }

  [[nodiscard]] bool operator==(const cylinder_word& other) const {
    return entries_ == other.entries_;
  }
  [[nodiscard]] bool operator<(const cylinder_word& other) const {
    if (entries_.size() != other.entries_.size()) return entries_.size() < other.entries_.size();
    return entries_ < other.entries_;
  }

 private:
  std::vector<state> entries_;
};

/// All valid extendable words of length <= L, shortest first and
/// lexicographic within each length.
[[nodiscard]] inline std::vector<cylinder_word> enumerate_words(const vertex_shift& S, int L) {
  if (L < 1) throw std::invalid_argument("enumerate_words: length bound must be positive");
  std::vector<cylinder_word> out;
  std::vector<std::vector<state>> layer;
  for (state v : S.core()) layer.push_back({v});
  for (int len = 1; len <= L && !layer.empty(); ++len) {
    std::vector<std::vector<state>> next;
    for (auto& word : layer) {
      if (len < L)
        for (state u : S.continuations(word.back())) {
          auto extended = word;
          extended.push_back(u);
          next.push_back(std::move(extended));
        }
      out.emplace_back(S, std::move(word));
    }
    layer = std::move(next);
  }
  return out;
}

/// All periodic points of the shift map with period <= p. A period-m point
/// is a closed length-m walk of the step graph read as a pure cycle; the
/// canonical sequence form collapses repeated traversals of the same loop,
/// while genuinely different rotations stay distinct points.
[[nodiscard]] inline std::vector<eventually_periodic_seq> shift_periodic_points(
    const vertex_shift& S, int p) {
  if (p < 1) throw std::invalid_argument("shift_periodic_points: period bound must be positive");
  std::set<eventually_periodic_seq> found;
  std::vector<state> walk;
  for (state v : S.core())
    for (int m = 1; m <= p; ++m) {
      walk.assign(1, v);
      // The walk holds the m cycle states; the closing step back to v is
      // checked when one step remains.
      auto run = [&](auto&& self, int remaining) -> void {
        const auto& next = S.continuations(walk.back());
        if (remaining == 1) {
          if (std::find(next.begin(), next.end(), v) != next.end()) {
            std::vector<rational> cycle;
            for (state s : walk) cycle.emplace_back(s);
            found.insert(eventually_periodic_seq({}, std::move(cycle)));
          }
          return;
        }
        for (state u : next) {
          walk.push_back(u);
          self(self, remaining - 1);
          walk.pop_back();
        }
      };
      run(run, m);
    }
  return {found.begin(), found.end()};
}

/// Periodic points are dense iff every valid word is the prefix of a
/// periodic point, which reduces to every allowed step staying inside one
/// strongly connected component: a crossing step (a,b) is a two-letter word
/// no closed walk can contain, and conversely intra-component steps let any
/// word close into a cycle.
[[nodiscard]] inline verdict shift_periodic_dense(const vertex_shift& S) {
  if (S.empty()) return verdict::yes({{"kind", "empty-shift"}});
  const auto step = S.step_system();
  const auto dist = detail::positive_step_distances(step);
  for (state a = 0; a < step.size(); ++a)
    for (state b : step.fiber(a)) {
      const bool closable =
          b == a || dist[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] > 0;
      if (!closable)
        return verdict::no(
            {{"kind", "non-closable-word"},
             {"word", json::array({step.label(a), step.label(b)})},
             {"reason", "no walk returns from the second letter to the first"}});
    }
  return verdict::yes({{"kind", "every-step-closable"}});
}

/// Transitivity of the shift is word bridging: a path from the last letter
/// of one word to the first letter of the other. Bridges for all pairs
/// exist iff the step graph is strongly connected.
[[nodiscard]] inline verdict shift_transitive(const vertex_shift& S) {
  if (S.empty()) return verdict::yes({{"kind", "empty-shift"}});
  const auto step = S.step_system();
  const auto dist = detail::positive_step_distances(step);
  int bound = 0;
  for (state u = 0; u < step.size(); ++u)
    for (state v = 0; v < step.size(); ++v) {
      if (u == v) continue;
      const int d = dist[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)];
      if (d < 0)
        return verdict::no({{"kind", "unbridgeable-words"},
                            {"from_word", json::array({step.label(u)})},
                            {"to_word", json::array({step.label(v)})}});
      bound = std::max(bound, d);
    }
  return verdict::yes({{"kind", "core-strongly-connected"}, {"bridge_length_bound", bound}});
}

/// Sensitivity of the shift map with constant 1/2. A point whose
/// continuation choices are forced forever is a deterministic ray: every
/// point sharing a long enough prefix with it is the point itself, so no
/// separation happens at any scale. Without such a ray every point branches
/// at arbitrarily late coordinates, and two continuations differing at
/// coordinate m sit a full ground distance apart after m shifts.
[[nodiscard]] inline verdict shift_sensitive(const vertex_shift& S) {
  if (S.empty()) return verdict::yes({{"kind", "empty-shift"}});
  json branch_steps = json::object();
  for (state v : S.core()) {
    std::vector<state> walk{v};
    std::set<state> visited{v};
    state cur = v;
    bool branched = false;
    int steps = 0;
    while (true) {
      const auto& next = S.continuations(cur);
      if (next.size() >= 2) {
        branched = true;
        break;
      }
      cur = next[0];
      walk.push_back(cur);
      ++steps;
      if (!visited.insert(cur).second) break;
    }
    if (!branched) {
      const auto first = std::find(walk.begin(), walk.end(), walk.back());
      return verdict::no({{"kind", "deterministic-ray"},
                          {"word", detail::label_list(S.base(), walk)},
                          {"cycle_entry", static_cast<int>(first - walk.begin())}});
    }
    branch_steps[S.base().label(v)] = steps;
  }
  return verdict::yes({{"kind", "branching-at-every-coordinate"},
                       {"delta", "1/2"},
                       {"steps_to_branch", branch_steps}});
}

[[nodiscard]] inline verdict shift_devaney(const vertex_shift& S) {
  return detail::conjoin({{"transitive", shift_transitive(S)},
                          {"periodic_dense", shift_periodic_dense(S)},
                          {"sensitive", shift_sensitive(S)}});
}

namespace detail {

/// Endpoint sets of walks from every core position: layers[a][k] holds the
/// states reachable from a in exactly k steps.
[[nodiscard]] inline std::vector<std::vector<std::uint64_t>> walk_layers(
    const relation_system& step, int bound) {
  const auto masks = fiber_masks(step);
  std::vector<std::vector<std::uint64_t>> layers(static_cast<std::size_t>(step.size()));
  for (state a = 0; a < step.size(); ++a) {
    auto& row = layers[static_cast<std::size_t>(a)];
    row.push_back(std::uint64_t{1} << a);
    for (int k = 1; k <= bound; ++k) row.push_back(mask_image(masks, row.back()));
  }
  return layers;
}

/// A word sits in the cylinder of a periodic point of period <= budget in
/// exactly two ways: the word itself is q-periodic for some q <= len-1 (the
/// wrap edge is then one of the word's own edges), or the word closes with
/// an explicit return walk, giving period len-1+r.
[[nodiscard]] inline bool word_has_small_period_point(
    const std::vector<state>& w, int budget,
    const std::vector<std::vector<std::uint64_t>>& layers) {
  const int len = static_cast<int>(w.size());
  for (int q = 1; q <= std::min(budget, len - 1); ++q) {
    bool periodic = true;
    for (int i = 0; i + q < len; ++i)
      if (w[static_cast<std::size_t>(i)] != w[static_cast<std::size_t>(i + q)]) {
        periodic = false;
        break;
      }
    if (periodic) return true;
  }
  const auto& row = layers[static_cast<std::size_t>(w.back())];
  for (int r = 1; r + len - 1 <= budget; ++r)
    if ((row[static_cast<std::size_t>(r)] >> w.front()) & 1) return true;
  return false;
}

}  // namespace detail

/// Independent recomputation of the three shift verdicts by bounded walk
/// enumeration, with the graph-criterion results attached for comparison.
struct shift_oracle_bundle {
  verdict transitive;
  verdict dense;
  verdict sensitive;
  bool agrees_with_graph;
  json disagreements;

  [[nodiscard]] json to_json() const {
    return {{"transitive", transitive.to_json()},
            {"dense", dense.to_json()},
            {"sensitive", sensitive.to_json()},
            {"agrees_with_graph", agrees_with_graph},
            {"disagreements", disagreements}};
  }
};

[[nodiscard]] inline shift_oracle_bundle shift_oracle(const vertex_shift& S, int L, int p) {
  if (L < 2) throw std::invalid_argument("shift_oracle: L must be at least 2");
  if (p < 1) throw std::invalid_argument("shift_oracle: p must be positive");
  if (S.empty()) {
    const verdict empty_true = verdict::yes({{"kind", "empty-shift"}});
    return {empty_true, empty_true, empty_true, true, json::array()};
  }
  const auto step = S.step_system();
  const state m = step.size();
  const int budget = p * m;
  const auto layers = detail::walk_layers(step, std::max(L, budget));

  // Bridging between letters by explicit bounded walk search; shared mask
  // layering with the other components, no connectivity theory involved.
  verdict transitive = transitivity_oracle(step, L);

  // Density: every word of length <= L must have a periodic point of period
  // <= p*|core| in its cylinder. Two class-level tests settle most words at
  // once: a return walk b -> a closes every word from a to b within the
  // budget, and a == b closes the word over its own edges (period len-1).
  // Words in classes where both fail are checked one by one, since a word
  // can still be the prefix of a point with period far below its length.
  //
  // A word that fails the budgeted search refutes density outright only when
  // the budget provably covered every candidate period: internal periods run
  // up to len-1, and any closing walk shortens to at most m extra steps, so
  // a word with no internal period and no return walk at all has no periodic
  // point of any period. When instead a closure exists just beyond the
  // budget (or the internal scan was truncated), the bounded search cannot
  // distinguish the word from a genuine failure and the component abstains.
  verdict dense = [&] {
    if (m == 1)
      return verdict::yes({{"kind", "periodic-point-in-every-cylinder"},
                           {"max_length", L},
                           {"period_budget", budget}});
    // Shortest return-walk lengths, capped at m: longer walks repeat a state
    // and shorten, so a miss here means no return walk of any length.
    std::vector<std::vector<int>> shortest_return(
        static_cast<std::size_t>(m), std::vector<int>(static_cast<std::size_t>(m), -1));
    for (state b = 0; b < m; ++b)
      for (int r = 1; r <= m; ++r)
        for (state a = 0; a < m; ++a)
          if (shortest_return[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] < 0 &&
              ((layers[static_cast<std::size_t>(b)][static_cast<std::size_t>(r)] >> a) & 1))
            shortest_return[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] = r;
    std::optional<json> shortfall;
    for (state a = 0; a < m; ++a)
      for (int len = 1; len <= L; ++len) {
        const std::uint64_t ends =
            layers[static_cast<std::size_t>(a)][static_cast<std::size_t>(len - 1)];
        for (state b = 0; b < m; ++b) {
          if (((ends >> b) & 1) == 0) continue;
          if (a == b && len >= 2 && len - 1 <= budget) continue;
          const int r0 = shortest_return[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)];
          if (r0 > 0 && len - 1 + r0 <= budget) continue;
          std::vector<state> word{a};
          const auto search = [&](const auto& self, state cur,
                                  int remaining) -> std::optional<std::vector<state>> {
            if (remaining == 0)
              return detail::word_has_small_period_point(word, budget, layers)
                         ? std::nullopt
                         : std::optional(word);
            for (state nxt : step.fiber(cur)) {
              if (((layers[static_cast<std::size_t>(nxt)]
                          [static_cast<std::size_t>(remaining - 1)] >>
                    b) &
                   1) == 0)
                continue;
              word.push_back(nxt);
              if (auto bad = self(self, nxt, remaining - 1)) return bad;
              word.pop_back();
            }
            return std::nullopt;
          };
          if (auto bad = search(search, a, len - 1)) {
            if (r0 < 0 && len - 1 <= budget)
              return verdict::no({{"kind", "cylinder-without-periodic-point"},
                                  {"word", detail::label_list(step, *bad)},
                                  {"period_budget", budget}});
            if (!shortfall)
              shortfall = json{{"kind", "period-budget-exhausted"},
                               {"word", detail::label_list(step, *bad)},
                               {"period_budget", budget},
                               {"deciding_budget", r0 > 0 ? len - 1 + r0 : len - 1}};
          }
        }
      }
    if (shortfall) return verdict::undecided(std::move(*shortfall));
    return verdict::yes({{"kind", "periodic-point-in-every-cylinder"},
                         {"max_length", L},
                         {"period_budget", budget}});
  }();

  // Sensitivity: from every letter, enumerate continuation words of length
  // L, stopping at two, and certify the separation of the pair by an exact
  // rho lower bound after shifting to the first disagreement.
  verdict sensitive = [&] {
    const auto metric = ground_metric::discrete_on(S.base().size());
    for (state v = 0; v < m; ++v) {
      std::vector<state> word{v};
      std::vector<std::size_t> choice;
      std::vector<state> first_word;
      int words_found = 0;
      while (words_found < 2) {
        if (static_cast<int>(choice.size()) == L) {
          ++words_found;
          if (words_found == 1)
            first_word = word;
          else
            break;
          bool advanced = false;
          while (!choice.empty()) {
            word.pop_back();
            const auto& options = step.fiber(word.back());
            if (choice.back() + 1 < options.size()) {
              ++choice.back();
              word.push_back(options[choice.back()]);
              advanced = true;
              break;
            }
            choice.pop_back();
          }
          if (!advanced) break;
        } else {
          choice.push_back(0);
          word.push_back(step.fiber(word.back())[0]);
        }
      }
      if (words_found >= 2) {
        std::size_t split = 0;
        while (first_word[split] == word[split]) ++split;
        std::vector<rational> x, y;
        for (std::size_t i = split; i < first_word.size(); ++i) {
          x.emplace_back(S.core()[static_cast<std::size_t>(first_word[i])]);
          y.emplace_back(S.core()[static_cast<std::size_t>(word[i])]);
        }
        const auto bounds = rho_bounds(x, y, metric);
        if (bounds.first > rational(1, 4)) continue;
        return verdict::undecided({{"kind", "separation-not-established"},
                                   {"word_start", step.label(v)},
                                   {"rho_lower", bounds.first.str()}});
      }
      std::set<state> seen;
      int repeat_at = -1;
      for (std::size_t i = 0; i < first_word.size(); ++i) {
        if (!seen.insert(first_word[i]).second) {
          repeat_at = static_cast<int>(i);
          break;
        }
      }
      if (repeat_at >= 0) {
        first_word.resize(static_cast<std::size_t>(repeat_at) + 1);
        return verdict::no({{"kind", "single-continuation-word"},
                            {"word", detail::label_list(step, first_word)}});
      }
      return verdict::undecided(
          {{"kind", "horizon-exhausted"}, {"word_start", step.label(v)}, {"horizon", L}});
    }
    return verdict::yes({{"kind", "separating-continuations-everywhere"},
                         {"rho_lower_bound", "1"},
                         {"threshold", "1/4"}});
  }();

  const verdict graph_transitive = shift_transitive(S);
  const verdict graph_dense = shift_periodic_dense(S);
  const verdict graph_sensitive = shift_sensitive(S);
  json disagreements = json::array();
  // An abstaining oracle component contradicts nothing; only a decided
  // verdict on the other side of the graph criterion counts against it.
  const auto compare = [&](const char* name, const verdict& oracle, const verdict& graph) {
    if (!oracle.is_undecided() && oracle.value() != graph.value())
      disagreements.push_back({{"property", name},
                               {"oracle", to_string(oracle.value())},
                               {"graph", to_string(graph.value())}});
  };
  compare("transitive", transitive, graph_transitive);
  compare("dense", dense, graph_dense);
  compare("sensitive", sensitive, graph_sensitive);
  const bool agrees = disagreements.empty();
  return {std::move(transitive), std::move(dense), std::move(sensitive), agrees,
          std::move(disagreements)};
}

/// Word-language comparison behind the periodic-point identity for limits:
/// words extendable to periodic points (period capped at p*|core|) against
/// words of the limit of the restriction to periodic states. The first
/// language is always contained in the second, so any mismatch shows up on
/// the restriction side.
[[nodiscard]] inline verdict lemma31_check(const relation_system& F, int L, int p) {
  if (L < 1 || p < 1) throw std::invalid_argument("lemma31_check: bounds must be positive");
  const vertex_shift S(F);
  if (S.empty()) return verdict::yes({{"kind", "empty-shift"}});
  const auto step = S.step_system();
  const int budget = p * step.size();
  const auto layers = detail::walk_layers(step, budget);

  std::set<std::vector<std::string>> closure_language;
  for (const auto& w : enumerate_words(S, L)) {
    const auto& e = w.entries();
    std::vector<state> positions;
    positions.reserve(e.size());
    for (state s : e) positions.push_back(S.core_position(s));
    if (detail::word_has_small_period_point(positions, budget, layers)) {
      std::vector<std::string> labels;
      for (state s : e) labels.push_back(F.label(s));
      closure_language.insert(std::move(labels));
    }
  }

  // The limit of F restricted to its periodic states, fibers intersected
  // with the periodic set. On a nonempty periodic set the restricted fibers
  // are nonempty: a cycle successor is always available.
  const auto periodic = periodic_points(F);
  std::set<std::vector<std::string>> restricted_language;
  if (!periodic.empty()) {
    std::map<state, state> index;
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < periodic.size(); ++i) {
      index[periodic[i]] = static_cast<state>(i);
      labels.push_back(F.label(periodic[i]));
    }
    std::vector<std::vector<state>> fibers(periodic.size());
    for (std::size_t i = 0; i < periodic.size(); ++i)
      for (state t : F.fiber(periodic[i]))
        if (index.contains(t)) fibers[i].push_back(index.at(t));
    const relation_system restricted(labels, std::move(fibers));
    const vertex_shift SP(restricted);
    for (const auto& w : enumerate_words(SP, L)) {
      std::vector<std::string> word_labels;
      for (state s : w.entries()) word_labels.push_back(restricted.label(s));
      restricted_language.insert(std::move(word_labels));
    }
  }

  if (closure_language == restricted_language)
    return verdict::yes(
        {{"kind", "languages-coincide"}, {"max_length", L}, {"period_cap", budget}});
  std::vector<std::vector<std::string>> diff;
  std::set_symmetric_difference(closure_language.begin(), closure_language.end(),
                                restricted_language.begin(), restricted_language.end(),
                                std::back_inserter(diff));
  std::sort(diff.begin(), diff.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  const auto& witness = diff.front();
  const bool in_restricted = restricted_language.contains(witness);
  return verdict::no({{"kind", "language-mismatch"},
                      {"word", witness},
                      {"present_in", in_restricted ? "restricted-limit" : "periodic-closure"},
                      {"period_cap", budget}});
}

}  // namespace setdyn
