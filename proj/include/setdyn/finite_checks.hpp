#pragma once

#include <setdyn/rational.hpp>
#include <setdyn/relation.hpp>
#include <setdyn/verdict.hpp>

#include <algorithm>
#include <bit>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace setdyn {

namespace detail {

[[nodiscard]] inline json label_list(const relation_system& F, const std::vector<state>& states) {
  json out = json::array();
  for (state s : states) out.push_back(F.label(s));
  return out;
}

[[nodiscard]] inline json label_list(const relation_system& F, const std::set<state>& states) {
  return label_list(F, std::vector<state>(states.begin(), states.end()));
}

[[nodiscard]] inline std::vector<std::uint64_t> fiber_masks(const relation_system& F) {
  if (F.size() > 63) throw std::invalid_argument("fiber_masks: more than 63 states");
  std::vector<std::uint64_t> masks(static_cast<std::size_t>(F.size()), 0);
  for (state s = 0; s < F.size(); ++s)
    for (state t : F.fiber(s)) masks[static_cast<std::size_t>(s)] |= std::uint64_t{1} << t;
  return masks;
}

[[nodiscard]] inline std::uint64_t mask_image(const std::vector<std::uint64_t>& masks,
                                              std::uint64_t set) {
  std::uint64_t out = 0;
  while (set != 0) {
    const int s = std::countr_zero(set);
    set &= set - 1;
    out |= masks[static_cast<std::size_t>(s)];
  }
  return out;
}

/// Shortest path lengths using one or more steps, i.e. dist[u][v] = length of
/// the shortest walk u -> v with at least one edge, or -1.
[[nodiscard]] inline std::vector<std::vector<int>> positive_step_distances(
    const relation_system& F) {
  const state n = F.size();
  std::vector<std::vector<int>> dist(static_cast<std::size_t>(n),
                                     std::vector<int>(static_cast<std::size_t>(n), -1));
  for (state u = 0; u < n; ++u) {
    auto& row = dist[static_cast<std::size_t>(u)];
    std::deque<state> queue;
    for (state v : F.fiber(u))
      if (row[static_cast<std::size_t>(v)] < 0) {
        row[static_cast<std::size_t>(v)] = 1;
        queue.push_back(v);
      }
    while (!queue.empty()) {
      const state w = queue.front();
      queue.pop_front();
      for (state v : F.fiber(w))
        if (row[static_cast<std::size_t>(v)] < 0) {
          row[static_cast<std::size_t>(v)] = row[static_cast<std::size_t>(w)] + 1;
          queue.push_back(v);
        }
    }
  }
  return dist;
}

}  // namespace detail

/// Every state has a predecessor, which is exactly when the inverse relation
/// exists.
[[nodiscard]] inline verdict is_surjective(const relation_system& F) {
  std::vector<bool> covered(static_cast<std::size_t>(F.size()), false);
  for (state u = 0; u < F.size(); ++u)
    for (state v : F.fiber(u)) covered[static_cast<std::size_t>(v)] = true;
  for (state v = 0; v < F.size(); ++v)
    if (!covered[static_cast<std::size_t>(v)])
      return verdict::no({{"kind", "uncovered-state"}, {"state", F.label(v)}});
  return verdict::yes({{"kind", "every-state-covered"}});
}

/// States lying on a directed cycle, i.e. admitting a walk of positive length
/// back to themselves.
[[nodiscard]] inline std::vector<state> periodic_points(const relation_system& F) {
  const auto dist = detail::positive_step_distances(F);
  std::vector<state> out;
  for (state s = 0; s < F.size(); ++s)
    if (dist[static_cast<std::size_t>(s)][static_cast<std::size_t>(s)] > 0) out.push_back(s);
  return out;
}

/// A shortest walk s -> ... -> s of positive length, or nullopt if s is not
/// on any cycle.
[[nodiscard]] inline std::optional<std::vector<state>> cycle_through(const relation_system& F,
                                                                     state s) {
  const state n = F.size();
  std::vector<state> parent(static_cast<std::size_t>(n), -1);
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  std::deque<state> queue;
  for (state v : F.fiber(s)) {
    if (v == s) return std::vector<state>{s, s};
    if (!seen[static_cast<std::size_t>(v)]) {
      seen[static_cast<std::size_t>(v)] = true;
      parent[static_cast<std::size_t>(v)] = s;
      queue.push_back(v);
    }
  }
  while (!queue.empty()) {
    const state w = queue.front();
    queue.pop_front();
    for (state v : F.fiber(w)) {
      if (v == s) {
        std::vector<state> back{w};
        for (state cur = w; parent[static_cast<std::size_t>(cur)] != s;
             cur = parent[static_cast<std::size_t>(cur)])
          back.push_back(parent[static_cast<std::size_t>(cur)]);
        std::vector<state> walk{s};
        walk.insert(walk.end(), back.rbegin(), back.rend());
        walk.push_back(s);
        return walk;
      }
      if (!seen[static_cast<std::size_t>(v)]) {
        seen[static_cast<std::size_t>(v)] = true;
        parent[static_cast<std::size_t>(v)] = w;
        queue.push_back(v);
      }
    }
  }
  return std::nullopt;
}

/// On a finite discrete space the periodic points are dense iff they are all
/// of it.
[[nodiscard]] inline verdict is_periodic_dense(const relation_system& F) {
  const auto periodic = periodic_points(F);
  if (static_cast<state>(periodic.size()) == F.size()) {
    json cycles = json::array();
    for (state s : periodic) cycles.push_back(detail::label_list(F, *cycle_through(F, s)));
    return verdict::yes({{"kind", "cycle-through-every-state"}, {"cycles", cycles}});
  }
  std::set<state> on_cycle(periodic.begin(), periodic.end());
  for (state s = 0; s < F.size(); ++s)
    if (!on_cycle.contains(s))
      return verdict::no({{"kind", "state-off-every-cycle"}, {"state", F.label(s)}});
  throw std::logic_error("is_periodic_dense: unreachable");
}

/// Every ordered pair of states is joined by a walk of positive length. On a
/// discrete space this is the whole content of topological transitivity: the
/// open sets to test are the singletons.
[[nodiscard]] inline verdict is_transitive(const relation_system& F) {
  const auto dist = detail::positive_step_distances(F);
  for (state u = 0; u < F.size(); ++u)
    for (state v = 0; v < F.size(); ++v)
      if (dist[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] < 0)
        return verdict::no(
            {{"kind", "unreachable-pair"}, {"from", F.label(u)}, {"to", F.label(v)}});
  json table = json::array();
  for (state u = 0; u < F.size(); ++u)
    table.push_back(dist[static_cast<std::size_t>(u)]);
  return verdict::yes({{"kind", "all-pairs-joined"}, {"walk_lengths", table}});
}

/// Sensitivity with separation constant 1/2. Points closer than 1 coincide,
/// so what is needed is two orbits from every state that disagree somewhere,
/// and that happens exactly when the forced walk out of each state (through
/// one-element fibers) hits a state with two or more successors. A state
/// whose forced walk closes a cycle first has a single orbit, which kills
/// sensitivity for every separation constant at once.
[[nodiscard]] inline verdict is_sensitive(const relation_system& F) {
  json branch_steps = json::object();
  for (state s = 0; s < F.size(); ++s) {
    std::vector<state> walk{s};
    std::vector<bool> visited(static_cast<std::size_t>(F.size()), false);
    visited[static_cast<std::size_t>(s)] = true;
    state cur = s;
    int steps = 0;
    bool branched = false;
    while (true) {
      if (F.out_degree(cur) >= 2) {
        branched = true;
        break;
      }
      const state next = F.fiber(cur)[0];
      walk.push_back(next);
      ++steps;
      if (visited[static_cast<std::size_t>(next)]) break;
      visited[static_cast<std::size_t>(next)] = true;
      cur = next;
    }
    if (!branched) {
      const auto first = std::find(walk.begin(), walk.end(), walk.back());
      return verdict::no({{"kind", "deterministic-ray"},
                          {"state", F.label(s)},
                          {"ray", detail::label_list(F, walk)},
                          {"cycle_entry", static_cast<int>(first - walk.begin())}});
    }
    branch_steps[F.label(s)] = steps;
  }
  return verdict::yes({{"kind", "branch-on-every-forced-walk"},
                       {"delta", "1/2"},
                       {"steps_to_branch", branch_steps}});
}

/// Strong sensitivity asks that near every state some point eventually has
/// its whole image set separated from the whole image set of the state. On a
/// discrete space any ball of radius below 1 is a singleton, which forces
/// y = x, and then the two image sets coincide at every step. Their minimal
/// mutual distance is 0, under every positive separation constant, so the
/// property fails on every finite system.
[[nodiscard]] inline verdict is_strongly_sensitive(const relation_system& F) {
  return verdict::no(
      {{"kind", "ball-collapse"},
       {"state", F.label(0)},
       {"epsilon", "1/2"},
       {"reason",
        "the 1/2-ball around the state is the singleton {state}, so the only available y is "
        "the state itself and the separation of the two identical image sets is 0"}});
}

[[nodiscard]] inline verdict has_full_fiber(const relation_system& F) {
  for (state s = 0; s < F.size(); ++s)
    if (F.out_degree(s) == F.size())
      return verdict::yes({{"kind", "full-fiber"}, {"state", F.label(s)}});
  return verdict::no({{"kind", "no-full-fiber"}});
}

/// Every orbit is globally periodic iff the graph is a disjoint union of
/// cycles. A branching state lets one mix two return loops into an aperiodic
/// itinerary, and a state off every cycle can never recur at time 0.
[[nodiscard]] inline verdict all_orbits_periodic(const relation_system& F) {
  for (state s = 0; s < F.size(); ++s)
    if (F.out_degree(s) >= 2)
      return verdict::no({{"kind", "branching-state"},
                          {"state", F.label(s)},
                          {"successors", detail::label_list(F, F.fiber(s))}});
  const auto periodic = periodic_points(F);
  std::set<state> on_cycle(periodic.begin(), periodic.end());
  for (state s = 0; s < F.size(); ++s)
    if (!on_cycle.contains(s)) {
      std::vector<state> walk{s};
      for (int i = 0; i < F.size(); ++i) walk.push_back(F.fiber(walk.back())[0]);
      return verdict::no({{"kind", "transient-state"},
                          {"state", F.label(s)},
                          {"walk", detail::label_list(F, walk)}});
    }
  json cycles = json::array();
  std::vector<bool> emitted(static_cast<std::size_t>(F.size()), false);
  for (state s = 0; s < F.size(); ++s) {
    if (emitted[static_cast<std::size_t>(s)]) continue;
    const auto cycle = *cycle_through(F, s);
    for (state t : cycle) emitted[static_cast<std::size_t>(t)] = true;
    cycles.push_back(detail::label_list(F, cycle));
  }
  return verdict::yes({{"kind", "disjoint-cycles"}, {"cycles", cycles}});
}

namespace detail {

[[nodiscard]] inline verdict conjoin(std::vector<std::pair<std::string, verdict>> parts) {
  json cert = json::object();
  truth combined = truth::yes;
  for (const auto& [name, part] : parts) {
    cert[name] = part.to_json();
    if (part.is_false())
      combined = truth::no;
    else if (part.is_undecided() && combined == truth::yes)
      combined = truth::undecided;
  }
  switch (combined) {
    case truth::yes:
      return verdict::yes(std::move(cert));
    case truth::no:
      return verdict::no(std::move(cert));
    default:
      return verdict::undecided(std::move(cert));
  }
}

}  // namespace detail

[[nodiscard]] inline verdict is_devaney(const relation_system& F) {
  return detail::conjoin({{"transitive", is_transitive(F)},
                          {"periodic_dense", is_periodic_dense(F)},
                          {"sensitive", is_sensitive(F)}});
}

[[nodiscard]] inline verdict is_strong_devaney(const relation_system& F) {
  return detail::conjoin({{"transitive", is_transitive(F)},
                          {"periodic_dense", is_periodic_dense(F)},
                          {"strongly_sensitive", is_strongly_sensitive(F)}});
}

// ---------------------------------------------------------------------------
// Brute-force counterparts. These decide the same properties by enumerating
// orbit data directly, with an explicit horizon, and report UNDECIDED when
// the horizon is too small instead of reasoning structurally. They exist to
// cross-check the graph criteria above.
// ---------------------------------------------------------------------------

/// Follows the set sequence F^k({u}) and accumulates everything ever hit.
/// The mask sequence must repeat within 2^|X| steps, and once it does the
/// accumulated set is final, so any horizon at least that large is exact.
[[nodiscard]] inline verdict transitivity_oracle(const relation_system& F, int horizon) {
  if (horizon < 1) throw std::invalid_argument("transitivity_oracle: horizon must be positive");
  const auto masks = detail::fiber_masks(F);
  const std::uint64_t all = (F.size() == 64) ? ~std::uint64_t{0}
                                             : ((std::uint64_t{1} << F.size()) - 1);
  int steps_used = 0;
  for (state u = 0; u < F.size(); ++u) {
    std::uint64_t cur = std::uint64_t{1} << u;
    std::uint64_t hit = 0;
    std::set<std::uint64_t> seen;
    bool closed = false;
    for (int k = 1; k <= horizon; ++k) {
      cur = detail::mask_image(masks, cur);
      hit |= cur;
      steps_used = std::max(steps_used, k);
      if (hit == all || !seen.insert(cur).second) {
        closed = true;
        break;
      }
    }
    if (hit == all) continue;
    if (closed) {
      state missing = 0;
      while ((hit >> missing) & 1) ++missing;
      return verdict::no(
          {{"kind", "unreachable-pair"}, {"from", F.label(u)}, {"to", F.label(missing)}});
    }
    return verdict::undecided({{"kind", "horizon-exhausted"},
                               {"from", F.label(u)},
                               {"horizon", horizon}});
  }
  return verdict::yes({{"kind", "all-pairs-reached"}, {"steps_used", steps_used}});
}

/// Decides which states recur by following the same set sequence and asking
/// whether the start ever reappears. nullopt when the horizon ran out before
/// every state was settled.
[[nodiscard]] inline std::optional<std::vector<state>> periodic_points_oracle(
    const relation_system& F, int horizon) {
  if (horizon < 1) throw std::invalid_argument("periodic_points_oracle: horizon must be positive");
  const auto masks = detail::fiber_masks(F);
  std::vector<state> out;
  for (state s = 0; s < F.size(); ++s) {
    std::uint64_t cur = std::uint64_t{1} << s;
    std::set<std::uint64_t> seen;
    bool recurs = false;
    bool settled = false;
    for (int k = 1; k <= horizon; ++k) {
      cur = detail::mask_image(masks, cur);
      if ((cur >> s) & 1) {
        recurs = true;
        settled = true;
        break;
      }
      if (!seen.insert(cur).second) {
        settled = true;
        break;
      }
    }
    if (!settled) return std::nullopt;
    if (recurs) out.push_back(s);
  }
  return out;
}

/// Enumerates orbit words of a fixed length from each state in lexicographic
/// order, stopping at two. A second word is a branch that separates two
/// orbits by the full discrete distance; a single word that revisits a state
/// is provably alone forever.
[[nodiscard]] inline verdict sensitivity_oracle(const relation_system& F, int horizon) {
  if (horizon < 1) throw std::invalid_argument("sensitivity_oracle: horizon must be positive");
  for (state s = 0; s < F.size(); ++s) {
    // word[i] is the state at step i; choice[i] indexes the fiber entry taken
    // from word[i] to word[i + 1]. A word is complete at horizon steps.
    std::vector<state> word{s};
    std::vector<std::size_t> choice;
    std::vector<state> first_word;
    int words_found = 0;
    while (words_found < 2) {
      if (static_cast<int>(choice.size()) == horizon) {
        ++words_found;
        if (words_found == 1) first_word = word;
        bool advanced = false;
        while (!choice.empty()) {
          word.pop_back();
          const auto& options = F.fiber(word.back());
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
        word.push_back(F.fiber(word.back())[0]);
      }
    }
    if (words_found >= 2) continue;
    // Exactly one word: every state along it except possibly the last has a
    // one-element fiber. A repeat therefore closes a forced loop and the
    // orbit from s is unique for all time.
    std::vector<bool> seen_state(static_cast<std::size_t>(F.size()), false);
    int repeat_at = -1;
    for (std::size_t i = 0; i < first_word.size(); ++i) {
      if (seen_state[static_cast<std::size_t>(first_word[i])]) {
        repeat_at = static_cast<int>(i);
        break;
      }
      seen_state[static_cast<std::size_t>(first_word[i])] = true;
    }
    if (repeat_at >= 0) {
      first_word.resize(static_cast<std::size_t>(repeat_at) + 1);
      return verdict::no({{"kind", "single-orbit-state"},
                          {"state", F.label(s)},
                          {"word", detail::label_list(F, first_word)}});
    }
    return verdict::undecided(
        {{"kind", "horizon-exhausted"}, {"state", F.label(s)}, {"horizon", horizon}});
  }
  return verdict::yes(
      {{"kind", "two-orbit-words-everywhere"}, {"delta", "1/2"}, {"horizon", horizon}});
}

/// Tracks the pair of image sets of y and x step by step and compares their
/// minimal mutual distance with delta. Within any ball of radius below 1 the
/// only candidate y is x itself, so the pair starts equal; the verdict is
/// settled once the pair sequence repeats.
[[nodiscard]] inline verdict strong_sensitivity_oracle(const relation_system& F,
                                                       const rational& delta, int horizon) {
  if (delta <= rational(0))
    throw std::invalid_argument("strong_sensitivity_oracle: delta must be positive");
  if (horizon < 1)
    throw std::invalid_argument("strong_sensitivity_oracle: horizon must be positive");
  const auto masks = detail::fiber_masks(F);
  state unresolved = -1;
  for (state x = 0; x < F.size(); ++x) {
    std::uint64_t img_y = std::uint64_t{1} << x;
    std::uint64_t img_x = img_y;
    std::set<std::pair<std::uint64_t, std::uint64_t>> seen;
    bool escapes = false;
    bool settled = false;
    for (int k = 1; k <= horizon; ++k) {
      img_y = detail::mask_image(masks, img_y);
      img_x = detail::mask_image(masks, img_x);
      const rational min_distance((img_y & img_x) != 0 ? 0 : 1);
      if (min_distance > delta) {
        escapes = true;
        settled = true;
        break;
      }
      if (!seen.insert({img_y, img_x}).second) {
        settled = true;
        break;
      }
    }
    if (escapes) continue;
    if (settled)
      return verdict::no(
          {{"kind", "no-separation-at-state"},
           {"state", F.label(x)},
           {"epsilon", "1/2"},
           {"delta", delta.str()},
           {"reason",
            "the only point within 1/2 of the state is the state itself, and the two image "
            "sets stay equal forever"}});
    if (unresolved < 0) unresolved = x;
  }
  if (unresolved >= 0)
    return verdict::undecided(
        {{"kind", "horizon-exhausted"}, {"state", F.label(unresolved)}, {"horizon", horizon}});
  return verdict::yes({{"kind", "separation-everywhere"}, {"delta", delta.str()}});
}

}  // namespace setdyn
