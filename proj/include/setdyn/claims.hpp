#pragma once

#include <setdyn/builtin.hpp>
#include <setdyn/finite_checks.hpp>
#include <setdyn/io.hpp>
#include <setdyn/metric.hpp>
#include <setdyn/pl_checks.hpp>
#include <setdyn/relation.hpp>
#include <setdyn/shift.hpp>
#include <setdyn/truncated.hpp>
#include <setdyn/verdict.hpp>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace setdyn {

/// All relation systems on exactly n labeled states, in odometer order over
/// the per-state fiber masks: state 0's fiber varies slowest, and each fiber
/// runs through the nonempty subsets 1..2^n-1 in binary order, with bit t of
/// a mask putting state t into the fiber. Sizes: 1, 9, 343, 50625.
[[nodiscard]] inline std::vector<relation_system> exhaustive_systems(int n) {
  if (n < 1 || n > 4)
    throw std::invalid_argument("exhaustive_systems: n must be between 1 and 4");
  const std::uint64_t top = (std::uint64_t{1} << n) - 1;
  std::vector<std::string> labels;
  for (int s = 0; s < n; ++s) labels.push_back(std::to_string(s));
  std::vector<std::uint64_t> masks(static_cast<std::size_t>(n), 1);
  std::vector<relation_system> out;
  for (;;) {
    std::vector<std::vector<state>> fibers(static_cast<std::size_t>(n));
    for (int s = 0; s < n; ++s)
      for (int t = 0; t < n; ++t)
        if (masks[static_cast<std::size_t>(s)] >> t & 1)
          fibers[static_cast<std::size_t>(s)].push_back(t);
    out.emplace_back(labels, std::move(fibers));
    int pos = n - 1;
    while (pos >= 0 && masks[static_cast<std::size_t>(pos)] == top) {
      masks[static_cast<std::size_t>(pos)] = 1;
      --pos;
    }
    if (pos < 0) break;
    ++masks[static_cast<std::size_t>(pos)];
  }
  return out;
}

/// Seeded stream of n-state systems: every fiber is an independent draw of a
/// nonempty subset, taken as 1 + g() mod (2^n - 1) from a mersenne-twister-64
/// stream, which is uniform over nonempty subsets up to a modulo bias below
/// 2^-56 for n <= 8. The same (n, count, seed) triple reproduces the same
/// list on every platform; distribution-class helpers are avoided on purpose
/// because their streams differ between standard libraries.
[[nodiscard]] inline std::vector<relation_system> random_systems(int n, int count,
                                                                 std::uint64_t seed) {
  if (n < 1 || n > 8) throw std::invalid_argument("random_systems: n must be between 1 and 8");
  if (count < 0) throw std::invalid_argument("random_systems: count must be nonnegative");
  const std::uint64_t span = (std::uint64_t{1} << n) - 1;
  std::mt19937_64 gen(seed);
  std::vector<std::string> labels;
  for (int s = 0; s < n; ++s) labels.push_back(std::to_string(s));
  std::vector<relation_system> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    std::vector<std::vector<state>> fibers(static_cast<std::size_t>(n));
    for (int s = 0; s < n; ++s) {
      const std::uint64_t mask = 1 + gen() % span;
      for (int t = 0; t < n; ++t)
        if (mask >> t & 1) fibers[static_cast<std::size_t>(s)].push_back(t);
    }
    out.emplace_back(labels, std::move(fibers));
  }
  return out;
}

/// Which instances a quantified claim ranges over.
struct family_descriptor {
  enum class kind_t { built_in, exhaustive, random };

  kind_t kind = kind_t::built_in;
  int n = 0;
  int count = 0;
  std::uint64_t seed = 0;

  [[nodiscard]] static family_descriptor built_in() { return {}; }
  [[nodiscard]] static family_descriptor exhaustive(int n) {
    family_descriptor f;
    f.kind = kind_t::exhaustive;
    f.n = n;
    return f;
  }
  [[nodiscard]] static family_descriptor random(int n, int count, std::uint64_t seed) {
    family_descriptor f;
    f.kind = kind_t::random;
    f.n = n;
    f.count = count;
    f.seed = seed;
    return f;
  }

  [[nodiscard]] std::string str() const {
    switch (kind) {
      case kind_t::built_in:
        return "built-in";
      case kind_t::exhaustive:
        return "exhaustive(" + std::to_string(n) + ")";
      default:
        return "random(" + std::to_string(n) + ", " + std::to_string(count) + ", seed " +
               std::to_string(seed) + ")";
    }
  }

  [[nodiscard]] std::vector<relation_system> instances() const {
    switch (kind) {
      case kind_t::exhaustive:
        return exhaustive_systems(n);
      case kind_t::random:
        return random_systems(n, count, seed);
      default:
        throw std::logic_error("family_descriptor: built-in families carry no instance list");
    }
  }
};

enum class claim_status {
  holds_on_family,
  counterexample,
  agrees_with_paper,
  disagrees_with_paper,
  undecided,
};

[[nodiscard]] inline const char* to_string(claim_status s) {
  switch (s) {
    case claim_status::holds_on_family:
      return "HOLDS-ON-FAMILY";
    case claim_status::counterexample:
      return "COUNTEREXAMPLE";
    case claim_status::agrees_with_paper:
      return "AGREES-WITH-PAPER";
    case claim_status::disagrees_with_paper:
      return "DISAGREES-WITH-PAPER";
    default:
      return "UNDECIDED";
  }
}

/// Outcome of adjudicating one claim. Serialization is byte-stable: the keys
/// keep this order, notes are fixed strings, and witnesses replay through
/// the same checkers that produced them.
struct claim_report {
  std::string id;
  std::size_t instances_evaluated = 0;
  claim_status status = claim_status::undecided;
  json witnesses = json::array();
  std::vector<std::string> notes;

  [[nodiscard]] json to_json() const {
    json out;
    out["id"] = id;
    out["instances_evaluated"] = instances_evaluated;
    out["status"] = to_string(status);
    out["witnesses"] = witnesses;
    out["notes"] = notes;
    return out;
  }
};

/// One checkable statement, stored as data. Quantified claims name their
/// premise and conclusion checkers and a family to range over; example
/// claims recompute the verdict a fixed source sentence asserts about one
/// built-in system and carry that asserted verdict for comparison.
struct claim {
  std::string id;
  std::string statement;
  std::string quote;
  std::vector<std::string> premises;
  std::string conclusion;
  family_descriptor family = family_descriptor::built_in();
  truth asserted = truth::undecided;
  std::function<verdict()> compute;

  [[nodiscard]] bool is_example() const { return static_cast<bool>(compute); }
};

namespace claims_detail {

[[nodiscard]] inline verdict negate(const verdict& v) {
  json cert = {{"kind", "negation"}, {"inner", v.certificate()}};
  if (v.is_true()) return verdict::no(std::move(cert));
  if (v.is_false()) return verdict::yes(std::move(cert));
  return verdict::undecided(std::move(cert));
}

/// Property checkers addressed by name, so that claims stay pure data and
/// any reported witness can be replayed by re-running the named checkers.
[[nodiscard]] inline verdict run_checker(const std::string& name, const relation_system& F) {
  if (name == "surjective") return is_surjective(F);
  if (name == "transitive") return is_transitive(F);
  if (name == "periodic-dense") return is_periodic_dense(F);
  if (name == "sensitive") return is_sensitive(F);
  if (name == "strongly-sensitive") return is_strongly_sensitive(F);
  if (name == "not-strongly-sensitive") return negate(is_strongly_sensitive(F));
  if (name == "full-fiber") return has_full_fiber(F);
  if (name == "all-orbits-periodic") return all_orbits_periodic(F);
  if (name == "devaney") return is_devaney(F);
  if (name == "limit-transitive") return shift_transitive(build_limit(F));
  if (name == "limit-periodic-dense") return shift_periodic_dense(build_limit(F));
  if (name == "limit-sensitive") return shift_sensitive(build_limit(F));
  if (name == "limit-devaney") return shift_devaney(build_limit(F));
  if (name == "invertible") {
    if (const auto inv = F.try_invert())
      return verdict::yes({{"kind", "inverse-exists"}, {"system", system_to_json(*inv)}});
    std::vector<std::string> uncovered;
    for (state t = 0; t < F.size(); ++t) {
      bool covered = false;
      for (state s = 0; s < F.size() && !covered; ++s) covered = F.has_edge(s, t);
      if (!covered) uncovered.push_back(F.label(t));
    }
    return verdict::no({{"kind", "uncovered-states"}, {"states", uncovered}});
  }
  if (name == "periodic-density-inverse-invariant") {
    const auto inv = F.try_invert();
    if (!inv) return verdict::undecided({{"kind", "inverse-undefined"}});
    const verdict fwd = is_periodic_dense(F);
    const verdict bwd = is_periodic_dense(*inv);
    json cert = {{"kind", "density-comparison"},
                 {"forward", fwd.to_json()},
                 {"inverse", bwd.to_json()}};
    return fwd.value() == bwd.value() ? verdict::yes(std::move(cert))
                                      : verdict::no(std::move(cert));
  }
  // Period multipliers match the word depth, which keeps every bounded
  // search past its per-word decision threshold: no component abstains.
  if (name == "restriction-closure-language-match")
    return lemma31_check(F, F.size() + 2, F.size() + 2);
  if (name == "shift-oracle-agreement") {
    const vertex_shift S = build_limit(F);
    const int depth = 2 * (1 << F.size());
    const shift_oracle_bundle o = shift_oracle(S, depth, depth);
    json cert = {{"kind", "oracle-comparison"}, {"depth", depth}, {"bundle", o.to_json()}};
    if (o.transitive.is_undecided() || o.dense.is_undecided() || o.sensitive.is_undecided())
      return verdict::undecided(std::move(cert));
    return o.agrees_with_graph ? verdict::yes(std::move(cert)) : verdict::no(std::move(cert));
  }
  throw std::invalid_argument("run_checker: unknown checker \"" + name + "\"");
}

}  // namespace claims_detail

/// Whether this instance satisfies every premise and breaks the conclusion.
[[nodiscard]] inline bool refutes(const claim& c, const relation_system& F) {
  if (c.is_example())
    throw std::invalid_argument("refutes: claim " + c.id + " is not quantified over a family");
  for (const auto& p : c.premises)
    if (!claims_detail::run_checker(p, F).is_true()) return false;
  return claims_detail::run_checker(c.conclusion, F).is_false();
}

/// Shrink a refuting instance by deletions only: whole states first (taking
/// every edge that touches them along), then single edges, restarting after
/// each success. A deletion that would empty some fiber is not available.
/// The result still refutes the claim and no single deletion keeps refuting.
/// A witness that does not refute the claim is an argument error.
[[nodiscard]] inline relation_system minimize_counterexample(const claim& c,
                                                             relation_system witness) {
  if (!refutes(c, witness))
    throw std::invalid_argument("minimize_counterexample: witness does not refute claim " +
                                c.id);
  const auto drop_state = [](const relation_system& F,
                             state dead) -> std::optional<relation_system> {
    if (F.size() <= 1) return std::nullopt;
    std::vector<std::string> labels;
    std::vector<std::vector<state>> fibers;
    for (state s = 0; s < F.size(); ++s) {
      if (s == dead) continue;
      labels.push_back(F.label(s));
      std::vector<state> fiber;
      for (state t : F.fiber(s)) {
        if (t == dead) continue;
        fiber.push_back(t > dead ? t - 1 : t);
      }
      if (fiber.empty()) return std::nullopt;
      fibers.push_back(std::move(fiber));
    }
    return relation_system(std::move(labels), std::move(fibers));
  };
  const auto drop_edge = [](const relation_system& F, state s,
                            state t) -> std::optional<relation_system> {
    if (F.fiber(s).size() < 2) return std::nullopt;
    std::vector<std::vector<state>> fibers = F.fibers();
    auto& fiber = fibers[static_cast<std::size_t>(s)];
    fiber.erase(std::remove(fiber.begin(), fiber.end(), t), fiber.end());
    return relation_system(F.labels(), std::move(fibers));
  };
  for (bool shrunk = true; shrunk;) {
    shrunk = false;
    for (state s = 0; s < witness.size() && !shrunk; ++s) {
      auto candidate = drop_state(witness, s);
      if (candidate && refutes(c, *candidate)) {
        witness = std::move(*candidate);
        shrunk = true;
      }
    }
    if (shrunk) continue;
    for (state s = 0; s < witness.size() && !shrunk; ++s) {
      for (state t : witness.fiber(s)) {
        auto candidate = drop_edge(witness, s, t);
        if (candidate && refutes(c, *candidate)) {
          witness = std::move(*candidate);
          shrunk = true;
          break;
        }
      }
    }
  }
  return witness;
}

/// Evaluate a quantified claim over an explicit instance list. The first
/// premise-satisfying instance whose conclusion fails is reported as the
/// counterexample, minimized; with none the claim holds on the family, and
/// a family that never satisfies the premises is flagged vacuous.
[[nodiscard]] inline claim_report run_claim_over(const claim& c,
                                                 const std::vector<relation_system>& instances,
                                                 const std::string& family_label) {
  if (c.is_example())
    throw std::invalid_argument("run_claim_over: claim " + c.id +
                                " is fixed to built-in instances");
  claim_report report;
  report.id = c.id;
  report.instances_evaluated = instances.size();
  std::size_t satisfied = 0;
  std::size_t failures = 0;
  std::size_t inconclusive = 0;
  std::optional<relation_system> first;
  for (const auto& F : instances) {
    bool premises_hold = true;
    for (const auto& p : c.premises) {
      if (!claims_detail::run_checker(p, F).is_true()) {
        premises_hold = false;
        break;
      }
    }
    if (!premises_hold) continue;
    ++satisfied;
    const verdict conclusion = claims_detail::run_checker(c.conclusion, F);
    if (conclusion.is_true()) continue;
    if (conclusion.is_undecided()) {
      ++inconclusive;
      continue;
    }
    ++failures;
    if (!first) first = F;
  }
  report.notes.push_back("family: " + family_label);
  report.notes.push_back("premises satisfied on " + std::to_string(satisfied) + " of " +
                         std::to_string(instances.size()) + " instances");
  if (failures > 0) {
    report.status = claim_status::counterexample;
    report.notes.push_back("conclusion failed on " + std::to_string(failures) + " of " +
                           std::to_string(satisfied) + " premise-satisfying instances");
    const relation_system minimized = minimize_counterexample(c, *first);
    json premise_certs = json::object();
    for (const auto& p : c.premises)
      premise_certs[p] = claims_detail::run_checker(p, minimized).to_json();
    json witness;
    witness["system"] = system_to_json(minimized);
    witness["minimized"] = true;
    witness["premises"] = std::move(premise_certs);
    witness["conclusion"] = claims_detail::run_checker(c.conclusion, minimized).to_json();
    report.witnesses.push_back(std::move(witness));
  } else if (inconclusive > 0) {
    report.status = claim_status::undecided;
    report.notes.push_back("conclusion undecided on " + std::to_string(inconclusive) +
                           " instances");
  } else {
    report.status = claim_status::holds_on_family;
    report.notes.push_back("0 counterexamples");
    if (satisfied == 0) report.notes.push_back("vacuous on family");
  }
  return report;
}

namespace claims_detail {

[[nodiscard]] inline claim_report run_example(const claim& c) {
  claim_report report;
  report.id = c.id;
  report.instances_evaluated = 1;
  const verdict computed = c.compute();
  json witness;
  witness["computed"] = to_string(computed.value());
  witness["asserted"] = to_string(c.asserted);
  witness["certificate"] = computed.certificate();
  report.witnesses.push_back(std::move(witness));
  report.notes.push_back("statement: " + c.statement);
  report.notes.push_back("source: " + c.quote);
  if (computed.is_undecided()) {
    report.status = claim_status::undecided;
    report.notes.push_back("bounded computation exhausted without a verdict");
  } else if (computed.value() == c.asserted) {
    report.status = claim_status::agrees_with_paper;
  } else {
    report.status = claim_status::disagrees_with_paper;
  }
  return report;
}

/// Graph criterion cross-checked against the brute-force bundle; an
/// agreement collapses to one verdict, a disagreement refuses to pick a
/// side and stays undecided.
[[nodiscard]] inline verdict checked_shift_verdict(const relation_system& F,
                                                   const verdict& graph, int depth,
                                                   const verdict shift_oracle_bundle::*part) {
  const shift_oracle_bundle bundle = shift_oracle(build_limit(F), depth, depth);
  const verdict& oracle = bundle.*part;
  json cert = {{"kind", "graph-with-oracle"},
               {"depth", depth},
               {"graph", graph.to_json()},
               {"oracle", oracle.to_json()}};
  if (graph.is_undecided() || oracle.is_undecided() || graph.value() != oracle.value())
    return verdict::undecided(std::move(cert));
  return graph.is_true() ? verdict::yes(std::move(cert)) : verdict::no(std::move(cert));
}

/// Explicit bridging search: every pair of admissible words of length <= L
/// must admit a shift power moving the first cylinder across the second.
/// For vertex shifts that reduces to a positive-length walk from the last
/// letter of one word to the first letter of the other.
[[nodiscard]] inline verdict cylinder_bridging(const relation_system& F, int L) {
  const vertex_shift S = build_limit(F);
  const relation_system step = S.step_system();
  const auto dist = detail::positive_step_distances(step);
  const auto words = enumerate_words(S, L);
  int max_steps = 0;
  for (const auto& w : words) {
    for (const auto& v : words) {
      const state from = S.core_position(w.entries().back());
      const state to = S.core_position(v.entries().front());
      const int d = dist[static_cast<std::size_t>(from)][static_cast<std::size_t>(to)];
      if (d <= 0)
        return verdict::no({{"kind", "cylinder-bridging"},
                            {"depth", L},
                            {"pairs", words.size() * words.size()},
                            {"unbridged_from", w.entries()},
                            {"unbridged_to", v.entries()}});
      max_steps = std::max(max_steps, d);
    }
  }
  return verdict::yes({{"kind", "cylinder-bridging"},
                       {"depth", L},
                       {"pairs", words.size() * words.size()},
                       {"max_bridge_steps", max_steps}});
}

[[nodiscard]] inline std::vector<rational> dyadic_schedule(int hi, int lo) {
  std::vector<rational> eps;
  for (int k = hi; k <= lo; ++k) eps.push_back(pow2(-k));
  return eps;
}

}  // namespace claims_detail

/// Every statement under adjudication, in report order. Quantified claims
/// carry checker names and a default family; example claims carry the
/// computation for the verdict their source sentence asserts.
[[nodiscard]] inline const std::vector<claim>& claim_registry() {
  static const std::vector<claim> registry = [] {
    std::vector<claim> r;
    const auto quantified = [&r](std::string id, std::string statement, std::string quote,
                                 std::vector<std::string> premises, std::string conclusion,
                                 family_descriptor family) {
      claim c;
      c.id = std::move(id);
      c.statement = std::move(statement);
      c.quote = std::move(quote);
      c.premises = std::move(premises);
      c.conclusion = std::move(conclusion);
      c.family = family;
      r.push_back(std::move(c));
    };
    const auto example = [&r](std::string id, std::string statement, std::string quote,
                              truth asserted, std::function<verdict()> compute) {
      claim c;
      c.id = std::move(id);
      c.statement = std::move(statement);
      c.quote = std::move(quote);
      c.asserted = asserted;
      c.compute = std::move(compute);
      r.push_back(std::move(c));
    };

    quantified("L3.1",
               "periodic points of the shift are exactly the limit of the periodic restriction",
               R"(P(\sigma\mid_{\underleftarrow{\lim} F})=\underleftarrow{\lim} F\mid_{P(F)})",
               {}, "restriction-closure-language-match", family_descriptor::exhaustive(2));
    quantified("T3.1-1", "dense periodic points push forward to the shift",
               R"(\overline{P(F)}=X implies \overline{P(\sigma\mid_{\underleftarrow{\lim} F})}=\underleftarrow{\lim} F)",
               {"periodic-dense"}, "limit-periodic-dense", family_descriptor::exhaustive(2));
    quantified("T3.1-1-SURJ",
               "dense periodic points push forward to the shift, assuming surjectivity",
               R"(\overline{P(F)}=X implies \overline{P(\sigma\mid_{\underleftarrow{\lim} F})}=\underleftarrow{\lim} F)",
               {"surjective", "periodic-dense"}, "limit-periodic-dense",
               family_descriptor::exhaustive(2));
    quantified("T3.1-2", "dense periodic points pull back from the shift under surjectivity",
               R"(Let F(X)=X. Then \overline{P(\sigma\mid_{\underleftarrow{\lim} F})}=\underleftarrow{\lim} F implies \overline{P(F)}=X)",
               {"surjective", "limit-periodic-dense"}, "periodic-dense",
               family_descriptor::exhaustive(3));
    quantified("T3.2", "periodic-point density is invariant under inversion",
               R"(\overline{P(F)}=X if and only if \overline{P(F^{-1})}=X)", {"invertible"},
               "periodic-density-inverse-invariant", family_descriptor::exhaustive(3));
    quantified("T3.3", "a transitive shift pulls back to a transitive map under surjectivity",
               R"(Let F(X)=X. If \underleftarrow{\lim} is transitive via \sigma, then F is transitive.)",
               {"surjective", "limit-transitive"}, "transitive",
               family_descriptor::exhaustive(3));
    quantified("P4.1", "a full fiber anywhere kills strong sensitivity",
               R"(If F(x)=X for some x\in X, then F is not strongly sensitive.)", {"full-fiber"},
               "not-strongly-sensitive", family_descriptor::exhaustive(3));
    quantified("T5.2", "with every orbit periodic, a sensitive shift forces a sensitive map",
               R"(Suppose that for any x\in X, its any orbit (x_i)_{i=0}^\infty is a periodic orbit. If \underleftarrow{\lim} F is sensitive via \sigma, then F is sensitive.)",
               {"all-orbits-periodic", "limit-sensitive"}, "sensitive",
               family_descriptor::exhaustive(3));
    quantified("T5.4", "transitivity with dense periodic points forces sensitivity",
               R"(If F is transitive and \overline{P(F)}=X, then F is sensitive.)",
               {"transitive", "periodic-dense"}, "sensitive", family_descriptor::exhaustive(2));
    quantified("T5.5", "a Devaney chaotic shift pulls back to a Devaney chaotic map",
               R"(Suppose F(X)=X. If \underleftarrow{\lim} F is Devaney chaotic via \sigma, then F is Devaney chaotic.)",
               {"surjective", "limit-devaney"}, "devaney", family_descriptor::exhaustive(3));

    example("E3.1-transitive", "the two-state reset map is transitive",
            "It is easy to see F is transitive.", truth::yes,
            [] { return is_transitive(builtin::zero_reset_system()); });
    example("E3.1-limit-transitivity", "the limit of the reset map is transitive via the shift",
            R"(So, \underleftarrow{\lim} F is not transitive via \sigma.)", truth::no, [] {
              const relation_system F = builtin::zero_reset_system();
              const verdict graph = shift_transitive(build_limit(F));
              const verdict oracle =
                  claims_detail::checked_shift_verdict(F, graph, 6,
                                                       &shift_oracle_bundle::transitive);
              const verdict bridging = claims_detail::cylinder_bridging(F, 6);
              json cert = {{"kind", "limit-transitivity"},
                           {"graph_with_oracle", oracle.to_json()},
                           {"bridging", bridging.to_json()}};
              if (oracle.is_undecided() || bridging.is_undecided() ||
                  oracle.value() != bridging.value())
                return verdict::undecided(std::move(cert));
              return oracle.is_true() ? verdict::yes(std::move(cert))
                                      : verdict::no(std::move(cert));
            });

    example("E4.2-limit-full-shift",
            "the limit of the everywhere-full two-state map is the full two-shift",
            R"(\underleftarrow{\lim} F^{-1}=\underleftarrow{\lim} F=\{(x_0,x_1,x_2,\cdots):x_i\in\{0,1\},\forall i\geq 0\})",
            truth::yes, [] {
              const relation_system F = builtin::two_point_full_system();
              const vertex_shift S = build_limit(F);
              const auto words = enumerate_words(S, 6);
              std::vector<std::size_t> per_length(7, 0);
              for (const auto& w : words) ++per_length[w.size()];
              const auto inv = F.try_invert();
              const bool self_inverse = inv.has_value() && *inv == F;
              bool full = self_inverse;
              for (std::size_t len = 1; len <= 6; ++len)
                full = full && per_length[len] == (std::size_t{1} << len);
              json cert = {{"kind", "full-shift-language"},
                           {"depth", 6},
                           {"words_per_length", std::vector<std::size_t>(per_length.begin() + 1,
                                                                         per_length.end())},
                           {"self_inverse", self_inverse}};
              return full ? verdict::yes(std::move(cert)) : verdict::no(std::move(cert));
            });
    example("E4.2-limit-sensitive", "the full two-shift is sensitive",
            R"(both \underleftarrow{\lim} F^{-1} and \underleftarrow{\lim} F are sensitive via \sigma)",
            truth::yes, [] {
              const relation_system F = builtin::two_point_full_system();
              return claims_detail::checked_shift_verdict(F, shift_sensitive(build_limit(F)),
                                                          8, &shift_oracle_bundle::sensitive);
            });
    example("E4.2-not-strongly-sensitive",
            "the everywhere-full two-state map is not strongly sensitive",
            R"(By Proposition \ref{prop2}, F is not strongly sensitive.)", truth::yes, [] {
              const relation_system F = builtin::two_point_full_system();
              json cert = {{"kind", "full-fiber-collapse"},
                           {"full_fiber", has_full_fiber(F).to_json()},
                           {"strongly_sensitive", is_strongly_sensitive(F).to_json()}};
              const bool ok = has_full_fiber(F).is_true() && is_strongly_sensitive(F).is_false();
              return ok ? verdict::yes(std::move(cert)) : verdict::no(std::move(cert));
            });

    example("E4.3-1", "the tent map with a floor branch is strongly sensitive with delta 1/8",
            R"(Let \delta=\frac{1}{8}. Now we show that \delta is a strongly sensitive constant for F.)",
            truth::yes, [] {
              return verify_strong_sensitivity(builtin::tent_zero_map(), rational(1, 8), 16,
                                               claims_detail::dyadic_schedule(3, 8), 40);
            });
    example("E4.3-2",
            "the inverse of the floored tent map has its only full fiber at 0 and is not "
            "strongly sensitive",
            R"(Then by Proposition \ref{prop2}, F^{-1} is not strongly sensitive.)", truth::yes,
            [] {
              const pl_multimap inv = builtin::tent_zero_map().invert();
              const interval_union full = full_fiber_points(inv);
              const verdict strong = verify_strong_sensitivity(
                  inv, rational(1, 8), 16, claims_detail::dyadic_schedule(3, 8), 40);
              json cert = {{"kind", "inverse-fiber-structure"},
                           {"full_fiber_points", full.str()},
                           {"strongly_sensitive", strong.to_json()}};
              const bool ok = full == interval_union::point(rational(0)) && strong.is_false();
              return ok ? verdict::yes(std::move(cert)) : verdict::no(std::move(cert));
            });
    example("E4.3-3",
            "no point near the zero ray of the inverse floored-tent limit separates under "
            "shifts",
            R"(So, \underleftarrow{\lim} F^{-1} is not sensitive via \sigma.)", truth::yes, [] {
              const auto sys = limit_system::of_inverse(builtin::tent_zero_map());
              const verdict probe = point_sensitivity_probe(
                  sys, eventually_periodic_seq::constant(rational(0)), rational(1, 3),
                  rational(1, 4), 12);
              return claims_detail::negate(probe);
            });
    example("E4.3-4", "the floored tent map is strongly Devaney chaotic",
            R"(It is easy to see F is strongly Devaney chaotic, but \underleftarrow{\lim} F^{-1} is not Devaney chaotic via \sigma.)",
            truth::yes, [] {
              const pl_multimap F = builtin::tent_zero_map();
              const verdict transitive = pl_is_transitive_bounded(F, 3, 10);
              const verdict strong = verify_strong_sensitivity(
                  F, rational(1, 8), 16, claims_detail::dyadic_schedule(3, 8), 40);
              // Periodic points of the tent branch alone already land in
              // every dyadic cell; the floor branch only adds more.
              const auto periodic = pl_periodic_points_bounded(builtin::tent_map(), 8);
              bool dense = true;
              for (int j = 0; j < 8 && dense; ++j)
                dense = !periodic.all
                             .intersect(interval_union::closed(rational(j, 8),
                                                               rational(j + 1, 8)))
                             .is_empty();
              json cert = {{"kind", "strong-devaney"},
                           {"transitive", transitive.to_json()},
                           {"periodic_cells_at_resolution_8", dense},
                           {"strongly_sensitive", strong.to_json()}};
              if (transitive.is_undecided() || strong.is_undecided())
                return verdict::undecided(std::move(cert));
              const bool ok = transitive.is_true() && dense && strong.is_true();
              return ok ? verdict::yes(std::move(cert)) : verdict::no(std::move(cert));
            });

    example("E4.4-transitive", "the two-state reset map is transitive",
            R"(It is easy to see F is transitive and P(F)=\{0,1\}.)", truth::yes,
            [] { return is_transitive(builtin::zero_reset_system()); });
    example("E4.4-periodic-points", "every state of the two-state reset map is periodic",
            R"(It is easy to see F is transitive and P(F)=\{0,1\}.)", truth::yes, [] {
              const relation_system F = builtin::zero_reset_system();
              const auto periodic = periodic_points(F);
              json cert = {{"kind", "periodic-states"}, {"states", json::array()}};
              for (state s : periodic) cert["states"].push_back(F.label(s));
              const bool all = static_cast<state>(periodic.size()) == F.size();
              return all ? verdict::yes(std::move(cert)) : verdict::no(std::move(cert));
            });
    example("E4.4-not-strongly-sensitive", "the two-state reset map is not strongly sensitive",
            R"(By Proposition \ref{prop2}, F is not strongly sensitive.)", truth::yes, [] {
              return claims_detail::negate(is_strongly_sensitive(builtin::zero_reset_system()));
            });

    example("E4.5-transitive", "the everywhere-full interval map is transitive",
            R"(Since F(U)=[0,1], F(U)\bigcap V\neq\emptyset. So, F is transitive.)", truth::yes,
            [] { return pl_is_transitive_bounded(builtin::full_square_map(), 3, 4); });
    example("E4.5-periodic-points", "every point of the everywhere-full interval map is fixed",
            R"(for any x\in[0,1], x\in F(x). Then, x\in P(F). So, \overline{P(F)}=X.)",
            truth::yes, [] {
              const auto periodic = pl_periodic_points_bounded(builtin::full_square_map(), 1);
              json cert = {{"kind", "fixed-point-set"},
                           {"fixed_points", periodic.by_period.front().second.str()}};
              const bool unit = periodic.by_period.front().second == interval_union::unit();
              return unit ? verdict::yes(std::move(cert)) : verdict::no(std::move(cert));
            });
    example("E4.5-not-strongly-sensitive",
            "the everywhere-full interval map is not strongly sensitive",
            R"(Hence, d(y_n,F^n(x))=0. So, F is not  strongly sensitive.)", truth::yes, [] {
              return claims_detail::negate(verify_strong_sensitivity(
                  builtin::full_square_map(), rational(1, 8), 8,
                  claims_detail::dyadic_schedule(3, 6), 16));
            });

    example("E5.2-sensitive", "the doubling-or-tripling map separates matched orbits",
            R"(Then for any l>0, \mid y_l-x_l\mid>\varepsilon 2^l. Hence there exists n>0 such that \mid y_n-x_n\mid>\delta. So, F is sensitive.)",
            truth::yes, [] {
              bool ok = true;
              int samples = 0;
              for (int xi = 0; xi <= 3 && ok; ++xi)
                for (int ei = 1; ei <= 3 && ok; ++ei)
                  for (int L : {1, 4, 10, 20}) {
                    const rational x0(xi, 2);
                    const rational eps(ei, 8);
                    ++samples;
                    if (ratio_orbit_separation(x0, eps, L) < eps * pow2(L)) {
                      ok = false;
                      break;
                    }
                  }
              json cert = {{"kind", "matched-branch-separation"},
                           {"samples", samples},
                           {"bound", "eps * 2^L"},
                           {"pinned_witness",
                            ratio_orbit_separation_witness(rational(1), rational(1, 8), 4)
                                .to_json()}};
              return ok ? verdict::yes(std::move(cert)) : verdict::no(std::move(cert));
            });
    example("E5.2-limit-not-sensitive",
            "near the zero ray the doubling-or-tripling limit never separates under shifts",
            R"(So, \underleftarrow{\lim} F is not sensitive via \sigma.)", truth::yes, [] {
              const auto sys = limit_system::of_inverse(builtin::half_third_map());
              const verdict ray = forced_ray(sys, rational(0), 16);
              const verdict probe = point_sensitivity_probe(
                  sys, eventually_periodic_seq::constant(rational(0)), rational(1, 3),
                  rational(1, 4), 8);
              json cert = {{"kind", "point-local-stability"},
                           {"forced_ray", ray.to_json()},
                           {"probe", probe.to_json()}};
              if (ray.is_true() && probe.is_false()) return verdict::yes(std::move(cert));
              if (probe.is_true()) return verdict::no(std::move(cert));
              return verdict::undecided(std::move(cert));
            });

    example("E5.3-inverse-fibers", "no inverse fiber of the identity-mix map is a single point",
            R"(For any x\in[0,1], F^{-1}(x) is not a single point set)", truth::yes, [] {
              const auto [at_x, spread] =
                  detail::min_fiber_spread(builtin::identity_mix_map().invert());
              json cert = {{"kind", "minimum-fiber-spread"},
                           {"x", at_x.str()},
                           {"spread", spread.str()}};
              return spread.sign() > 0 ? verdict::yes(std::move(cert))
                                       : verdict::no(std::move(cert));
            });
    example("E5.3-limit-sensitive", "the identity-mix limit is sensitive via the shift",
            R"(F^{-1}(x) is not a single point set, so \underleftarrow{\lim} F is sensitive via \sigma.)",
            truth::yes, [] {
              const auto sys = limit_system::of(builtin::identity_mix_map());
              const auto spread = branch_separation_bound(sys);
              if (!spread)
                return verdict::undecided(
                    {{"kind", "uniform-branch-separation"}, {"separation", nullptr}});
              json cert = {{"kind", "uniform-branch-separation"},
                           {"separation", spread->str()},
                           {"delta", (*spread / rational(2)).str()}};
              return verdict::yes(std::move(cert));
            });
    example("E5.3-not-sensitive", "the identity-mix map itself is not sensitive",
            R"(Let \delta>0, x=0 and \varepsilon=\frac{1}{4}. ... So, F is not sensitive.)",
            truth::yes, [] {
              return find_non_sensitivity_witness(builtin::identity_mix_map(), rational(1, 8),
                                                  16);
            });

    example("E5.6-devaney", "the two-state reset map is Devaney chaotic",
            R"(It is easy to see F is transitive and P(F)=\{0,1\}. By Theorem \ref{thm123}, F is Devaney chaoatic.)",
            truth::yes, [] { return is_devaney(builtin::zero_reset_system()); });
    example("E5.6-limit-not-devaney", "the limit of the reset map is Devaney chaotic",
            R"(By Example \ref{exatran}, \underleftarrow{\lim} F is not transitive. So, \underleftarrow{\lim} F is not Devaney chaotic via \sigma.)",
            truth::no, [] {
              const relation_system F = builtin::zero_reset_system();
              const vertex_shift S = build_limit(F);
              const verdict transitive = claims_detail::checked_shift_verdict(
                  F, shift_transitive(S), 8, &shift_oracle_bundle::transitive);
              const verdict dense = claims_detail::checked_shift_verdict(
                  F, shift_periodic_dense(S), 8, &shift_oracle_bundle::dense);
              const verdict sensitive = claims_detail::checked_shift_verdict(
                  F, shift_sensitive(S), 8, &shift_oracle_bundle::sensitive);
              json cert = {{"kind", "limit-devaney"},
                           {"transitive", transitive.to_json()},
                           {"periodic_dense", dense.to_json()},
                           {"sensitive", sensitive.to_json()}};
              if (transitive.is_undecided() || dense.is_undecided() ||
                  sensitive.is_undecided())
                return verdict::undecided(std::move(cert));
              const bool devaney =
                  transitive.is_true() && dense.is_true() && sensitive.is_true();
              return devaney ? verdict::yes(std::move(cert)) : verdict::no(std::move(cert));
            });

    quantified("X-ORACLE", "graph criteria for the shift agree with the brute-force oracle",
               "", {}, "shift-oracle-agreement", family_descriptor::exhaustive(3));
    return r;
  }();
  return registry;
}

[[nodiscard]] inline const claim& find_claim(const std::string& id) {
  for (const auto& c : claim_registry())
    if (c.id == id) return c;
  throw std::invalid_argument("find_claim: unknown claim id \"" + id + "\"");
}

/// Adjudicate one claim on its registered family (or built-in instance).
[[nodiscard]] inline claim_report run_claim(const std::string& id) {
  const claim& c = find_claim(id);
  if (c.is_example()) return claims_detail::run_example(c);
  return run_claim_over(c, c.family.instances(), c.family.str());
}

/// Reports for every example claim, in registry order.
[[nodiscard]] inline std::vector<claim_report> example_suite() {
  std::vector<claim_report> out;
  for (const auto& c : claim_registry())
    if (c.is_example()) out.push_back(claims_detail::run_example(c));
  return out;
}

/// Reports for every registered claim, in registry order.
[[nodiscard]] inline std::vector<claim_report> run_all_claims() {
  std::vector<claim_report> out;
  for (const auto& c : claim_registry()) out.push_back(run_claim(c.id));
  return out;
}

[[nodiscard]] inline json reports_to_json(const std::vector<claim_report>& reports) {
  json out = json::array();
  for (const auto& r : reports) out.push_back(r.to_json());
  return out;
}

}  // namespace setdyn
