#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace setdyn {

using state = int;

class not_invertible_error : public std::domain_error {
 public:
  not_invertible_error(std::string message, state uncovered)
      : std::domain_error(std::move(message)), uncovered_(uncovered) {}

  [[nodiscard]] state uncovered() const { return uncovered_; }

 private:
  state uncovered_;
};

/// A set-valued self-map of a finite space, stored as one sorted successor
/// list per state. Every fiber is nonempty; the constructor rejects anything
/// else so downstream code never has to re-check.
class relation_system {
 public:
  relation_system(std::vector<std::string> labels, std::vector<std::vector<state>> fibers)
      : labels_(std::move(labels)), fibers_(std::move(fibers)) {
    if (labels_.empty()) throw std::invalid_argument("relation_system: no states");
    if (labels_.size() != fibers_.size())
      throw std::invalid_argument("relation_system: label/fiber count mismatch");
    const auto n = static_cast<state>(labels_.size());
    std::set<std::string> seen;
    for (const auto& label : labels_) {
      if (label.empty()) throw std::invalid_argument("relation_system: empty state label");
      if (!seen.insert(label).second)
        throw std::invalid_argument("relation_system: duplicate state label '" + label + "'");
    }
    for (state s = 0; s < n; ++s) {
      auto& fiber = fibers_[static_cast<std::size_t>(s)];
      if (fiber.empty())
        throw std::invalid_argument("relation_system: empty fiber at state '" +
                                    labels_[static_cast<std::size_t>(s)] + "'");
      for (state t : fiber)
        if (t < 0 || t >= n)
          throw std::invalid_argument("relation_system: fiber target out of range at state '" +
                                      labels_[static_cast<std::size_t>(s)] + "'");
      std::sort(fiber.begin(), fiber.end());
      fiber.erase(std::unique(fiber.begin(), fiber.end()), fiber.end());
    }
  }

  /// States labelled "0", "1", ... which is what the generated families use.
  static relation_system of(std::vector<std::vector<state>> fibers) {
    std::vector<std::string> labels;
    labels.reserve(fibers.size());
    for (std::size_t i = 0; i < fibers.size(); ++i) labels.push_back(std::to_string(i));
    return {std::move(labels), std::move(fibers)};
  }

  [[nodiscard]] state size() const { return static_cast<state>(labels_.size()); }
  [[nodiscard]] const std::string& label(state s) const {
    return labels_.at(static_cast<std::size_t>(s));
  }
  [[nodiscard]] const std::vector<std::string>& labels() const { return labels_; }
  [[nodiscard]] const std::vector<state>& fiber(state s) const {
    return fibers_.at(static_cast<std::size_t>(s));
  }
  [[nodiscard]] const std::vector<std::vector<state>>& fibers() const { return fibers_; }
  [[nodiscard]] state out_degree(state s) const { return static_cast<state>(fiber(s).size()); }

  [[nodiscard]] bool has_edge(state from, state to) const {
    const auto& f = fiber(from);
    return std::binary_search(f.begin(), f.end(), to);
  }

  /// Successor lists read backwards: transposed()[v] lists every u with
  /// v in fiber(u). Entries may be empty, so this is raw adjacency, not a
  /// relation_system.
  [[nodiscard]] std::vector<std::vector<state>> transposed() const {
    std::vector<std::vector<state>> rev(static_cast<std::size_t>(size()));
    for (state u = 0; u < size(); ++u)
      for (state v : fiber(u)) rev[static_cast<std::size_t>(v)].push_back(u);
    return rev;
  }

  /// The inverse relation, defined exactly when every state has a
  /// predecessor. Throws not_invertible_error naming the first state whose
  /// inverse fiber would be empty.
  [[nodiscard]] relation_system invert() const {
    auto rev = transposed();
    for (state v = 0; v < size(); ++v)
      if (rev[static_cast<std::size_t>(v)].empty())
        throw not_invertible_error(
            "relation not invertible: state '" + label(v) + "' has no predecessor", v);
    return {labels_, std::move(rev)};
  }

  [[nodiscard]] std::optional<relation_system> try_invert() const {
    auto rev = transposed();
    for (const auto& f : rev)
      if (f.empty()) return std::nullopt;
    return relation_system{labels_, std::move(rev)};
  }

  /// Lexicographically least fiber table over all relabelings. Two systems
  /// are isomorphic iff their canonical tables agree. Factorial scan, only
  /// meant for the small systems the counterexample search produces.
  [[nodiscard]] std::vector<std::vector<state>> canonical_fibers() const {
    const state n = size();
    if (n > 8) throw std::invalid_argument("canonical_fibers: too many states");
    std::vector<state> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    std::optional<std::vector<std::vector<state>>> best;
    do {
      std::vector<std::vector<state>> relabeled(static_cast<std::size_t>(n));
      for (state s = 0; s < n; ++s) {
        auto& f = relabeled[static_cast<std::size_t>(perm[static_cast<std::size_t>(s)])];
        for (state t : fiber(s)) f.push_back(perm[static_cast<std::size_t>(t)]);
        std::sort(f.begin(), f.end());
      }
      if (!best || relabeled < *best) best = std::move(relabeled);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return *best;
  }

  [[nodiscard]] bool isomorphic_to(const relation_system& other) const {
    return size() == other.size() && canonical_fibers() == other.canonical_fibers();
  }

  [[nodiscard]] bool operator==(const relation_system& other) const {
    return labels_ == other.labels_ && fibers_ == other.fibers_;
  }

 private:
  std::vector<std::string> labels_;
  std::vector<std::vector<state>> fibers_;
};

/// Image of a set of states under one application of the relation.
[[nodiscard]] inline std::set<state> image(const relation_system& F, const std::set<state>& xs) {
  std::set<state> out;
  for (state x : xs)
    for (state y : F.fiber(x)) out.insert(y);
  return out;
}

/// F^k({x}). k = 0 gives {x}.
[[nodiscard]] inline std::set<state> iterate(const relation_system& F, state x, int k) {
  if (k < 0) throw std::invalid_argument("iterate: negative exponent");
  std::set<state> cur{x};
  for (int i = 0; i < k; ++i) cur = image(F, cur);
  return cur;
}

/// An orbit word lists consecutive states of one trajectory: each entry must
/// map to the next, i.e. word[i+1] in F(word[i]).
[[nodiscard]] inline bool is_orbit_word(const relation_system& F, const std::vector<state>& word) {
  if (word.empty()) return false;
  for (state s : word)
    if (s < 0 || s >= F.size()) return false;
  for (std::size_t i = 0; i + 1 < word.size(); ++i)
    if (!F.has_edge(word[i], word[i + 1])) return false;
  return true;
}

}  // namespace setdyn
