#pragma once

#include <setdyn/pl.hpp>
#include <setdyn/rational.hpp>
#include <setdyn/relation.hpp>
#include <setdyn/verdict.hpp>

#include <algorithm>
#include <fstream>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace setdyn {

/// Rejected input file or JSON value. The message names the JSON path of the
/// offending element, e.g. "map.0[1]" or "pieces[2].x".
class parse_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A system file holds either a finite relation or a piecewise-linear
/// multimap on [0,1].
using parsed_system = std::variant<relation_system, pl_multimap>;

namespace io_detail {

inline void require_keys(const json& obj, std::initializer_list<const char*> allowed,
                         const std::string& path) {
  for (const auto& item : obj.items()) {
    const std::string& key = item.key();
    if (std::find_if(allowed.begin(), allowed.end(),
                     [&](const char* k) { return key == k; }) == allowed.end())
      throw parse_error(path + ": unknown field \"" + key + "\"");
  }
}

[[nodiscard]] inline rational rational_at(const json& j, const std::string& path) {
  if (!j.is_string())
    throw parse_error(path + ": expected a rational string like \"1/2\" or \"-3\"");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const std::invalid_argument&) {
    throw parse_error(path + ": malformed rational \"" + j.get<std::string>() + "\"");
  }
}

[[nodiscard]] inline std::pair<rational, rational> extent_at(const json& j,
                                                             const std::string& path) {
  if (!j.is_array() || j.size() != 2) throw parse_error(path + ": expected [lo, hi]");
  return {rational_at(j[0], path + "[0]"), rational_at(j[1], path + "[1]")};
}

[[nodiscard]] inline relation_system parse_finite(const json& j) {
  require_keys(j, {"kind", "states", "map"}, "$");
  if (!j.contains("states") || !j["states"].is_array() || j["states"].empty())
    throw parse_error("states: expected a nonempty array of state names");
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < j["states"].size(); ++i) {
    const json& s = j["states"][i];
    if (!s.is_string() || s.get<std::string>().empty())
      throw parse_error("states[" + std::to_string(i) + "]: expected a nonempty string");
    labels.push_back(s.get<std::string>());
  }
  for (std::size_t i = 0; i < labels.size(); ++i)
    for (std::size_t k = i + 1; k < labels.size(); ++k)
      if (labels[i] == labels[k])
        throw parse_error("states[" + std::to_string(k) + "]: duplicate state \"" + labels[k] +
                          "\"");
  auto index_of = [&](const std::string& name, const std::string& path) -> state {
    const auto it = std::find(labels.begin(), labels.end(), name);
    if (it == labels.end()) throw parse_error(path + ": unknown state \"" + name + "\"");
    return static_cast<state>(it - labels.begin());
  };
  if (!j.contains("map") || !j["map"].is_object())
    throw parse_error("map: expected an object keyed by state name");
  std::vector<std::vector<state>> fibers(labels.size());
  std::vector<bool> defined(labels.size(), false);
  for (const auto& item : j["map"].items()) {
    const std::string path = "map." + item.key();
    const state s = index_of(item.key(), path);
    if (defined[static_cast<std::size_t>(s)]) throw parse_error(path + ": duplicate key");
    defined[static_cast<std::size_t>(s)] = true;
    const json& targets = item.value();
    if (!targets.is_array() || targets.empty())
      throw parse_error(path + ": expected a nonempty array of state names");
    for (std::size_t i = 0; i < targets.size(); ++i) {
      const std::string ipath = path + "[" + std::to_string(i) + "]";
      if (!targets[i].is_string()) throw parse_error(ipath + ": expected a state name");
      const state t = index_of(targets[i].get<std::string>(), ipath);
      auto& fiber = fibers[static_cast<std::size_t>(s)];
      if (std::find(fiber.begin(), fiber.end(), t) != fiber.end())
        throw parse_error(ipath + ": duplicate state \"" + targets[i].get<std::string>() + "\"");
      fiber.push_back(t);
    }
  }
  for (std::size_t s = 0; s < labels.size(); ++s)
    if (!defined[s]) throw parse_error("map." + labels[s] + ": missing");
  return relation_system(std::move(labels), std::move(fibers));
}

[[nodiscard]] inline pl_multimap parse_pl(const json& j) {
  require_keys(j, {"kind", "pieces"}, "$");
  if (!j.contains("pieces") || !j["pieces"].is_array() || j["pieces"].empty())
    throw parse_error("pieces: expected a nonempty array");
  std::vector<graph_piece> pieces;
  for (std::size_t i = 0; i < j["pieces"].size(); ++i) {
    const std::string path = "pieces[" + std::to_string(i) + "]";
    const json& pj = j["pieces"][i];
    if (!pj.is_object() || !pj.contains("type") || !pj["type"].is_string())
      throw parse_error(path + ".type: expected \"segment\" or \"rect\"");
    const std::string type = pj["type"].get<std::string>();
    auto field = [&](const char* name) -> const json& {
      if (!pj.contains(name)) throw parse_error(path + "." + name + ": missing");
      return pj[name];
    };
    try {
      if (type == "segment") {
        require_keys(pj, {"type", "x", "a", "b"}, path);
        const auto [lo, hi] = extent_at(field("x"), path + ".x");
        pieces.push_back(graph_piece::segment(rational_at(field("a"), path + ".a"),
                                              rational_at(field("b"), path + ".b"), lo, hi));
      } else if (type == "rect") {
        require_keys(pj, {"type", "x", "y"}, path);
        const auto [x_lo, x_hi] = extent_at(field("x"), path + ".x");
        const auto [y_lo, y_hi] = extent_at(field("y"), path + ".y");
        pieces.push_back(graph_piece::rectangle(x_lo, x_hi, y_lo, y_hi));
      } else {
        throw parse_error(path + ".type: unknown type \"" + type + "\"");
      }
    } catch (const std::invalid_argument& e) {
      throw parse_error(path + ": " + e.what());
    } catch (const std::domain_error& e) {
      throw parse_error(path + ": " + e.what());
    }
  }
  try {
    return pl_multimap(std::move(pieces));
  } catch (const std::invalid_argument& e) {
    throw parse_error(std::string("pieces: ") + e.what());
  }
}

}  // namespace io_detail

[[nodiscard]] inline parsed_system parse_system(const json& j) {
  if (!j.is_object()) throw parse_error("$: expected an object");
  if (!j.contains("kind") || !j["kind"].is_string())
    throw parse_error("kind: expected \"finite\" or \"pl\"");
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "finite") return io_detail::parse_finite(j);
  if (kind == "pl") return io_detail::parse_pl(j);
  throw parse_error("kind: unknown kind \"" + kind + "\"");
}

[[nodiscard]] inline parsed_system load_system(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw parse_error(file + ": cannot open");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw parse_error(file + ": " + e.what());
  }
  return parse_system(j);
}

[[nodiscard]] inline json system_to_json(const relation_system& F) {
  json out;
  out["kind"] = "finite";
  out["states"] = json::array();
  for (state s = 0; s < F.size(); ++s) out["states"].push_back(F.label(s));
  out["map"] = json::object();
  for (state s = 0; s < F.size(); ++s) {
    json fiber = json::array();
    for (state t : F.fiber(s)) fiber.push_back(F.label(t));
    out["map"][F.label(s)] = std::move(fiber);
  }
  return out;
}

[[nodiscard]] inline json system_to_json(const pl_multimap& m) {
  json out;
  out["kind"] = "pl";
  out["pieces"] = json::array();
  for (const auto& p : m.pieces()) {
    json pj;
    if (p.is_segment()) {
      pj["type"] = "segment";
      pj["x"] = {p.x_lo().str(), p.x_hi().str()};
      pj["a"] = p.slope().str();
      pj["b"] = p.offset().str();
    } else {
      pj["type"] = "rect";
      pj["x"] = {p.x_lo().str(), p.x_hi().str()};
      pj["y"] = {p.y_lo().str(), p.y_hi().str()};
    }
    out["pieces"].push_back(std::move(pj));
  }
  return out;
}

}  // namespace setdyn
