#pragma once

#include <json.hpp>

#include <ostream>
#include <string>
#include <utility>

namespace setdyn {

/// JSON object type used for certificates and reports. Ordered so that
/// serialized output is byte-stable across runs.
using json = nlohmann::ordered_json;

enum class truth { yes, no, undecided };

[[nodiscard]] inline const char* to_string(truth value) {
  switch (value) {
    case truth::yes:
      return "TRUE";
    case truth::no:
      return "FALSE";
    default:
      return "UNDECIDED";
  }
}

/// Outcome of a decision procedure. TRUE and FALSE verdicts always carry a
/// certificate with enough data to replay the decision; UNDECIDED carries a
/// description of what the bounded search exhausted.
class verdict {
 public:
  static verdict yes(json certificate) { return {truth::yes, std::move(certificate)}; }
  static verdict no(json certificate) { return {truth::no, std::move(certificate)}; }
  static verdict undecided(json certificate) {
    return {truth::undecided, std::move(certificate)};
  }

  [[nodiscard]] truth value() const { return value_; }
  [[nodiscard]] bool is_true() const { return value_ == truth::yes; }
  [[nodiscard]] bool is_false() const { return value_ == truth::no; }
  [[nodiscard]] bool is_undecided() const { return value_ == truth::undecided; }
  [[nodiscard]] const json& certificate() const { return certificate_; }

  [[nodiscard]] json to_json() const {
    json out;
    out["value"] = to_string(value_);
    out["certificate"] = certificate_;
    return out;
  }

  friend std::ostream& operator<<(std::ostream& os, const verdict& v) {
    return os << to_string(v.value());
  }

 private:
  verdict(truth value, json certificate) : value_(value), certificate_(std::move(certificate)) {}

  truth value_;
  json certificate_;
};

}  // namespace setdyn
