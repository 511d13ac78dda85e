#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cassert>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace setdyn {

using bigint = boost::multiprecision::cpp_int;

/// Exact rational number with arbitrary-precision numerator and denominator.
///
/// Invariants: denominator > 0 and gcd(|numerator|, denominator) == 1.
/// Every constructor and operator re-establishes this canonical form, so
/// equality is structural and all comparisons are exact.
class rational {
 public:
  rational() : num_(0), den_(1) {}

  rational(std::int64_t value) : num_(value), den_(1) {}  // NOLINT: implicit by design

  rational(bigint numerator, bigint denominator)
      : num_(std::move(numerator)), den_(std::move(denominator)) {
    if (den_ == 0) {
      throw std::domain_error("rational: zero denominator");
    }
    normalize();
  }

  [[nodiscard]] const bigint& numerator() const { return num_; }
  [[nodiscard]] const bigint& denominator() const { return den_; }

  [[nodiscard]] bool is_zero() const { return num_ == 0; }
  [[nodiscard]] bool is_integer() const { return den_ == 1; }
  [[nodiscard]] int sign() const { return num_ == 0 ? 0 : (num_ < 0 ? -1 : 1); }

  rational& operator+=(const rational& other) {
    num_ = num_ * other.den_ + other.num_ * den_;
    den_ *= other.den_;
    normalize();
    return *this;
  }

  rational& operator-=(const rational& other) {
    num_ = num_ * other.den_ - other.num_ * den_;
    den_ *= other.den_;
    normalize();
    return *this;
  }

  rational& operator*=(const rational& other) {
    num_ *= other.num_;
    den_ *= other.den_;
    normalize();
    return *this;
  }

  rational& operator/=(const rational& other) {
    if (other.num_ == 0) {
      throw std::domain_error("rational: division by zero");
    }
    num_ *= other.den_;
    den_ *= other.num_;
    normalize();
    return *this;
  }

  friend rational operator+(rational lhs, const rational& rhs) { return lhs += rhs; }
  friend rational operator-(rational lhs, const rational& rhs) { return lhs -= rhs; }
  friend rational operator*(rational lhs, const rational& rhs) { return lhs *= rhs; }
  friend rational operator/(rational lhs, const rational& rhs) { return lhs /= rhs; }

  friend rational operator-(const rational& value) {
    rational result;
    result.num_ = -value.num_;
    result.den_ = value.den_;
    return result;
  }

  friend bool operator==(const rational& lhs, const rational& rhs) {
    return lhs.num_ == rhs.num_ && lhs.den_ == rhs.den_;
  }

  friend bool operator!=(const rational& lhs, const rational& rhs) { return !(lhs == rhs); }

  friend bool operator<(const rational& lhs, const rational& rhs) {
    return lhs.num_ * rhs.den_ < rhs.num_ * lhs.den_;
  }

  friend bool operator>(const rational& lhs, const rational& rhs) { return rhs < lhs; }
  friend bool operator<=(const rational& lhs, const rational& rhs) { return !(rhs < lhs); }
  friend bool operator>=(const rational& lhs, const rational& rhs) { return !(lhs < rhs); }

  /// Renders "p/q", or just "p" for integers. Inverse of parse_rational.
  [[nodiscard]] std::string str() const {
    std::string out = num_.str();
    if (den_ != 1) {
      out += "/" + den_.str();
    }
    return out;
  }

  friend std::ostream& operator<<(std::ostream& os, const rational& value) {
    return os << value.str();
  }

 private:
  void normalize() {
    assert(den_ != 0);
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    bigint g = boost::multiprecision::gcd(num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  bigint num_;
  bigint den_;
};

[[nodiscard]] inline rational abs(const rational& value) {
  return value.sign() < 0 ? -value : value;
}

[[nodiscard]] inline const rational& min(const rational& a, const rational& b) {
  return b < a ? b : a;
}

[[nodiscard]] inline const rational& max(const rational& a, const rational& b) {
  return a < b ? b : a;
}

/// 2^k for any integer k, negative exponents included.
[[nodiscard]] inline rational pow2(int exponent) {
  bigint p = 1;
  p <<= (exponent < 0 ? -exponent : exponent);
  return exponent < 0 ? rational(1, p) : rational(p, 1);
}

/// Parses "p", "-p" or "p/q" with optional sign on the numerator.
/// Throws std::invalid_argument on anything else.
[[nodiscard]] inline rational parse_rational(std::string_view text) {
  auto fail = [&] {
    throw std::invalid_argument("parse_rational: malformed rational '" + std::string(text) + "'");
  };
  if (text.empty()) {
    fail();
  }
  std::size_t slash = text.find('/');
  std::string_view num_part = text.substr(0, slash == std::string_view::npos ? text.size() : slash);
  std::string_view den_part =
      slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  auto parse_int = [&](std::string_view part, bool allow_sign) -> bigint {
    if (part.empty()) {
      fail();
    }
    std::size_t start = 0;
    if (allow_sign && (part[0] == '-' || part[0] == '+')) {
      start = 1;
    }
    if (start == part.size()) {
      fail();
    }
    for (std::size_t i = start; i < part.size(); ++i) {
      if (part[i] < '0' || part[i] > '9') {
        fail();
      }
    }
    bigint magnitude{std::string(part.substr(start))};
    return part[0] == '-' ? -magnitude : magnitude;
  };
  bigint num = parse_int(num_part, true);
  bigint den = parse_int(den_part, false);
  if (den == 0) {
    throw std::invalid_argument("parse_rational: zero denominator in '" + std::string(text) + "'");
  }
  return rational(num, den);
}

}  // namespace setdyn
