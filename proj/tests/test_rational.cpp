#include <setdyn/rational.hpp>

#include <gtest/gtest.h>

#include <random>
#include <stdexcept>

namespace {

using setdyn::bigint;
using setdyn::rational;

TEST(RationalTest, CanonicalForm) {
  rational r(6, 4);
  EXPECT_EQ(r.numerator(), 3);
  EXPECT_EQ(r.denominator(), 2);

  rational negative_den(1, -2);
  EXPECT_EQ(negative_den.numerator(), -1);
  EXPECT_EQ(negative_den.denominator(), 2);

  rational zero(0, 7);
  EXPECT_EQ(zero.numerator(), 0);
  EXPECT_EQ(zero.denominator(), 1);
  EXPECT_TRUE(zero.is_zero());
}

TEST(RationalTest, ZeroDenominatorThrows) {
  EXPECT_THROW(rational(1, 0), std::domain_error);
  EXPECT_THROW(rational(1, 2) / rational(0), std::domain_error);
}

TEST(RationalTest, Arithmetic) {
  EXPECT_EQ(rational(1, 4) + rational(5, 8), rational(7, 8));
  EXPECT_EQ(rational(1, 4) - rational(5, 8), rational(-3, 8));
  EXPECT_EQ(rational(2, 3) * rational(9, 4), rational(3, 2));
  EXPECT_EQ(rational(2, 3) / rational(4, 3), rational(1, 2));
  EXPECT_EQ(-rational(3, 5), rational(-3, 5));
}

TEST(RationalTest, Comparisons) {
  EXPECT_LT(rational(1, 3), rational(1, 2));
  EXPECT_LT(rational(-1, 2), rational(-1, 3));
  EXPECT_LE(rational(2, 4), rational(1, 2));
  EXPECT_GT(rational(5, 8), rational(1, 4));
  EXPECT_EQ(setdyn::min(rational(1, 3), rational(1, 2)), rational(1, 3));
  EXPECT_EQ(setdyn::max(rational(1, 3), rational(1, 2)), rational(1, 2));
  EXPECT_EQ(setdyn::abs(rational(-3, 8)), rational(3, 8));
}

TEST(RationalTest, Pow2) {
  EXPECT_EQ(setdyn::pow2(0), rational(1));
  EXPECT_EQ(setdyn::pow2(5), rational(32));
  EXPECT_EQ(setdyn::pow2(-3), rational(1, 8));
}

TEST(RationalTest, ParseAndPrint) {
  EXPECT_EQ(setdyn::parse_rational("3/4"), rational(3, 4));
  EXPECT_EQ(setdyn::parse_rational("-3/4"), rational(-3, 4));
  EXPECT_EQ(setdyn::parse_rational("7"), rational(7));
  EXPECT_EQ(setdyn::parse_rational("+2/6"), rational(1, 3));
  EXPECT_EQ(rational(3, 4).str(), "3/4");
  EXPECT_EQ(rational(-7).str(), "-7");
  EXPECT_EQ(rational(4, 2).str(), "2");

  EXPECT_THROW(setdyn::parse_rational(""), std::invalid_argument);
  EXPECT_THROW(setdyn::parse_rational("1/"), std::invalid_argument);
  EXPECT_THROW(setdyn::parse_rational("/2"), std::invalid_argument);
  EXPECT_THROW(setdyn::parse_rational("1/0"), std::invalid_argument);
  EXPECT_THROW(setdyn::parse_rational("a/2"), std::invalid_argument);
  EXPECT_THROW(setdyn::parse_rational("1/-2"), std::invalid_argument);
  EXPECT_THROW(setdyn::parse_rational("1.5"), std::invalid_argument);
}

TEST(RationalTest, ParsePrintRoundTripRandom) {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 2000; ++i) {
    auto num = static_cast<std::int64_t>(rng()) % 100000;
    auto den = static_cast<std::int64_t>(rng() % 99999) + 1;
    rational r{bigint(num), bigint(den)};
    EXPECT_EQ(setdyn::parse_rational(r.str()), r);
  }
}

// Arithmetic cross-checked against unreduced big-integer formulas.
TEST(RationalTest, ArithmeticAgainstUnreducedFormulas) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 2000; ++i) {
    auto a = static_cast<std::int64_t>(rng()) % 1000;
    auto b = static_cast<std::int64_t>(rng() % 999) + 1;
    auto c = static_cast<std::int64_t>(rng()) % 1000;
    auto d = static_cast<std::int64_t>(rng() % 999) + 1;
    rational x{bigint(a), bigint(b)};
    rational y{bigint(c), bigint(d)};
    EXPECT_EQ(x + y, rational(bigint(a) * d + bigint(c) * b, bigint(b) * d));
    EXPECT_EQ(x * y, rational(bigint(a) * c, bigint(b) * d));
    EXPECT_EQ(x < y, bigint(a) * d < bigint(c) * b);
  }
}

TEST(RationalTest, ArbitraryPrecision) {
  rational tiny = setdyn::pow2(-200);
  rational one_third(1, 3);
  EXPECT_LT(one_third, one_third + tiny);
  EXPECT_EQ((one_third + tiny) - tiny, one_third);
  EXPECT_EQ(tiny.denominator(), bigint(1) << 200);
}

}  // namespace
