#include <setdyn/metric.hpp>

#include <gtest/gtest.h>

#include <random>
#include <set>
#include <stdexcept>
#include <vector>

namespace {

using setdyn::eventually_periodic_seq;
using setdyn::ground_metric;
using setdyn::rational;

rational q(std::int64_t n, std::int64_t d = 1) { return {setdyn::bigint(n), setdyn::bigint(d)}; }

TEST(GroundMetricTest, DiscreteDistance) {
  auto m = ground_metric::discrete_on(2);
  EXPECT_EQ(m.distance(q(0), q(1)), q(1));
  EXPECT_EQ(m.distance(q(1), q(1)), q(0));
  EXPECT_EQ(m.diameter(), q(1));
  EXPECT_THROW(m.distance(q(0), q(2)), std::domain_error);
  EXPECT_THROW(m.distance(q(1, 2), q(0)), std::domain_error);
}

TEST(GroundMetricTest, IntervalDistance) {
  auto m = ground_metric::unit_interval();
  EXPECT_EQ(m.distance(q(1, 4), q(5, 8)), q(3, 8));
  EXPECT_EQ(m.distance(q(1), q(0)), q(1));
  EXPECT_THROW(m.distance(q(-1, 8), q(0)), std::domain_error);
  EXPECT_THROW(m.distance(q(0), q(9, 8)), std::domain_error);
}

TEST(SequenceTest, CanonicalizationFindsPrimitiveCycle) {
  eventually_periodic_seq a({}, {q(0), q(1), q(0), q(1)});
  eventually_periodic_seq b({}, {q(0), q(1)});
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.cycle().size(), 2u);

  eventually_periodic_seq c({}, {q(1, 2), q(1, 2)});
  EXPECT_EQ(c.cycle().size(), 1u);
}

TEST(SequenceTest, CanonicalizationRollsPreperiodIntoCycle) {
  eventually_periodic_seq a({q(0)}, {q(1), q(0)});
  eventually_periodic_seq b({}, {q(0), q(1)});
  EXPECT_EQ(a, b);
  EXPECT_TRUE(a.preperiod().empty());

  eventually_periodic_seq c({q(1), q(0)}, {q(0)});
  EXPECT_EQ(c.preperiod().size(), 1u);
  EXPECT_EQ(c.at(0), q(1));
  EXPECT_EQ(c.at(1), q(0));
  EXPECT_EQ(c.at(100), q(0));
}

TEST(SequenceTest, ShiftDropsFirstCoordinate) {
  eventually_periodic_seq a({q(1)}, {q(0)});
  EXPECT_EQ(a.shifted(), eventually_periodic_seq::constant(q(0)));

  eventually_periodic_seq alt({}, {q(0), q(1)});
  EXPECT_EQ(alt.shifted(), eventually_periodic_seq({}, {q(1), q(0)}));
  EXPECT_EQ(alt.shifted(2), alt);
}

TEST(RhoTest, DiscreteExamples) {
  auto m = ground_metric::discrete_on(2);
  eventually_periodic_seq zeros = eventually_periodic_seq::constant(q(0));
  eventually_periodic_seq one_then_zeros({q(1)}, {q(0)});
  EXPECT_EQ(rho_exact(zeros, one_then_zeros, m), q(1));

  eventually_periodic_seq alt01({}, {q(0), q(1)});
  eventually_periodic_seq alt10({}, {q(1), q(0)});
  EXPECT_EQ(rho_exact(alt01, alt10, m), q(2));
  EXPECT_EQ(rho_exact(alt01, alt01, m), q(0));
}

TEST(RhoTest, IntervalExample) {
  auto m = ground_metric::unit_interval();
  auto halves = eventually_periodic_seq::constant(q(1, 2));
  auto zeros = eventually_periodic_seq::constant(q(0));
  EXPECT_EQ(rho_exact(halves, zeros, m), q(1));
}

TEST(RhoTest, MisalignedCycles) {
  auto m = ground_metric::discrete_on(2);
  // (0 1 0 1 ...) against (0 1 1 0 1 1 ...): differences at i = 2, 3, 4 mod 6
  // contribute (2^-2 + 2^-3 + 2^-4) summed over blocks of 6, giving 4/9.
  eventually_periodic_seq a({}, {q(0), q(1)});
  eventually_periodic_seq b({}, {q(0), q(1), q(1)});
  rational block = q(1, 4) + q(1, 8) + q(1, 16);
  rational expected = block * q(64) / q(63);
  ASSERT_EQ(expected, q(4, 9));
  EXPECT_EQ(rho_exact(a, b, m), expected);
}

TEST(RhoBoundsTest, Examples) {
  auto m = ground_metric::discrete_on(2);
  auto b1 = rho_bounds({q(0)}, {q(1)}, m);
  EXPECT_EQ(b1.first, q(1));
  EXPECT_EQ(b1.second, q(2));

  auto b2 = rho_bounds({q(0), q(0), q(0)}, {q(0), q(0), q(0)}, m);
  EXPECT_EQ(b2.first, q(0));
  EXPECT_EQ(b2.second, q(1, 4));

  auto b3 = rho_bounds({q(0), q(1)}, {q(0), q(0)}, m);
  EXPECT_EQ(b3.first, q(1, 2));
  EXPECT_EQ(b3.second, q(1));

  EXPECT_THROW(rho_bounds({}, {}, m), std::invalid_argument);
  EXPECT_THROW(rho_bounds({q(0)}, {q(0), q(1)}, m), std::invalid_argument);
}

eventually_periodic_seq random_seq(std::mt19937_64& rng, int states) {
  std::vector<rational> pre;
  std::vector<rational> cycle;
  auto pre_len = rng() % 4;
  auto cycle_len = 1 + rng() % 4;
  for (std::uint64_t i = 0; i < pre_len; ++i) {
    pre.push_back(q(static_cast<std::int64_t>(rng() % states)));
  }
  for (std::uint64_t i = 0; i < cycle_len; ++i) {
    cycle.push_back(q(static_cast<std::int64_t>(rng() % states)));
  }
  return {std::move(pre), std::move(cycle)};
}

// Independent check: exact values must be bracketed by long partial sums.
TEST(RhoTest, ExactValueBracketedByPartialSums) {
  auto m = ground_metric::discrete_on(3);
  std::mt19937_64 rng(23);
  for (int round = 0; round < 500; ++round) {
    auto x = random_seq(rng, 3);
    auto y = random_seq(rng, 3);
    rational exact = rho_exact(x, y, m);
    const std::size_t k = 40;
    auto bounds = rho_bounds(x.prefix(k), y.prefix(k), m);
    EXPECT_LE(bounds.first, exact);
    EXPECT_LE(exact, bounds.second);
  }
}

TEST(RhoTest, MetricAxiomsOnRandomSequences) {
  auto m = ground_metric::discrete_on(3);
  std::mt19937_64 rng(29);
  for (int round = 0; round < 300; ++round) {
    auto x = random_seq(rng, 3);
    auto y = random_seq(rng, 3);
    auto z = random_seq(rng, 3);
    rational dxy = rho_exact(x, y, m);
    EXPECT_GE(dxy, q(0));
    EXPECT_EQ(dxy, rho_exact(y, x, m));
    EXPECT_EQ(dxy.is_zero(), x == y);
    EXPECT_LE(dxy, rho_exact(x, z, m) + rho_exact(z, y, m));
    EXPECT_LE(dxy, q(2));
  }
}

TEST(HausdorffStateSetTest, DiscreteSets) {
  std::set<int> a{0};
  std::set<int> b{1};
  std::set<int> c{0};
  EXPECT_EQ(setdyn::hausdorff(a, b), q(1));
  EXPECT_EQ(setdyn::hausdorff(a, c), q(0));
  EXPECT_THROW(setdyn::hausdorff(std::set<int>{}, a), std::domain_error);
}

}  // namespace
