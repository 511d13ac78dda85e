#include <setdyn/builtin.hpp>
#include <setdyn/metric.hpp>
#include <setdyn/pl_checks.hpp>
#include <setdyn/truncated.hpp>

#include <gtest/gtest.h>

#include <stdexcept>
#include <vector>

namespace {

using setdyn::dead_end_error;
using setdyn::eventually_periodic_seq;
using setdyn::ground_metric;
using setdyn::interval_union;
using setdyn::limit_system;
using setdyn::pl_multimap;
using setdyn::probe_options;
using setdyn::rational;
using setdyn::verdict;

rational q(std::int64_t n, std::int64_t d = 1) { return {setdyn::bigint(n), setdyn::bigint(d)}; }

rational parse_q(const std::string& s) {
  const auto slash = s.find('/');
  if (slash == std::string::npos) return {setdyn::bigint(s), setdyn::bigint(1)};
  return {setdyn::bigint(s.substr(0, slash)), setdyn::bigint(s.substr(slash + 1))};
}

std::vector<rational> tup(std::initializer_list<rational> values) { return values; }

interval_union pts(std::initializer_list<rational> values) {
  interval_union u;
  for (const auto& v : values) u = u.unite(interval_union::point(v));
  return u;
}

TEST(LimitSystemTest, LinksFollowTheChosenDirection) {
  const auto fwd = limit_system::of(setdyn::builtin::tent_zero_map());
  EXPECT_TRUE(fwd.links(q(1), q(1, 2)));    // 1 in F(1/2)
  EXPECT_FALSE(fwd.links(q(1, 2), q(1, 2)));
  const auto inv = limit_system::of_inverse(setdyn::builtin::tent_zero_map());
  EXPECT_TRUE(inv.links(q(1, 2), q(1)));    // 1 in F(1/2), read forward
  EXPECT_TRUE(inv.links(q(1, 2), q(0)));
  EXPECT_FALSE(inv.links(q(1, 2), q(1, 2)));
}

TEST(LimitSystemTest, InverseDirectionMatchesMaterializedInverse) {
  const auto F = setdyn::builtin::tent_zero_map();
  const auto a = limit_system::of_inverse(F);
  const auto b = limit_system::of(F.invert());
  for (int num = 0; num <= 16; ++num) {
    const rational x = q(num, 16);
    EXPECT_EQ(a.continuation_set(x), b.continuation_set(x)) << x.str();
  }
  EXPECT_EQ(a.loop_points(), b.loop_points());
}

TEST(LimitSystemTest, LoopPointsAreThePeriodOneDiagonal) {
  const auto F = setdyn::builtin::tent_zero_map();
  const auto sys = limit_system::of(F);
  EXPECT_EQ(sys.loop_points(), pts({q(0), q(2, 3)}));
  EXPECT_EQ(sys.loop_points(), setdyn::pl_periodic_points_bounded(F, 1).all);
  EXPECT_EQ(limit_system::of(setdyn::builtin::full_square_map()).loop_points(),
            interval_union::unit());
}

TEST(ValidateTupleTest, ChecksConsecutiveFibers) {
  const auto sys = limit_system::of(setdyn::builtin::tent_zero_map());

  const verdict ok = validate_tuple(sys, tup({q(1), q(1, 2)}));
  EXPECT_TRUE(ok.is_true());

  const verdict bad = validate_tuple(sys, tup({q(1, 2), q(1, 2)}));
  EXPECT_TRUE(bad.is_false());
  EXPECT_EQ(bad.certificate()["index"], 0);

  EXPECT_TRUE(validate_tuple(sys, tup({q(7, 13)})).is_true());

  EXPECT_THROW((void)validate_tuple(sys, tup({q(3, 2)})), std::domain_error);
  EXPECT_THROW((void)validate_tuple(sys, {}), std::invalid_argument);
}

TEST(ValidateTupleTest, AcceptedTuplesArePrefixClosed) {
  const std::vector<limit_system> systems = {
      limit_system::of(setdyn::builtin::tent_zero_map()),
      limit_system::of_inverse(setdyn::builtin::tent_zero_map()),
      limit_system::of(setdyn::builtin::full_square_map()),
      limit_system::of(setdyn::builtin::identity_mix_map()),
  };
  for (const auto& sys : systems) {
    // Grow a valid tuple by always taking the largest continuation.
    std::vector<rational> t{q(1, 2)};
    for (int step = 0; step < 6; ++step) {
      const interval_union c = sys.continuation_set(t.back());
      ASSERT_FALSE(c.is_empty());
      t.push_back(c.sup());
    }
    ASSERT_TRUE(validate_tuple(sys, t).is_true());
    for (std::size_t len = 1; len <= t.size(); ++len) {
      const std::vector<rational> prefix(t.begin(), t.begin() + static_cast<long>(len));
      EXPECT_TRUE(validate_tuple(sys, prefix).is_true());
    }
  }
}

TEST(ContinuationsTest, MatchesInverseFibers) {
  const auto F = setdyn::builtin::tent_zero_map();
  const auto sys = limit_system::of(F);

  EXPECT_EQ(continuations(sys, tup({q(1), q(1, 2)})), pts({q(1, 4), q(3, 4)}));
  EXPECT_EQ(continuations(sys, tup({q(0)})), interval_union::unit());
  EXPECT_EQ(continuations(limit_system::of(setdyn::builtin::full_square_map()),
                          tup({q(2, 7)})),
            interval_union::unit());

  // Two computation paths for the same set.
  const auto Finv = F.invert();
  for (int num = 0; num <= 12; ++num) {
    const rational x = q(num, 12);
    EXPECT_EQ(continuations(sys, tup({x})), Finv.evaluate(x)) << x.str();
  }
}

TEST(ContinuationsTest, RejectsBrokenTuplesAndDeadEnds) {
  const auto sys = limit_system::of(setdyn::builtin::tent_zero_map());
  EXPECT_THROW((void)continuations(sys, tup({q(1, 2), q(1, 2)})), std::invalid_argument);

  // x/2 and x/3 branches only reach [0, 1/2]: above that no preimage exists.
  const auto partial = limit_system::of(setdyn::builtin::half_third_map());
  EXPECT_EQ(continuations(partial, tup({q(1, 4)})), pts({q(1, 2), q(3, 4)}));
  EXPECT_THROW((void)continuations(partial, tup({q(2, 3)})), dead_end_error);
}

TEST(ForcedRayTest, DetectsForcingBranchingAndDeadEnds) {
  // Limit of x -> {2x, 3x}: the step from v is {v/2, v/3}, so 0 loops.
  const auto doubling = limit_system::of_inverse(setdyn::builtin::half_third_map());
  const verdict forever = forced_ray(doubling, q(0), 8);
  ASSERT_TRUE(forever.is_true());
  EXPECT_EQ(forever.certificate()["kind"], "forced-forever");
  EXPECT_EQ(forever.certificate()["cycle_start"], 0);
  EXPECT_EQ(forever.certificate()["cycle"], setdyn::json::array({"0"}));

  // Limit of the inverse of tent-with-zero: the step from 0 is F(0) = {0}.
  const auto inv = limit_system::of_inverse(setdyn::builtin::tent_zero_map());
  const verdict zero_ray = forced_ray(inv, q(0), 8);
  ASSERT_TRUE(zero_ray.is_true());
  EXPECT_EQ(zero_ray.certificate()["kind"], "forced-forever");

  // Forward limit of tent-with-zero: 0 lies in every fiber, so the very
  // first continuation already branches to all of [0,1].
  const auto fwd = limit_system::of(setdyn::builtin::tent_zero_map());
  const verdict branch = forced_ray(fwd, q(0), 8);
  ASSERT_TRUE(branch.is_false());
  EXPECT_EQ(branch.certificate()["kind"], "branching");
  EXPECT_EQ(branch.certificate()["coordinate"], 1);
  EXPECT_EQ(branch.certificate()["continuations"], "[0, 1]");

  const auto partial = limit_system::of(setdyn::builtin::half_third_map());
  const verdict dead = forced_ray(partial, q(2, 3), 8);
  ASSERT_TRUE(dead.is_false());
  EXPECT_EQ(dead.certificate()["kind"], "dead-end");

  // Single-valued steps that do not revisit a value within the horizon.
  const auto tent_inv = limit_system::of_inverse(setdyn::builtin::tent_map());
  const verdict partial_ray = forced_ray(tent_inv, q(1, 7), 2);
  ASSERT_TRUE(partial_ray.is_true());
  EXPECT_EQ(partial_ray.certificate()["kind"], "forced-to-depth");

  EXPECT_THROW((void)forced_ray(fwd, q(0), 0), std::invalid_argument);
}

TEST(ForcedRayTest, AgreesAcrossEquivalentRepresentations) {
  const auto F = setdyn::builtin::tent_zero_map();
  const auto a = forced_ray(limit_system::of_inverse(F), q(0), 10);
  const auto b = forced_ray(limit_system::of(F.invert()), q(0), 10);
  EXPECT_EQ(a.to_json(), b.to_json());
}

TEST(ProbeTest, FindsSeparationWitnessInTheTentZeroInverseLimit) {
  const auto sys = limit_system::of_inverse(setdyn::builtin::tent_zero_map());
  const auto base = eventually_periodic_seq::constant(q(0));
  const verdict v = point_sensitivity_probe(sys, base, q(1, 3), q(1, 4), 12);
  ASSERT_TRUE(v.is_true());
  const auto& cert = v.certificate();
  EXPECT_EQ(cert["status"], "SEPARATION-WITNESS");

  // Replay the witness: it must be a valid limit point inside the rho-ball
  // whose shifted distance clears delta at the reported n.
  std::vector<rational> pre;
  for (const auto& s : cert["witness_preperiod"]) pre.push_back(parse_q(s.get<std::string>()));
  std::vector<rational> cyc;
  for (const auto& s : cert["witness_cycle"]) cyc.push_back(parse_q(s.get<std::string>()));
  const eventually_periodic_seq y(pre, cyc);
  const auto metric = ground_metric::unit_interval();
  for (std::size_t i = 0; i < pre.size() + cyc.size(); ++i)
    EXPECT_TRUE(sys.links(y.at(i), y.at(i + 1))) << i;
  EXPECT_LT(rho_exact(base, y, metric), q(1, 3));
  const int n = cert["n"].get<int>();
  EXPECT_GT(rho_exact(base.shifted(n), y.shifted(n), metric), q(1, 4));
  EXPECT_EQ(rho_exact(base, y, metric).str(), cert["rho_to_base"].get<std::string>());
}

TEST(ProbeTest, WitnessSearchIsRepresentationInvariant) {
  const auto F = setdyn::builtin::tent_zero_map();
  const auto base = eventually_periodic_seq::constant(q(0));
  const auto a = point_sensitivity_probe(limit_system::of_inverse(F), base, q(1, 3), q(1, 4), 12);
  const auto b =
      point_sensitivity_probe(limit_system::of(F.invert()), base, q(1, 3), q(1, 4), 12);
  EXPECT_EQ(a.to_json(), b.to_json());
}

TEST(ProbeTest, ContractingStepRelationRefutesSeparation) {
  const auto sys = limit_system::of_inverse(setdyn::builtin::half_third_map());
  const auto base = eventually_periodic_seq::constant(q(0));
  const verdict v = point_sensitivity_probe(sys, base, q(1, 3), q(1, 4), 12);
  ASSERT_TRUE(v.is_false());
  const auto& cert = v.certificate();
  EXPECT_EQ(cert["status"], "NO-WITNESS-AT-DEPTH");
  EXPECT_EQ(cert["certificate"]["kind"], "contracting-step");
  EXPECT_EQ(cert["certificate"]["lambda"], "1/2");
  EXPECT_EQ(cert["certificate"]["shifted_rho_bound"], "2/9");
}

TEST(ProbeTest, DiameterBoundRefutesOversizedDelta) {
  const auto sys = limit_system::of(setdyn::builtin::tent_zero_map());
  const auto base = eventually_periodic_seq::constant(q(0));
  const verdict v = point_sensitivity_probe(sys, base, q(1, 100), q(2), 4);
  ASSERT_TRUE(v.is_false());
  EXPECT_EQ(v.certificate()["status"], "NO-WITNESS-AT-DEPTH");
  EXPECT_EQ(v.certificate()["certificate"]["kind"], "diameter-bound");
}

TEST(ProbeTest, PinnedHeadReproducesForcedRayMerging) {
  probe_options pin;
  pin.force_head = true;
  const auto base = eventually_periodic_seq::constant(q(0));

  // Under the pinned-head convention the ball around the zero ray of the
  // tent-with-zero inverse limit collapses onto the ray itself.
  const auto inv = limit_system::of_inverse(setdyn::builtin::tent_zero_map());
  const verdict merged = point_sensitivity_probe(inv, base, q(1, 3), q(1, 4), 12, pin);
  ASSERT_TRUE(merged.is_false());
  EXPECT_EQ(merged.certificate()["certificate"]["kind"], "forced-ray-merging");

  // Same convention on the {2x,3x} limit, with delta small enough that the
  // contraction certificate stays out of the way.
  const auto doubling = limit_system::of_inverse(setdyn::builtin::half_third_map());
  ASSERT_TRUE(forced_ray(doubling, q(0), 12).is_true());
  const verdict v = point_sensitivity_probe(doubling, base, q(1, 4), q(1, 100), 12, pin);
  ASSERT_TRUE(v.is_false());
  EXPECT_EQ(v.certificate()["certificate"]["kind"], "forced-ray-merging");
}

TEST(ProbeTest, ExhaustedSearchStaysUndecided) {
  const auto sys = limit_system::of_inverse(setdyn::builtin::tent_zero_map());
  const auto base = eventually_periodic_seq::constant(q(0));
  const verdict v = point_sensitivity_probe(sys, base, q(1, 3), q(3, 2), 6);
  ASSERT_TRUE(v.is_undecided());
  EXPECT_EQ(v.certificate()["status"], "NO-WITNESS-AT-DEPTH");
  EXPECT_EQ(v.certificate()["exhausted"], "search-space");
}

TEST(ProbeTest, RejectsBadArguments) {
  const auto sys = limit_system::of_inverse(setdyn::builtin::tent_zero_map());
  const auto base = eventually_periodic_seq::constant(q(0));
  EXPECT_THROW((void)point_sensitivity_probe(sys, base, q(0), q(1, 4), 4),
               std::invalid_argument);
  EXPECT_THROW((void)point_sensitivity_probe(sys, base, q(1, 3), q(-1), 4),
               std::invalid_argument);
  EXPECT_THROW((void)point_sensitivity_probe(sys, base, q(1, 3), q(1, 4), 0),
               std::invalid_argument);
  // 1/3 never returns to itself under the step relation of this limit.
  const auto bad = eventually_periodic_seq::constant(q(1, 3));
  EXPECT_THROW((void)point_sensitivity_probe(sys, bad, q(1, 3), q(1, 4), 4),
               std::invalid_argument);
}

TEST(ProbeTest, RhoBoundsBracketProbePairs) {
  // The witness family from the separation test: a dyadic ladder with a
  // constant tail against the zero ray.
  std::vector<rational> pre;
  for (int i = 12; i >= 1; --i) pre.push_back(setdyn::pow2(-i));
  const eventually_periodic_seq y(pre, {q(0)});
  const auto base = eventually_periodic_seq::constant(q(0));
  const auto metric = ground_metric::unit_interval();
  const rational exact = rho_exact(base, y, metric);
  for (std::size_t k = 1; k <= 16; ++k) {
    const auto [lo, hi] = setdyn::rho_bounds(base.prefix(k), y.prefix(k), metric);
    EXPECT_LE(lo, exact) << k;
    EXPECT_LE(exact, hi) << k;
    EXPECT_EQ(hi - lo, setdyn::pow2(1 - static_cast<int>(k))) << k;
  }
}

}  // namespace
