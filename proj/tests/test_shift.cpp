#include <setdyn/shift.hpp>

#include <gtest/gtest.h>

#include <cstdint>
#include <vector>

namespace {

using setdyn::cylinder_word;
using setdyn::eventually_periodic_seq;
using setdyn::rational;
using setdyn::relation_system;
using setdyn::state;
using setdyn::vertex_shift;

relation_system zero_reset() { return relation_system::of({{0, 1}, {0}}); }
relation_system full_two() { return relation_system::of({{0, 1}, {0, 1}}); }
relation_system loop_feeder() { return relation_system({"a", "b"}, {{0, 1}, {1}}); }
relation_system chain() { return relation_system({"a", "b"}, {{1}, {1}}); }

std::vector<relation_system> exhaustive(int n) {
  const std::uint64_t top = (std::uint64_t{1} << n) - 1;
  std::vector<std::uint64_t> choice(static_cast<std::size_t>(n), 1);
  std::vector<relation_system> out;
  while (true) {
    std::vector<std::vector<state>> fibers(static_cast<std::size_t>(n));
    for (int s = 0; s < n; ++s)
      for (int t = 0; t < n; ++t)
        if ((choice[static_cast<std::size_t>(s)] >> t) & 1)
          fibers[static_cast<std::size_t>(s)].push_back(t);
    out.push_back(relation_system::of(std::move(fibers)));
    int pos = n - 1;
    while (pos >= 0 && choice[static_cast<std::size_t>(pos)] == top) {
      choice[static_cast<std::size_t>(pos)] = 1;
      --pos;
    }
    if (pos < 0) break;
    ++choice[static_cast<std::size_t>(pos)];
  }
  return out;
}

TEST(VertexShiftTest, CoreAndSteps) {
  const vertex_shift S(zero_reset());
  EXPECT_EQ(S.core(), (std::vector<state>{0, 1}));
  EXPECT_TRUE(S.step_allowed(0, 0));
  EXPECT_TRUE(S.step_allowed(0, 1));
  EXPECT_TRUE(S.step_allowed(1, 0));
  EXPECT_FALSE(S.step_allowed(1, 1));
  EXPECT_EQ(S.continuations(0), (std::vector<state>{0, 1}));
  EXPECT_EQ(S.continuations(1), (std::vector<state>{0}));
}

TEST(VertexShiftTest, ChainPrunesToSink) {
  const vertex_shift S(chain());
  EXPECT_EQ(S.core(), (std::vector<state>{1}));
  EXPECT_FALSE(S.in_core(0));
  EXPECT_THROW((void)S.continuations(0), std::domain_error);
  EXPECT_EQ(S.continuations(1), (std::vector<state>{1}));
}

TEST(VertexShiftTest, FullSystemKeepsEverything) {
  const vertex_shift S(full_two());
  EXPECT_EQ(S.core(), (std::vector<state>{0, 1}));
  for (state a = 0; a < 2; ++a)
    for (state b = 0; b < 2; ++b) EXPECT_TRUE(S.step_allowed(a, b));
}

TEST(VertexShiftTest, StepSystemKeepsLabels) {
  const vertex_shift S(chain());
  const auto step = S.step_system();
  EXPECT_EQ(step.size(), 1);
  EXPECT_EQ(step.label(0), "b");
  EXPECT_EQ(step.fiber(0), (std::vector<state>{0}));
}

TEST(CylinderWordTest, ValidationMatchesStepRelation) {
  const vertex_shift S(zero_reset());
  EXPECT_NO_THROW(cylinder_word(S, {0, 1}));
  EXPECT_NO_THROW(cylinder_word(S, {1, 0, 1, 0}));
  EXPECT_THROW(cylinder_word(S, {1, 1}), std::invalid_argument);
  EXPECT_THROW(cylinder_word(S, {}), std::invalid_argument);

  const vertex_shift C(chain());
  EXPECT_NO_THROW(cylinder_word(C, {1, 1}));
  EXPECT_THROW(cylinder_word(C, {0}), std::invalid_argument);
  EXPECT_THROW(cylinder_word(C, {1, 0}), std::invalid_argument);
}

TEST(CylinderWordTest, EnumerationOrderAndContent) {
  const vertex_shift S(zero_reset());
  const auto words = setdyn::enumerate_words(S, 2);
  ASSERT_EQ(words.size(), 5u);
  EXPECT_EQ(words[0].entries(), (std::vector<state>{0}));
  EXPECT_EQ(words[1].entries(), (std::vector<state>{1}));
  EXPECT_EQ(words[2].entries(), (std::vector<state>{0, 0}));
  EXPECT_EQ(words[3].entries(), (std::vector<state>{0, 1}));
  EXPECT_EQ(words[4].entries(), (std::vector<state>{1, 0}));

  EXPECT_EQ(setdyn::enumerate_words(vertex_shift(full_two()), 2).size(), 6u);
  EXPECT_THROW(setdyn::enumerate_words(S, 0), std::invalid_argument);
}

TEST(CylinderWordTest, EnumerationIsPrefixAndShiftClosed) {
  for (const auto& F : exhaustive(2)) {
    const vertex_shift S(F);
    const auto words = setdyn::enumerate_words(S, 4);
    for (const auto& w : words) {
      if (w.size() < 2) continue;
      auto prefix = w.entries();
      prefix.pop_back();
      EXPECT_NO_THROW(cylinder_word(S, prefix));
      std::vector<state> tail(w.entries().begin() + 1, w.entries().end());
      EXPECT_NO_THROW(cylinder_word(S, tail));
    }
  }
}

TEST(ShiftPeriodicPointsTest, SmallPeriods) {
  const auto points = setdyn::shift_periodic_points(vertex_shift(zero_reset()), 2);
  ASSERT_EQ(points.size(), 3u);
  EXPECT_EQ(points[0], eventually_periodic_seq::constant(rational(0)));
  EXPECT_EQ(points[1], eventually_periodic_seq({}, {rational(0), rational(1)}));
  EXPECT_EQ(points[2], eventually_periodic_seq({}, {rational(1), rational(0)}));

  const auto feeder = setdyn::shift_periodic_points(vertex_shift(loop_feeder()), 2);
  ASSERT_EQ(feeder.size(), 2u);
  EXPECT_EQ(feeder[0], eventually_periodic_seq::constant(rational(0)));
  EXPECT_EQ(feeder[1], eventually_periodic_seq::constant(rational(1)));

  const auto fixed = setdyn::shift_periodic_points(vertex_shift(full_two()), 1);
  ASSERT_EQ(fixed.size(), 2u);
  EXPECT_EQ(fixed[0], eventually_periodic_seq::constant(rational(0)));
  EXPECT_EQ(fixed[1], eventually_periodic_seq::constant(rational(1)));
}

TEST(ShiftCheckTest, PeriodicDensity) {
  EXPECT_TRUE(setdyn::shift_periodic_dense(vertex_shift(full_two())).is_true());
  EXPECT_TRUE(setdyn::shift_periodic_dense(vertex_shift(zero_reset())).is_true());

  const auto v = setdyn::shift_periodic_dense(vertex_shift(loop_feeder()));
  EXPECT_TRUE(v.is_false());
  EXPECT_EQ(v.certificate().at("word"), setdyn::json::array({"b", "a"}));
}

TEST(ShiftCheckTest, Transitivity) {
  EXPECT_TRUE(setdyn::shift_transitive(vertex_shift(full_two())).is_true());
  EXPECT_TRUE(setdyn::shift_transitive(vertex_shift(zero_reset())).is_true());

  const relation_system split({"a", "b"}, {{0}, {1}});
  const auto v = setdyn::shift_transitive(vertex_shift(split));
  EXPECT_TRUE(v.is_false());
  EXPECT_EQ(v.certificate().at("from_word"), setdyn::json::array({"a"}));
  EXPECT_EQ(v.certificate().at("to_word"), setdyn::json::array({"b"}));
}

TEST(ShiftCheckTest, Sensitivity) {
  const auto yes = setdyn::shift_sensitive(vertex_shift(full_two()));
  EXPECT_TRUE(yes.is_true());
  EXPECT_EQ(yes.certificate().at("delta"), "1/2");

  EXPECT_TRUE(setdyn::shift_sensitive(vertex_shift(relation_system::of({{0}}))).is_false());
  EXPECT_TRUE(setdyn::shift_sensitive(vertex_shift(zero_reset())).is_true());

  const auto two_points = setdyn::shift_sensitive(vertex_shift(relation_system::of({{1}, {0}})));
  EXPECT_TRUE(two_points.is_false());
  EXPECT_EQ(two_points.certificate().at("kind"), "deterministic-ray");
}

TEST(ShiftCheckTest, Devaney) {
  EXPECT_TRUE(setdyn::shift_devaney(vertex_shift(full_two())).is_true());
  EXPECT_TRUE(setdyn::shift_devaney(vertex_shift(loop_feeder())).is_false());
  EXPECT_TRUE(setdyn::shift_devaney(vertex_shift(relation_system::of({{1}, {0}}))).is_false());
}

TEST(ShiftOracleTest, MatchesWorkedExamples) {
  const auto bundle = setdyn::shift_oracle(vertex_shift(zero_reset()), 6, 4);
  EXPECT_TRUE(bundle.transitive.is_true());
  EXPECT_TRUE(bundle.dense.is_true());
  EXPECT_TRUE(bundle.sensitive.is_true());
  EXPECT_TRUE(bundle.agrees_with_graph);

  const auto feeder = setdyn::shift_oracle(vertex_shift(loop_feeder()), 6, 4);
  EXPECT_TRUE(feeder.dense.is_false());
  EXPECT_EQ(feeder.dense.certificate().at("word"), setdyn::json::array({"b", "a"}));
  EXPECT_TRUE(feeder.agrees_with_graph);

  const auto full = setdyn::shift_oracle(vertex_shift(full_two()), 4, 2);
  EXPECT_TRUE(full.transitive.is_true() && full.dense.is_true() && full.sensitive.is_true());
  EXPECT_TRUE(full.agrees_with_graph);

  EXPECT_THROW(setdyn::shift_oracle(vertex_shift(full_two()), 1, 2), std::invalid_argument);
}

TEST(ShiftOracleTest, AgreesWithGraphCriteriaExhaustively) {
  for (const auto& F : exhaustive(2)) {
    const vertex_shift S(F);
    const int L = 2 * (1 << F.size());
    const auto bundle = setdyn::shift_oracle(S, L, 1 << F.size());
    EXPECT_TRUE(bundle.agrees_with_graph) << bundle.disagreements.dump();
  }
}

TEST(Lemma31Test, WordLanguageComparison) {
  EXPECT_TRUE(setdyn::lemma31_check(full_two(), 4, 4).is_true());
  EXPECT_TRUE(setdyn::lemma31_check(relation_system::of({{0}}), 4, 4).is_true());

  const auto v = setdyn::lemma31_check(loop_feeder(), 4, 4);
  EXPECT_TRUE(v.is_false());
  EXPECT_EQ(v.certificate().at("word"), setdyn::json::array({"b", "a"}));
  EXPECT_EQ(v.certificate().at("present_in"), "restricted-limit");
}

}  // namespace
