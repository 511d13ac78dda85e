#include <setdyn/claims.hpp>

#include <gtest/gtest.h>

#include <map>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

using setdyn::claim_status;
using setdyn::exhaustive_systems;
using setdyn::find_claim;
using setdyn::json;
using setdyn::minimize_counterexample;
using setdyn::random_systems;
using setdyn::relation_system;
using setdyn::run_claim;
using setdyn::run_claim_over;

TEST(ExhaustiveSystemsTest, CountsMatchTheClosedForm) {
  EXPECT_EQ(exhaustive_systems(1).size(), 1u);
  EXPECT_EQ(exhaustive_systems(2).size(), 9u);
  EXPECT_EQ(exhaustive_systems(3).size(), 343u);
}

TEST(ExhaustiveSystemsTest, OdometerOrderRunsTheLastFiberFastest) {
  const auto all = exhaustive_systems(2);
  EXPECT_EQ(all.front(), relation_system::of({{0}, {0}}));
  EXPECT_EQ(all[1], relation_system::of({{0}, {1}}));
  EXPECT_EQ(all[2], relation_system::of({{0}, {0, 1}}));
  EXPECT_EQ(all[3], relation_system::of({{1}, {0}}));
  EXPECT_EQ(all.back(), relation_system::of({{0, 1}, {0, 1}}));
}

TEST(ExhaustiveSystemsTest, RejectsOutOfRangeSizes) {
  EXPECT_THROW((void)exhaustive_systems(0), std::invalid_argument);
  EXPECT_THROW((void)exhaustive_systems(5), std::invalid_argument);
}

TEST(RandomSystemsTest, SameSeedReproducesTheSameList) {
  const auto a = random_systems(4, 50, 0);
  const auto b = random_systems(4, 50, 0);
  ASSERT_EQ(a.size(), 50u);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i], b[i]);
}

TEST(RandomSystemsTest, DifferentSeedsDiverge) {
  const auto a = random_systems(4, 50, 0);
  const auto b = random_systems(4, 50, 1);
  bool differs = false;
  for (std::size_t i = 0; i < a.size() && !differs; ++i) differs = !(a[i] == b[i]);
  EXPECT_TRUE(differs);
}

TEST(RunClaimTest, UnknownIdIsAnArgumentError) {
  EXPECT_THROW((void)run_claim("T9.9"), std::invalid_argument);
}

TEST(RunClaimTest, LanguageIdentityFailsAndMinimizesToTwoStates) {
  const auto r = run_claim("L3.1");
  ASSERT_EQ(r.status, claim_status::counterexample);
  EXPECT_EQ(r.instances_evaluated, 9u);
  const json& w = r.witnesses[0];
  EXPECT_EQ(w["system"]["map"]["0"], json::array({"0"}));
  EXPECT_EQ(w["system"]["map"]["1"], json::array({"0", "1"}));
  EXPECT_EQ(w["conclusion"]["certificate"]["word"], json::array({"0", "1"}));
  EXPECT_EQ(w["conclusion"]["certificate"]["present_in"], "restricted-limit");
}

TEST(RunClaimTest, DensityPushforwardFailsEvenForSurjectiveMaps) {
  const auto as_stated = run_claim("T3.1-1");
  ASSERT_EQ(as_stated.status, claim_status::counterexample);
  const auto conditioned = run_claim("T3.1-1-SURJ");
  ASSERT_EQ(conditioned.status, claim_status::counterexample);
  EXPECT_EQ(as_stated.witnesses[0]["system"], conditioned.witnesses[0]["system"]);
  EXPECT_EQ(as_stated.witnesses[0]["system"]["map"]["1"], json::array({"0", "1"}));
}

TEST(RunClaimTest, DensityPullbackHoldsOnThreeStates) {
  const auto r = run_claim("T3.1-2");
  EXPECT_EQ(r.status, claim_status::holds_on_family);
  EXPECT_EQ(r.instances_evaluated, 343u);
}

TEST(RunClaimTest, InverseDensityInvarianceHolds) {
  EXPECT_EQ(run_claim("T3.2").status, claim_status::holds_on_family);
}

TEST(RunClaimTest, TransitivityPullbackHolds) {
  EXPECT_EQ(run_claim("T3.3").status, claim_status::holds_on_family);
}

TEST(RunClaimTest, FullFiberKillsStrongSensitivityOnTheWholeFamily) {
  const auto r = run_claim("P4.1");
  EXPECT_EQ(r.status, claim_status::holds_on_family);
  bool vacuous = false;
  for (const auto& n : r.notes) vacuous = vacuous || n == "vacuous on family";
  EXPECT_FALSE(vacuous);
}

TEST(RunClaimTest, PeriodicOrbitHypothesisIsVacuousOnFiniteFamilies) {
  const auto r = run_claim("T5.2");
  EXPECT_EQ(r.status, claim_status::holds_on_family);
  bool vacuous = false;
  for (const auto& n : r.notes) vacuous = vacuous || n == "vacuous on family";
  EXPECT_TRUE(vacuous);
}

TEST(RunClaimTest, TransitiveDensePeriodicFailsAndMinimizesToTheTwoCycle) {
  const auto r = run_claim("T5.4");
  ASSERT_EQ(r.status, claim_status::counterexample);
  const json& w = r.witnesses[0];
  EXPECT_EQ(w["system"]["map"]["0"], json::array({"1"}));
  EXPECT_EQ(w["system"]["map"]["1"], json::array({"0"}));
}

TEST(RunClaimTest, DevaneyPullbackHolds) {
  const auto r = run_claim("T5.5");
  EXPECT_EQ(r.status, claim_status::holds_on_family);
  bool vacuous = false;
  for (const auto& n : r.notes) vacuous = vacuous || n == "vacuous on family";
  EXPECT_FALSE(vacuous);
}

TEST(RunClaimTest, GraphCriteriaAgreeWithTheOracleEverywhere) {
  const auto r = run_claim("X-ORACLE");
  EXPECT_EQ(r.status, claim_status::holds_on_family);
  EXPECT_EQ(r.instances_evaluated, 343u);
}

TEST(RunClaimTest, CoreClaimsHoldOnSeededRandomFamilies) {
  const auto family = random_systems(4, 300, 0);
  for (const char* id : {"T3.1-2", "T3.2", "T3.3", "P4.1"}) {
    const auto r = run_claim_over(find_claim(id), family, "random(4, 300, seed 0)");
    EXPECT_EQ(r.status, claim_status::holds_on_family) << id;
    EXPECT_EQ(r.instances_evaluated, 300u) << id;
  }
}

TEST(MinimizeTest, NonRefutingWitnessIsAnArgumentError) {
  EXPECT_THROW(
      (void)minimize_counterexample(find_claim("T5.4"), setdyn::builtin::two_point_full_system()),
      std::invalid_argument);
}

TEST(MinimizeTest, ThreeStateWitnessShrinksToTwo) {
  const auto witness = relation_system::of({{0}, {0, 1}, {0}});
  const auto minimized = minimize_counterexample(find_claim("L3.1"), witness);
  EXPECT_EQ(minimized, relation_system::of({{0}, {0, 1}}));
}

TEST(MinimizeTest, DeletionMinimalWitnessStaysPut) {
  // Deleting any state or edge of a pure cycle empties a fiber, so the
  // three-cycle is already deletion-minimal even though a smaller refuting
  // system exists elsewhere in the family.
  const auto cycle = relation_system::of({{1}, {2}, {0}});
  EXPECT_EQ(minimize_counterexample(find_claim("T5.4"), cycle), cycle);
}

TEST(ExampleSuiteTest, VerdictLedger) {
  std::map<std::string, claim_status> status;
  for (const auto& r : setdyn::example_suite()) status[r.id] = r.status;
  const auto agrees = claim_status::agrees_with_paper;
  const auto disagrees = claim_status::disagrees_with_paper;
  EXPECT_EQ(status.at("E3.1-transitive"), agrees);
  EXPECT_EQ(status.at("E3.1-limit-transitivity"), disagrees);
  EXPECT_EQ(status.at("E4.2-limit-full-shift"), agrees);
  EXPECT_EQ(status.at("E4.2-limit-sensitive"), agrees);
  EXPECT_EQ(status.at("E4.2-not-strongly-sensitive"), agrees);
  EXPECT_EQ(status.at("E4.3-1"), agrees);
  EXPECT_EQ(status.at("E4.3-2"), agrees);
  EXPECT_EQ(status.at("E4.3-3"), disagrees);
  EXPECT_EQ(status.at("E4.3-4"), agrees);
  EXPECT_EQ(status.at("E4.4-transitive"), agrees);
  EXPECT_EQ(status.at("E4.4-periodic-points"), agrees);
  EXPECT_EQ(status.at("E4.4-not-strongly-sensitive"), agrees);
  EXPECT_EQ(status.at("E4.5-transitive"), agrees);
  EXPECT_EQ(status.at("E4.5-periodic-points"), agrees);
  EXPECT_EQ(status.at("E4.5-not-strongly-sensitive"), agrees);
  EXPECT_EQ(status.at("E5.2-sensitive"), agrees);
  EXPECT_EQ(status.at("E5.2-limit-not-sensitive"), agrees);
  EXPECT_EQ(status.at("E5.3-inverse-fibers"), agrees);
  EXPECT_EQ(status.at("E5.3-limit-sensitive"), agrees);
  EXPECT_EQ(status.at("E5.3-not-sensitive"), agrees);
  EXPECT_EQ(status.at("E5.6-devaney"), agrees);
  EXPECT_EQ(status.at("E5.6-limit-not-devaney"), disagrees);
  EXPECT_EQ(status.size(), 22u);
}

TEST(ExampleSuiteTest, TrappingWitnessSitsAtZero) {
  const auto r = run_claim("E5.3-not-sensitive");
  ASSERT_EQ(r.status, claim_status::agrees_with_paper);
  EXPECT_EQ(r.witnesses[0]["certificate"]["kind"], "trapping-region");
  EXPECT_EQ(r.witnesses[0]["certificate"]["x"], "0");
}

TEST(ExampleSuiteTest, BranchSeparationCertifiesTheIdentityMixLimit) {
  const auto r = run_claim("E5.3-limit-sensitive");
  ASSERT_EQ(r.status, claim_status::agrees_with_paper);
  EXPECT_EQ(r.witnesses[0]["certificate"]["separation"], "1/2");
  EXPECT_EQ(r.witnesses[0]["certificate"]["delta"], "1/4");
}

TEST(ReportTest, KeysAreFixedAndOrdered) {
  const json j = run_claim("T5.4").to_json();
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  EXPECT_EQ(keys, (std::vector<std::string>{"id", "instances_evaluated", "status", "witnesses",
                                            "notes"}));
}

TEST(ReportTest, RepeatedRunsAreByteIdentical) {
  EXPECT_EQ(run_claim("T3.2").to_json().dump(2), run_claim("T3.2").to_json().dump(2));
  EXPECT_EQ(run_claim("L3.1").to_json().dump(2), run_claim("L3.1").to_json().dump(2));
  EXPECT_EQ(run_claim("E3.1-limit-transitivity").to_json().dump(2),
            run_claim("E3.1-limit-transitivity").to_json().dump(2));
}

TEST(ReportTest, CounterexampleWitnessesReplay) {
  const auto r = run_claim("L3.1");
  ASSERT_EQ(r.status, claim_status::counterexample);
  const auto parsed = setdyn::parse_system(r.witnesses[0]["system"]);
  const auto& F = std::get<relation_system>(parsed);
  EXPECT_TRUE(setdyn::refutes(find_claim("L3.1"), F));
}
