// Copyright 2026 The negotiation_sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>

#include <gtest/gtest.h>

#include "negotiation/core/errors.hpp"
#include "negotiation/hlc/hlc.hpp"

#include "hlc_properties.hpp"

namespace negotiation::hlc {
namespace {

const GoalSet kGoals = GoalSet::standard();
const HlcConfig kCfg;
const action::ForceSampler kSampler;

PlanarPose midway() { return {0.0, 0.2, 0.0}; }

HlcInputs inputs(double t, intent::IntentLabel intent, double stretch, double v_goal = 0.0,
                 PlanarPose pose = midway())
{
  HlcInputs in;
  in.t = t;
  in.pose = pose;
  in.intent = intent;
  in.stretch = stretch;
  in.v_goal = v_goal;
  return in;
}

bool in_ahg(const HlcState& s) { return hlc_properties::in_ahg(s); }

TEST(HlcProperties, Hard)
{
  const auto n = hlc_properties::check(Machine::Hard, 1);
  EXPECT_EQ(n.violations, 0) << n.first_violation;
  EXPECT_EQ(n.ticks, 100000);
  EXPECT_GT(n.aborts_expected, 100);
  EXPECT_EQ(n.ahg_entries, 0);
  EXPECT_GT(n.terminal_ticks, 0);
}

TEST(HlcProperties, Soft)
{
  const auto n = hlc_properties::check(Machine::Soft, 2);
  EXPECT_EQ(n.violations, 0) << n.first_violation;
  EXPECT_GT(n.aborts_expected, 100);
  EXPECT_GT(n.ahg_entries, 20);
}

TEST(HlcProperties, Kcg)
{
  const auto n = hlc_properties::check(Machine::Kcg, 3);
  EXPECT_EQ(n.violations, 0) << n.first_violation;
  EXPECT_GT(n.aborts_expected, 100);
}

TEST(HlcProperties, Follower)
{
  const auto n = hlc_properties::check(Machine::Follower, 4);
  EXPECT_EQ(n.violations, 0) << n.first_violation;
}

TEST(HlcProperties, AbortFromEveryNonTerminalPhase)
{
  // Drive a Soft machine into each reachable phase, then apply a huge stretch.
  std::vector<HlcState> seeds;
  HlcState a = make_soft(0, kSampler, 5);
  seeds.push_back(a);
  auto d = soft_step(a, inputs(0.02, GoalIndex{1}, 5.0), kGoals, kCfg, kSampler).state;
  ASSERT_EQ(d.phase, Phase::Disagreement);
  seeds.push_back(d);
  HlcState ahg = d;
  for (int k = 0; k < 20 && !in_ahg(ahg); ++k) {
    ahg = soft_step(ahg, inputs(0.04 + 0.02 * k, GoalIndex{1}, 25.0), kGoals, kCfg, kSampler).state;
  }
  ASSERT_TRUE(in_ahg(ahg));
  seeds.push_back(ahg);
  auto ahg_d = soft_step(ahg, inputs(1.0, GoalIndex{2}, 5.0), kGoals, kCfg, kSampler).state;
  ASSERT_EQ(ahg_d.phase, Phase::AhgDisagreement);
  seeds.push_back(ahg_d);
  for (const auto& s : seeds) {
    const auto r = soft_step(s, inputs(2.0, GoalIndex{1}, 30.01), kGoals, kCfg, kSampler);
    EXPECT_EQ(r.state.phase, Phase::Abort) << to_string(s.phase);
    EXPECT_TRUE(r.output.aborting);
  }
}

TEST(HardMachine, StartsInAgreementWithSampledMagnitude)
{
  const auto s = make_hard(1, kSampler, 9);
  EXPECT_EQ(s.phase, Phase::Agreement);
  EXPECT_EQ(s.active_goal, 1u);
  EXPECT_GE(s.f_mag, kSampler.limits.f_min);
  EXPECT_LE(s.f_mag, kSampler.limits.f_max);
  EXPECT_EQ(s.robot_goal, 1u);
}

TEST(HardMachine, EscalatesByVelocityDeficit)
{
  auto s = make_hard(0, kSampler, 1);
  s.f_mag = 8.0;
  // Object moving toward g_R at half the desired speed: half the maximum rate.
  auto r = hard_step(s, inputs(0.02, GoalIndex{2}, 10.0, 0.2), kGoals, kCfg, kSampler);
  EXPECT_EQ(r.state.phase, Phase::Disagreement);
  EXPECT_NEAR(r.state.f_mag, 8.0 + 6.0 * 0.5 * 0.02, 1e-12);
  // Moving away from g_R: full rate.
  r = hard_step(r.state, inputs(0.04, GoalIndex{2}, 10.0, -0.3), kGoals, kCfg, kSampler);
  EXPECT_NEAR(r.state.f_mag, 8.0 + 0.06 + 0.12, 1e-12);
  // At or above the desired speed: no escalation.
  r = hard_step(r.state, inputs(0.06, GoalIndex{2}, 10.0, 0.5), kGoals, kCfg, kSampler);
  EXPECT_NEAR(r.state.f_mag, 8.18, 1e-12);
}

TEST(HardMachine, EscalationSaturatesAtFmax)
{
  auto s = make_hard(0, kSampler, 1);
  for (int k = 0; k < 500; ++k) {
    s = hard_step(s, inputs(0.02 * k, GoalIndex{1}, 10.0, 0.0), kGoals, kCfg, kSampler).state;
  }
  EXPECT_DOUBLE_EQ(s.f_mag, kSampler.limits.f_max);
  EXPECT_EQ(s.phase, Phase::Disagreement);
}

TEST(HardMachine, AgreementDeescalatesToFmin)
{
  auto s = make_hard(0, kSampler, 1);
  s.f_mag = 10.0;
  auto r = hard_step(s, inputs(0.02, std::nullopt, 2.0), kGoals, kCfg, kSampler);
  EXPECT_EQ(r.state.phase, Phase::Agreement);
  EXPECT_NEAR(r.state.f_mag, 10.0 - 4.0 * 0.02, 1e-12);
  for (int k = 0; k < 500; ++k) {
    r = hard_step(r.state, inputs(0.04 + 0.02 * k, std::nullopt, 2.0), kGoals, kCfg, kSampler);
  }
  EXPECT_DOUBLE_EQ(r.state.f_mag, kSampler.limits.f_min);
}

TEST(HardMachine, MatchingIntentHandsOverToKcg)
{
  auto s = make_hard(2, kSampler, 1);
  const int settle = kCfg.ticks(kCfg.kcg_settle);
  for (int k = 0; k < settle - 1; ++k) {
    s = hard_step(s, inputs(0.02 * k, GoalIndex{2}, 2.0), kGoals, kCfg, kSampler).state;
    EXPECT_EQ(s.machine, Machine::Hard);
  }
  s = hard_step(s, inputs(1.0, GoalIndex{2}, 2.0), kGoals, kCfg, kSampler).state;
  EXPECT_EQ(s.machine, Machine::Kcg);
  EXPECT_EQ(s.phase, Phase::Agreement);
  EXPECT_EQ(s.active_goal, 2u);
}

TEST(HardMachine, ArrivalTerminates)
{
  auto s = make_hard(0, kSampler, 1);
  auto r = hard_step(s, inputs(0.02, std::nullopt, 2.0, 0.0, kGoals.sites[0]), kGoals, kCfg, kSampler);
  EXPECT_EQ(r.state.phase, Phase::NominalTermination);
  EXPECT_EQ(r.output.terminated, Termination::Nominal);
  EXPECT_EQ(r.state.terminal_goal, 0u);

  r = hard_step(s, inputs(0.02, std::nullopt, 2.0, 0.0, kGoals.sites[2]), kGoals, kCfg, kSampler);
  EXPECT_EQ(r.state.phase, Phase::ForcedTermination);
  EXPECT_EQ(r.output.terminated, Termination::Forced);
  EXPECT_EQ(r.state.terminal_goal, 2u);
}

TEST(HardMachine, AbortRampsLinearlyToZero)
{
  auto s = make_hard(0, kSampler, 1);
  s.f_mag = 10.0;
  auto r = hard_step(s, inputs(0.0, GoalIndex{1}, 35.0), kGoals, kCfg, kSampler);
  EXPECT_EQ(r.state.phase, Phase::Abort);
  const int ramp = kCfg.ticks(kCfg.abort_ramp);
  for (int k = 1; k < ramp; ++k) {
    r = hard_step(r.state, inputs(0.02 * k, GoalIndex{1}, 5.0), kGoals, kCfg, kSampler);
    EXPECT_NEAR(r.state.f_mag, 10.0 * (1.0 - static_cast<double>(k) / ramp), 1e-12);
    EXPECT_FALSE(r.output.terminated.has_value());
  }
  r = hard_step(r.state, inputs(1.0, GoalIndex{1}, 5.0), kGoals, kCfg, kSampler);
  EXPECT_EQ(r.state.f_mag, 0.0);
  EXPECT_EQ(r.output.terminated, Termination::Aborted);
}

TEST(HardMachine, AbortAtExactlyThresholdDoesNotFire)
{
  auto s = make_hard(0, kSampler, 1);
  const auto r = hard_step(s, inputs(0.0, GoalIndex{1}, kCfg.f_abort), kGoals, kCfg, kSampler);
  EXPECT_NE(r.state.phase, Phase::Abort);
}

TEST(SoftMachine, AhgNeedsSustainedStretch)
{
  auto s = make_soft(0, kSampler, 1);
  const int hold = kCfg.ticks(kCfg.ahg_trigger_hold);
  for (int k = 0; k < hold - 1; ++k) {
    s = soft_step(s, inputs(0.02 * k, GoalIndex{1}, 25.0), kGoals, kCfg, kSampler).state;
    EXPECT_EQ(s.phase, Phase::Disagreement);
  }
  // One tick of relief restarts the count.
  s = soft_step(s, inputs(0.5, GoalIndex{1}, 10.0), kGoals, kCfg, kSampler).state;
  EXPECT_EQ(s.stretch_ticks, 0);
  for (int k = 0; k < hold - 1; ++k) {
    s = soft_step(s, inputs(0.6 + 0.02 * k, GoalIndex{1}, 25.0), kGoals, kCfg, kSampler).state;
  }
  EXPECT_EQ(s.phase, Phase::Disagreement);
  s = soft_step(s, inputs(2.0, GoalIndex{1}, 25.0), kGoals, kCfg, kSampler).state;
  EXPECT_TRUE(in_ahg(s));
  EXPECT_EQ(s.active_goal, 1u);
  EXPECT_EQ(s.robot_goal, 0u);
}

TEST(SoftMachine, AhgAgreementHandsOverToKcg)
{
  auto s = make_soft(0, kSampler, 1);
  for (int k = 0; k < 20 && !in_ahg(s); ++k) {
    s = soft_step(s, inputs(0.02 * k, GoalIndex{2}, 25.0), kGoals, kCfg, kSampler).state;
  }
  ASSERT_TRUE(in_ahg(s));
  s = soft_step(s, inputs(1.0, GoalIndex{2}, 5.0), kGoals, kCfg, kSampler).state;
  EXPECT_EQ(s.machine, Machine::Kcg);
  EXPECT_EQ(s.active_goal, 2u);
}

TEST(SoftMachine, AhgTimeoutFallsBackToFollower)
{
  auto s = make_soft(0, kSampler, 1);
  for (int k = 0; k < 20 && !in_ahg(s); ++k) {
    s = soft_step(s, inputs(0.02 * k, GoalIndex{2}, 25.0), kGoals, kCfg, kSampler).state;
  }
  ASSERT_TRUE(in_ahg(s));
  StepResult r{s, {}};
  int ticks = 0;
  while (r.state.machine == Machine::Soft && ticks < 1000) {
    r = soft_step(r.state, inputs(1.0 + 0.02 * ticks, GoalIndex{1}, 10.0), kGoals, kCfg, kSampler);
    ++ticks;
  }
  EXPECT_EQ(r.state.machine, Machine::Follower);
  EXPECT_EQ(r.state.phase, Phase::Perceiving);
  EXPECT_TRUE(r.output.reset_accumulator);
  EXPECT_EQ(ticks, kCfg.ticks(kCfg.ahg_timeout) + 1);
}

TEST(FollowerMachine, CommitsToPerceivedGoal)
{
  auto s = make_follower(1);
  HlcInputs in = inputs(0.02, GoalIndex{1}, 3.0);
  auto r = follower_step(s, in, kGoals, kSampler);
  EXPECT_EQ(r.state.phase, Phase::Perceiving);
  EXPECT_FALSE(r.output.goal_direction_target.has_value());
  in.committed = 1;
  r = follower_step(r.state, in, kGoals, kSampler);
  EXPECT_EQ(r.state.machine, Machine::Kcg);
  EXPECT_EQ(r.output.goal_direction_target, 1u);
  EXPECT_GE(r.output.magnitude, kSampler.limits.f_min);
}

TEST(FollowerMachine, DoesNotAbortWithoutPushing)
{
  auto s = make_follower(1);
  const auto r = follower_step(s, inputs(0.02, GoalIndex{1}, 40.0), kGoals, kSampler);
  EXPECT_EQ(r.state.phase, Phase::Perceiving);
}

TEST(KcgMachine, HoldsMagnitudeUntilArrival)
{
  auto s = make_kcg(1, kSampler, 4);
  const double m = s.f_mag;
  for (int k = 0; k < 100; ++k) {
    s = kcg_step(s, inputs(0.02 * k, GoalIndex{0}, 10.0), kGoals, kCfg).state;
  }
  EXPECT_EQ(s.f_mag, m);
  EXPECT_EQ(s.phase, Phase::Agreement);
  const auto r = kcg_step(s, inputs(3.0, std::nullopt, 1.0, 0.0, kGoals.sites[1]), kGoals, kCfg);
  EXPECT_EQ(r.output.terminated, Termination::Nominal);
}

TEST(HlcConfig, Validation)
{
  HlcConfig c;
  EXPECT_NO_THROW(c.validate());
  c.f_conflict_threshold = 35.0;
  EXPECT_THROW(c.validate(), ConfigError);
  c = {};
  c.deescalation_rate = 0.0;
  EXPECT_THROW(c.validate(), ConfigError);
}

TEST(HlcStrings, RoundTrip)
{
  for (auto p : {Phase::Perceiving, Phase::Agreement, Phase::Disagreement, Phase::AhgAgreement,
                 Phase::AhgDisagreement, Phase::Abort, Phase::NominalTermination, Phase::ForcedTermination}) {
    EXPECT_EQ(phase_from_string(to_string(p)), p);
  }
  for (auto m : {Machine::Kcg, Machine::Follower, Machine::Hard, Machine::Soft}) {
    EXPECT_EQ(machine_from_string(to_string(m)), m);
  }
}

}  // namespace
}  // namespace negotiation::hlc
