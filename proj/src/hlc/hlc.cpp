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

#include "negotiation/hlc/hlc.hpp"

#include <algorithm>
#include <cmath>

#include "negotiation/core/errors.hpp"
#include "negotiation/dynamics/admittance.hpp"

namespace negotiation::hlc {

using action::ForceSampler;
using action::SamplerRole;

std::string_view to_string(Machine m)
{
  switch (m) {
    case Machine::Kcg:
      return "kcg";
    case Machine::Follower:
      return "follower";
    case Machine::Hard:
      return "hard";
    case Machine::Soft:
      return "soft";
  }
  return "follower";
}

std::string_view to_string(Phase p)
{
  switch (p) {
    case Phase::Perceiving:
      return "perceiving";
    case Phase::Agreement:
      return "agreement";
    case Phase::Disagreement:
      return "disagreement";
    case Phase::AhgAgreement:
      return "ahg_agreement";
    case Phase::AhgDisagreement:
      return "ahg_disagreement";
    case Phase::Abort:
      return "abort";
    case Phase::NominalTermination:
      return "nominal_termination";
    case Phase::ForcedTermination:
      return "forced_termination";
  }
  return "perceiving";
}

std::string_view to_string(Termination t)
{
  switch (t) {
    case Termination::Nominal:
      return "nominal";
    case Termination::Forced:
      return "forced";
    case Termination::Aborted:
      return "aborted";
  }
  return "nominal";
}

std::optional<Machine> machine_from_string(std::string_view s)
{
  for (Machine m : {Machine::Kcg, Machine::Follower, Machine::Hard, Machine::Soft}) {
    if (to_string(m) == s) {
      return m;
    }
  }
  return std::nullopt;
}

std::optional<Phase> phase_from_string(std::string_view s)
{
  for (Phase p : {Phase::Perceiving, Phase::Agreement, Phase::Disagreement, Phase::AhgAgreement,
                  Phase::AhgDisagreement, Phase::Abort, Phase::NominalTermination,
                  Phase::ForcedTermination}) {
    if (to_string(p) == s) {
      return p;
    }
  }
  return std::nullopt;
}

std::optional<Termination> termination_from_string(std::string_view s)
{
  for (Termination t : {Termination::Nominal, Termination::Forced, Termination::Aborted}) {
    if (to_string(t) == s) {
      return t;
    }
  }
  return std::nullopt;
}

int HlcConfig::ticks(double seconds) const
{
  return static_cast<int>(std::llround(seconds * tick_hz));
}

void HlcConfig::validate() const
{
  if (!(f_conflict_threshold > 0.0) || !(f_conflict_threshold < f_abort)) {
    throw ConfigError("HLC requires 0 < F^C < f_abort");
  }
  if (!(escalation_rate_max > 0.0) || !(deescalation_rate > 0.0)) {
    throw ConfigError("HLC escalation rates must be positive");
  }
  if (!(ahg_timeout > 0.0) || !(abort_ramp > 0.0) || !(tick_hz > 0.0) || !(desired_speed > 0.0) ||
      !(ahg_trigger_hold > 0.0) || !(kcg_settle > 0.0)) {
    throw ConfigError("HLC timers, rate and desired speed must be positive");
  }
}

bool HlcState::terminal() const
{
  return phase == Phase::NominalTermination || phase == Phase::ForcedTermination ||
         (phase == Phase::Abort && abort_complete);
}

bool HlcState::agreeing() const
{
  return phase == Phase::Agreement || phase == Phase::AhgAgreement;
}

bool HlcState::disagreeing() const
{
  return phase == Phase::Disagreement || phase == Phase::AhgDisagreement;
}

namespace {

HlcState make_goal_machine(Machine machine, GoalIndex goal, const ForceSampler& sampler,
                           SamplerRole role, std::uint64_t seed, double t)
{
  HlcState s;
  s.role = machine;
  s.machine = machine;
  // The robot starts by pushing toward its own goal; with no contrary intent
  // seen yet that counts as agreement.
  s.phase = Phase::Agreement;
  s.robot_goal = goal;
  s.active_goal = goal;
  s.phase_entry_time = t;
  s.t = t;
  s.rng.seed(seed);
  s.f_mag = action::sample_magnitude(sampler, role, s.rng);
  return s;
}

void enter_phase(HlcState& s, Phase p)
{
  if (s.phase != p) {
    s.phase = p;
    s.phase_entry_time = s.t;
  }
}

void terminate(HlcState& s, Phase p, GoalIndex at)
{
  enter_phase(s, p);
  s.terminal_goal = at;
  s.f_mag = 0.0;
}

void hand_over_to_kcg(HlcState& s)
{
  s.machine = Machine::Kcg;
  enter_phase(s, Phase::Agreement);
  s.stretch_ticks = 0;
  s.settle_ticks = 0;
  s.ahg_disagreement_ticks = 0;
}

// Arrival at the active goal ends nominally; arrival anywhere else means the
// partner overpowered the robot and ends forced.
bool check_arrival(HlcState& s, const HlcInputs& in, const GoalSet& goals)
{
  const auto at = dynamics::goal_check(in.pose, goals);
  if (!at) {
    return false;
  }
  const bool nominal = s.active_goal && *s.active_goal == *at;
  terminate(s, nominal ? Phase::NominalTermination : Phase::ForcedTermination, *at);
  return true;
}

void begin_abort(HlcState& s)
{
  s.abort_start_mag = s.f_mag;
  s.abort_ticks = 0;
  s.abort_complete = false;
  enter_phase(s, Phase::Abort);
}

// Linear ramp of the reference magnitude down to zero over abort_ramp.
void advance_abort(HlcState& s, const HlcConfig& cfg)
{
  const int ramp = std::max(1, cfg.ticks(cfg.abort_ramp));
  ++s.abort_ticks;
  if (s.abort_ticks >= ramp) {
    s.f_mag = 0.0;
    s.abort_complete = true;
  } else {
    s.f_mag = s.abort_start_mag * (1.0 - static_cast<double>(s.abort_ticks) / ramp);
  }
}

// Escalation slows as the object already moves toward the robot goal.
void escalate(HlcState& s, const HlcInputs& in, const HlcConfig& cfg, const ForceSampler& sampler)
{
  const double deficit = 1.0 - std::clamp(in.v_goal / cfg.desired_speed, 0.0, 1.0);
  s.f_mag = std::min(sampler.limits.f_max, s.f_mag + cfg.escalation_rate_max * deficit * cfg.dt());
}

void deescalate(HlcState& s, const HlcConfig& cfg, const ForceSampler& sampler)
{
  s.f_mag = std::max(sampler.limits.f_min, s.f_mag - cfg.deescalation_rate * cfg.dt());
}

bool in_conflict(const HlcState& s, const HlcInputs& in)
{
  return in.intent.has_value() && s.active_goal.has_value() && *in.intent != *s.active_goal;
}

// Shared Hard/Soft agreement-disagreement cycle. Returns true when the Soft
// machine should leave the cycle for Attempt-Human-Goal.
bool negotiation_cycle(HlcState& s, const HlcInputs& in, const HlcConfig& cfg,
                       const ForceSampler& sampler, bool soft)
{
  if (in_conflict(s, in)) {
    // Perceived human goal differs from g_R: push harder.
    enter_phase(s, Phase::Disagreement);
    s.settle_ticks = 0;
    if (soft && in.stretch > cfg.f_conflict_threshold) {
      ++s.stretch_ticks;
    } else {
      s.stretch_ticks = 0;
    }
    if (soft && s.stretch_ticks >= cfg.ticks(cfg.ahg_trigger_hold)) {
      return true;
    }
    escalate(s, in, cfg, sampler);
    return false;
  }

  // Matching or idle intent: relax toward F_min.
  enter_phase(s, Phase::Agreement);
  s.stretch_ticks = 0;
  deescalate(s, cfg, sampler);
  if (in.intent && s.active_goal && *in.intent == *s.active_goal) {
    // Goal settled once the partner's intent has matched it long enough.
    if (++s.settle_ticks >= cfg.ticks(cfg.kcg_settle)) {
      hand_over_to_kcg(s);
    }
  }
  return false;
}

// The robot adopts the perceived human goal, preferring the accumulated
// majority over the instantaneous label, with a fresh, KCG-level magnitude.
void enter_ahg(HlcState& s, const HlcInputs& in, const ForceSampler& sampler)
{
  std::optional<GoalIndex> human_goal = in.perceived_goal;
  if (!human_goal || human_goal == s.active_goal) {
    human_goal = in.intent;
  }
  s.active_goal = human_goal;
  s.stretch_ticks = 0;
  s.settle_ticks = 0;
  s.ahg_disagreement_ticks = 0;
  s.f_mag = action::sample_magnitude(sampler, SamplerRole::Kcg, s.rng);
  enter_phase(s, in_conflict(s, in) ? Phase::AhgDisagreement : Phase::AhgAgreement);
}

// Inside AHG: agreement hands over to KCG toward the adopted goal; a
// disagreement that outlasts ahg_timeout drops to the Follower to re-read the
// partner from scratch.
bool ahg_cycle(HlcState& s, const HlcInputs& in, const HlcConfig& cfg, const ForceSampler& sampler)
{
  if (!in_conflict(s, in)) {
    hand_over_to_kcg(s);
    return false;
  }
  enter_phase(s, Phase::AhgDisagreement);
  escalate(s, in, cfg, sampler);
  if (++s.ahg_disagreement_ticks > cfg.ticks(cfg.ahg_timeout)) {
    s.machine = Machine::Follower;
    enter_phase(s, Phase::Perceiving);
    s.active_goal.reset();
    s.f_mag = 0.0;
    s.ahg_disagreement_ticks = 0;
    return true;
  }
  return false;
}

StepResult goal_machine_step(HlcState s, const HlcInputs& in, const GoalSet& goals, const HlcConfig& cfg,
                             const ForceSampler& sampler, bool soft)
{
  if (s.terminal()) {
    return {s, output_for(s)};
  }
  s.t = in.t;

  if (s.phase == Phase::Abort) {
    advance_abort(s, cfg);
    return {s, output_for(s)};
  }
  // Excessive stretch means the partner is overpowering the robot: slow down and stop.
  if (in.stretch > cfg.f_abort) {
    begin_abort(s);
    return {s, output_for(s)};
  }
  if (check_arrival(s, in, goals)) {
    return {s, output_for(s)};
  }

  bool reset_acc = false;
  if (soft && (s.phase == Phase::AhgAgreement || s.phase == Phase::AhgDisagreement)) {
    reset_acc = ahg_cycle(s, in, cfg, sampler);
  } else if (negotiation_cycle(s, in, cfg, sampler, soft)) {
    enter_ahg(s, in, sampler);
  }
  HlcOutput out = output_for(s);
  out.reset_accumulator = reset_acc;
  return {s, out};
}

}  // namespace

HlcState make_follower(std::uint64_t seed, double t)
{
  HlcState s;
  s.role = Machine::Follower;
  s.machine = Machine::Follower;
  s.phase = Phase::Perceiving;
  s.phase_entry_time = t;
  s.t = t;
  s.rng.seed(seed);
  return s;
}

HlcState make_kcg(GoalIndex goal, const ForceSampler& sampler, std::uint64_t seed, double t)
{
  return make_goal_machine(Machine::Kcg, goal, sampler, SamplerRole::Kcg, seed, t);
}

HlcState make_hard(GoalIndex goal, const ForceSampler& sampler, std::uint64_t seed, double t)
{
  return make_goal_machine(Machine::Hard, goal, sampler, SamplerRole::Hard, seed, t);
}

HlcState make_soft(GoalIndex goal, const ForceSampler& sampler, std::uint64_t seed, double t)
{
  return make_goal_machine(Machine::Soft, goal, sampler, SamplerRole::Soft, seed, t);
}

HlcOutput output_for(const HlcState& s)
{
  HlcOutput out;
  switch (s.phase) {
    case Phase::NominalTermination:
      out.terminated = Termination::Nominal;
      return out;
    case Phase::ForcedTermination:
      out.terminated = Termination::Forced;
      return out;
    case Phase::Abort:
      out.aborting = true;
      if (s.abort_complete) {
        out.terminated = Termination::Aborted;
        return out;
      }
      out.goal_direction_target = s.active_goal;
      out.magnitude = s.f_mag;
      return out;
    case Phase::Perceiving:
      return out;
    default:
      out.goal_direction_target = s.active_goal;
      out.magnitude = s.f_mag;
      return out;
  }
}

StepResult kcg_step(HlcState s, const HlcInputs& in, const GoalSet& goals, const HlcConfig& cfg)
{
  if (s.terminal()) {
    return {s, output_for(s)};
  }
  s.t = in.t;
  if (s.phase == Phase::Abort) {
    advance_abort(s, cfg);
    return {s, output_for(s)};
  }
  if (in.stretch > cfg.f_abort) {
    begin_abort(s);
    return {s, output_for(s)};
  }
  // Static reference toward the agreed goal until the object lands on a goal.
  check_arrival(s, in, goals);
  return {s, output_for(s)};
}

StepResult follower_step(HlcState s, const HlcInputs& in, const GoalSet& goals, const ForceSampler& sampler)
{
  if (s.terminal()) {
    return {s, output_for(s)};
  }
  s.t = in.t;
  if (check_arrival(s, in, goals)) {
    // Landed on a goal before the perception block committed to one.
    return {s, output_for(s)};
  }
  if (in.committed) {
    // Perception settled on a goal: delegate to KCG with a KCG-level magnitude.
    s.active_goal = in.committed;
    s.f_mag = action::sample_magnitude(sampler, SamplerRole::Kcg, s.rng);
    hand_over_to_kcg(s);
  }
  return {s, output_for(s)};
}

StepResult hard_step(HlcState s, const HlcInputs& in, const GoalSet& goals, const HlcConfig& cfg,
                     const ForceSampler& sampler)
{
  return goal_machine_step(std::move(s), in, goals, cfg, sampler, false);
}

StepResult soft_step(HlcState s, const HlcInputs& in, const GoalSet& goals, const HlcConfig& cfg,
                     const ForceSampler& sampler)
{
  return goal_machine_step(std::move(s), in, goals, cfg, sampler, true);
}

StepResult hlc_step(HlcState s, const HlcInputs& in, const GoalSet& goals, const HlcConfig& cfg,
                    const ForceSampler& sampler)
{
  switch (s.machine) {
    case Machine::Kcg:
      return kcg_step(std::move(s), in, goals, cfg);
    case Machine::Follower:
      return follower_step(std::move(s), in, goals, sampler);
    case Machine::Hard:
      return hard_step(std::move(s), in, goals, cfg, sampler);
    case Machine::Soft:
      return soft_step(std::move(s), in, goals, cfg, sampler);
  }
  return {s, output_for(s)};
}

}  // namespace negotiation::hlc
