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

#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string_view>

#include "negotiation/action/action_force.hpp"
#include "negotiation/core/geometry.hpp"
#include "negotiation/core/goals.hpp"
#include "negotiation/intent/accumulator.hpp"

/// High-level controller: the Known-Common-Goal, Follower, Hard-goal and
/// Soft-goal state machines. Every machine is a pure transition function
/// (state, inputs) -> (state, output), ticked at HlcConfig::tick_hz. The
/// state carries its own random engine so magnitude draws stay inside the
/// transition.
namespace negotiation::hlc {

enum class Machine { Kcg, Follower, Hard, Soft };

enum class Phase {
  Perceiving,
  Agreement,
  Disagreement,
  AhgAgreement,
  AhgDisagreement,
  Abort,
  NominalTermination,
  ForcedTermination,
};

enum class Termination { Nominal, Forced, Aborted };

std::string_view to_string(Machine m);
std::string_view to_string(Phase p);
std::string_view to_string(Termination t);
std::optional<Machine> machine_from_string(std::string_view s);
std::optional<Phase> phase_from_string(std::string_view s);
std::optional<Termination> termination_from_string(std::string_view s);

struct HlcConfig {
  double f_conflict_threshold{20.0};  // F^C [N]
  double f_abort{30.0};  // N
  double escalation_rate_max{6.0};  // k_e [N/s]
  double deescalation_rate{4.0};  // k_d [N/s]
  double ahg_timeout{3.0};  // s
  double abort_ramp{1.0};  // s
  double tick_hz{50.0};
  double desired_speed{0.4};  // v_des [m/s]
  double ahg_trigger_hold{0.3};  // s of stretch above F^C before AHG
  double kcg_settle{0.5};  // s of confirmed agreement before handing over to KCG

  double dt() const { return 1.0 / tick_hz; }
  int ticks(double seconds) const;
  void validate() const;
};

struct HlcState {
  Machine role{Machine::Follower};  // machine the robot was assigned
  Machine machine{Machine::Follower};  // machine currently in charge
  Phase phase{Phase::Perceiving};
  std::optional<GoalIndex> robot_goal;  // g_R; never set for a Follower
  std::optional<GoalIndex> active_goal;
  double f_mag{0.0};  // N
  double phase_entry_time{0.0};
  double t{0.0};

  int stretch_ticks{0};  // consecutive Disagreement ticks with stretch above F^C
  int settle_ticks{0};  // Agreement ticks confirmed by a matching intent label
  int ahg_disagreement_ticks{0};
  int abort_ticks{0};
  double abort_start_mag{0.0};
  bool abort_complete{false};
  std::optional<GoalIndex> terminal_goal;

  std::mt19937_64 rng;

  bool terminal() const;
  /// Agreement-like phases, including the KCG cruise.
  bool agreeing() const;
  bool disagreeing() const;
};

struct HlcInputs {
  double t{0.0};
  PlanarPose pose;
  intent::IntentLabel intent;  // hysteresis-filtered per-tick label, nullopt = idle
  std::optional<GoalIndex> committed;  // accumulator commitment
  std::optional<GoalIndex> perceived_goal;  // accumulator majority
  double stretch{0.0};  // |F_H - F_act| [N]
  double v_goal{0.0};  // object speed toward the active goal [m/s]
};

struct HlcOutput {
  std::optional<GoalIndex> goal_direction_target;
  double magnitude{0.0};
  std::optional<Termination> terminated;
  bool aborting{false};
  bool reset_accumulator{false};
};

struct StepResult {
  HlcState state;
  HlcOutput output;
};

/// The Follower takes no goal.
HlcState make_follower(std::uint64_t seed, double t = 0.0);
HlcState make_kcg(GoalIndex goal, const action::ForceSampler& sampler, std::uint64_t seed, double t = 0.0);
HlcState make_hard(GoalIndex goal, const action::ForceSampler& sampler, std::uint64_t seed, double t = 0.0);
HlcState make_soft(GoalIndex goal, const action::ForceSampler& sampler, std::uint64_t seed, double t = 0.0);

HlcOutput output_for(const HlcState& state);

/// Every goal-pushing machine, KCG included, aborts when the stretch exceeds f_abort.
StepResult kcg_step(HlcState state, const HlcInputs& in, const GoalSet& goals, const HlcConfig& cfg);
StepResult follower_step(HlcState state, const HlcInputs& in, const GoalSet& goals,
                         const action::ForceSampler& sampler);
StepResult hard_step(HlcState state, const HlcInputs& in, const GoalSet& goals, const HlcConfig& cfg,
                     const action::ForceSampler& sampler);
StepResult soft_step(HlcState state, const HlcInputs& in, const GoalSet& goals, const HlcConfig& cfg,
                     const action::ForceSampler& sampler);

/// Dispatches on state.machine.
StepResult hlc_step(HlcState state, const HlcInputs& in, const GoalSet& goals, const HlcConfig& cfg,
                    const action::ForceSampler& sampler);

}  // namespace negotiation::hlc
