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

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "negotiation/action/action_force.hpp"
#include "negotiation/dynamics/admittance.hpp"
#include "negotiation/harness/profile.hpp"
#include "negotiation/hlc/hlc.hpp"
#include "negotiation/human/human_model.hpp"
#include "negotiation/intent/accumulator.hpp"
#include "negotiation/intent/features.hpp"
#include "negotiation/intent/lda.hpp"
#include "negotiation/signal/sensing.hpp"

namespace negotiation::harness {

/// Robot role. Kcg drives straight to a goal the robot believes is shared.
enum class RobotMode { Follower, Kcg, Hard, Soft };

std::string_view to_string(RobotMode m);
std::optional<RobotMode> robot_mode_from_string(std::string_view s);

struct RobotAssignment {
  RobotMode mode{RobotMode::Follower};
  std::optional<GoalIndex> goal;  // present iff mode != Follower

  static RobotAssignment follower() { return {RobotMode::Follower, std::nullopt}; }
  bool valid(std::size_t n_goals) const;
  bool operator==(const RobotAssignment&) const = default;
};

/// "hard:g1", "soft:g3", "kcg:g2" or "follower". Throws ConfigError.
RobotAssignment parse_robot_assignment(const std::string& s, std::size_t n_goals);
GoalAssignment parse_human_assignment(const std::string& s, std::size_t n_goals);
std::string format_assignment(const RobotAssignment& a);
std::string format_assignment(const GoalAssignment& a);

struct TrialConfig {
  RobotAssignment robot;
  GoalAssignment human;
  std::uint64_t seed{0};
  Profile profile = Profile::defaults();

  /// Throws ConfigError.
  void validate() const;
};

nlohmann::json to_json(const TrialConfig& c);
TrialConfig trial_config_from_json(const nlohmann::json& j);

enum class OutcomeKind { Nominal, Forced, Aborted, Timeout };

std::string_view to_string(OutcomeKind k);
std::optional<OutcomeKind> outcome_kind_from_string(std::string_view s);

struct TrialOutcome {
  OutcomeKind kind{OutcomeKind::Timeout};
  std::optional<GoalIndex> goal;  // goal the trial ended on, if any
  double duration{0.0};  // s
  PlanarPose final_pose;
};

enum class EventKind { StartBeep, GraspBeep, GoalBeep };

std::string_view to_string(EventKind k);
std::optional<EventKind> event_kind_from_string(std::string_view s);

struct TrialEvent {
  double t{0.0};
  EventKind kind{EventKind::StartBeep};
  std::optional<GoalIndex> goal;
};

/// Everything logged for one control tick.
struct TickRecord {
  double t{0.0};
  PlanarPose pose;
  PlanarTwist twist;
  PlanarWrench f_human_raw;  // partner wrench before sensing
  PlanarWrench f_human;  // filtered sensor wrench fed to the admittance
  PlanarWrench f_act;
  PlanarWrench f_ref;
  double stretch{0.0};  // |F_H - F_act| [N]
  bool features_valid{false};  // latest classifier sample was non-idle
  intent::FeatureVector features{};
  intent::IntentLabel intent_raw;
  intent::IntentLabel intent;  // after hysteresis, as seen by the HLC
  std::array<double, 3> posteriors{};
  std::optional<GoalIndex> committed;
  bool hlc_tick{false};  // the HLC ran on this tick
  hlc::Machine machine{hlc::Machine::Follower};
  hlc::Phase phase{hlc::Phase::Perceiving};
  std::optional<GoalIndex> active_goal;
  double f_mag{0.0};
};

struct TrialLog {
  TrialConfig config;
  std::vector<TickRecord> ticks;
  std::vector<TrialEvent> events;
  std::optional<TrialOutcome> outcome;  // missing for a truncated log
};

/// Source of the partner wrench, one call per control tick.
class HumanSource {
 public:
  virtual ~HumanSource() = default;
  virtual PlanarWrench step(double t, const human::HumanInputs& in, double dt) = 0;
  /// When the partner holds the handle; the robot's controller starts then.
  virtual double grasp_time() const = 0;
};

/// Scripted partner driven by the human model.
class ScriptedHuman : public HumanSource {
 public:
  ScriptedHuman(human::HumanParams params, const GoalSet& goals, std::uint64_t seed);

  PlanarWrench step(double t, const human::HumanInputs& in, double dt) override;
  double grasp_time() const override { return params_.reaction_delay; }

  const human::HumanParams& params() const { return params_; }
  const human::HumanState& state() const { return state_; }

 private:
  human::HumanParams params_;
  GoalSet goals_;
  std::mt19937_64 rng_;
  human::HumanState state_;
};

/// Partner parameters for a trial: the profile template for the commitment
/// with this trial's draws of nominal effort and reaction delay.
human::HumanParams draw_human_params(const TrialConfig& config);

/// Independent per-purpose seeds derived from a trial seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

/// Fixed-step multi-rate simulation of one trial: sensing at sensing_hz
/// (held and filtered to the control rate), admittance and plant at
/// control_hz, intent at intent_hz, HLC at hlc_hz once the partner grasps.
class TrialEngine {
 public:
  TrialEngine(TrialConfig config, std::shared_ptr<const intent::LdaModel> model,
              std::unique_ptr<HumanSource> human, bool record_ticks = true);

  /// Advances one control tick. Returns false once the trial is over.
  bool step();
  void run();

  bool finished() const { return log_.outcome.has_value(); }
  double time() const;
  std::uint64_t tick_count() const { return k_; }
  const TickRecord& last() const { return last_; }
  const TrialLog& log() const { return log_; }
  TrialLog take_log() { return std::move(log_); }
  /// Events raised during the most recent step.
  const std::vector<TrialEvent>& step_events() const { return step_events_; }
  const hlc::HlcState& hlc_state() const { return hlc_; }

 private:
  void finish(OutcomeKind kind, std::optional<GoalIndex> goal);
  void emit(EventKind kind, std::optional<GoalIndex> goal = std::nullopt);

  TrialConfig cfg_;
  std::shared_ptr<const intent::LdaModel> model_;
  std::unique_ptr<HumanSource> human_;
  bool record_;

  double dt_;
  std::uint64_t hlc_every_;
  std::uint64_t intent_every_;
  std::uint64_t max_ticks_;

  signal::SensingChain sensing_;
  dynamics::AdmittanceController admittance_;
  dynamics::PlantState plant_;
  action::ActionForceState action_;
  intent::IntentAccumulator accumulator_;
  intent::LabelHysteresis hysteresis_;
  hlc::HlcState hlc_;

  std::uint64_t k_{0};
  bool grasped_{false};
  bool placed_{false};
  TickRecord last_;
  TrialLog log_;
  std::vector<TrialEvent> step_events_;
};

/// Runs a scripted trial to completion.
TrialLog run_trial(const TrialConfig& config, std::shared_ptr<const intent::LdaModel> model,
                   bool record_ticks = true);

}  // namespace negotiation::harness
