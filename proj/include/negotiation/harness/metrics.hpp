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

#include <cstddef>
#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

#include "negotiation/harness/trial.hpp"

namespace negotiation::harness {

enum class Winner { Robot, Human, None };

std::string_view to_string(Winner w);
std::optional<Winner> winner_from_string(std::string_view s);

/// Agreement/Disagreement run statistics. KCG cruising counts as agreement;
/// the Attempt-Human-Goal variants are merged with their plain counterparts.
struct SwitchStats {
  std::size_t n_switches{0};
  std::size_t agreement_segments{0};
  std::size_t disagreement_segments{0};
  double agreement_time{0.0};  // s, summed over segments
  double disagreement_time{0.0};  // s

  double mean_agreement() const;
  double mean_disagreement() const;
};

/// Runs over a per-tick phase trace sampled every `dt`. Other phases
/// (perceiving, abort, terminal) close the current run without counting as
/// a run of their own.
SwitchStats switch_stats(const std::vector<hlc::Phase>& trace, double dt);

struct TrialMetrics {
  bool success{false};
  Winner winner{Winner::None};
  OutcomeKind outcome{OutcomeKind::Timeout};
  std::optional<GoalIndex> final_goal;
  double duration{0.0};
  std::size_t n_switches{0};
  double mean_agreement{0.0};  // s, 0 without agreement runs
  double mean_disagreement{0.0};  // s
  SwitchStats switching;
};

/// Success by role pair:
///   robot Follower:       nominal termination at the human's goal
///   robot Hard or KCG:    the tray ends at the robot's goal
///   robot Soft vs Soft:   either agent's goal
///   robot Soft vs Follower: the robot's goal
///   robot Soft vs Hard:   the human's goal
bool success_rule(const RobotAssignment& robot, const GoalAssignment& human, const TrialOutcome& outcome);
Winner winner_of(const RobotAssignment& robot, const GoalAssignment& human, const TrialOutcome& outcome);

/// Switching is counted from the first HLC tick that sees a non-idle intent. Throws IncompleteLog without an outcome or ticks.
TrialMetrics compute_metrics(const TrialLog& log);

nlohmann::json to_json(const TrialMetrics& m);
TrialMetrics trial_metrics_from_json(const nlohmann::json& j);

struct Interval {
  double lo{0.0};
  double hi{1.0};
};

/// Wilson score interval for a binomial proportion.
Interval wilson_interval(std::size_t successes, std::size_t n, double z = 1.96);

}  // namespace negotiation::harness
