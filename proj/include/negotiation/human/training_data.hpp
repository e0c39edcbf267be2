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
#include <random>
#include <vector>

#include "negotiation/core/goals.hpp"
#include "negotiation/dynamics/admittance.hpp"
#include "negotiation/human/human_model.hpp"
#include "negotiation/intent/io.hpp"
#include "negotiation/signal/sensing.hpp"

namespace negotiation::human {

/// Everything needed to replay the passive-robot data collection.
struct TrainingSetup {
  GoalSet goals = GoalSet::standard();
  dynamics::AdmittanceParams admittance;
  signal::SensingParams sensing;
  double intent_hz{250.0};
  double idle_threshold{1.5};
  HumanParams human = HumanParams::defaults(Commitment::Hard, 0);
  std::array<double, 2> nominal_force_range{5.0, 14.0};  // N, drawn per trial
  std::array<double, 2> reaction_delay_range{0.15, 0.35};  // s, drawn per trial
  double max_trial_duration{10.0};  // s
};

struct TrainingTrialSummary {
  std::uint32_t trial_id{0};
  GoalIndex goal{0};
  double action_start{0.0};  // first non-idle sample
  double action_end{0.0};  // last emitted sample
  std::size_t n_records{0};
  bool reached_goal{false};
};

struct TrainingSet {
  std::vector<intent::TrainingRecord> records;
  std::vector<TrainingTrialSummary> trials;
};

/// Stratified goal for trial `i`: goals cycle g1, g2, g3, ... so any multiple
/// of the goal count is exactly balanced.
inline GoalIndex stratified_goal(std::size_t trial, std::size_t n_goals) { return trial % n_goals; }

/// Simulates `n_trials` passive-mode trials (robot action force fixed at zero)
/// in which a partner with randomized effort pushes the tray to its goal.
/// Emits one labeled record per classifier tick during the action phase:
/// from the first non-idle sample until the tray reaches the goal, idle samples
/// skipped.
TrainingSet generate_training_trials(std::size_t n_trials, const TrainingSetup& setup, std::mt19937_64& rng);

/// Splits by trial id: ids below `n_train` train, the rest test.
std::pair<std::vector<intent::TrainingRecord>, std::vector<intent::TrainingRecord>> split_by_trial(
    const std::vector<intent::TrainingRecord>& records, std::uint32_t n_train);

}  // namespace negotiation::human
