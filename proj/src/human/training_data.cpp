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

#include "negotiation/human/training_data.hpp"

#include <cmath>

#include "negotiation/core/errors.hpp"
#include "negotiation/intent/features.hpp"

namespace negotiation::human {

TrainingSet generate_training_trials(std::size_t n_trials, const TrainingSetup& setup, std::mt19937_64& rng)
{
  if (n_trials == 0) {
    throw ConfigError("need at least one training trial");
  }
  const double dt = 1.0 / setup.sensing.control_hz;
  const auto intent_every =
      static_cast<std::uint64_t>(std::llround(setup.sensing.control_hz / setup.intent_hz));
  const auto max_ticks = static_cast<std::uint64_t>(std::llround(setup.max_trial_duration / dt));

  TrainingSet out;
  for (std::size_t trial = 0; trial < n_trials; ++trial) {
    const GoalIndex goal = stratified_goal(trial, setup.goals.size());

    HumanParams params = setup.human;
    params.commitment = Commitment::Hard;
    params.goal_index = goal;
    params.swap_error_prob = 0.0;
    params.nominal_force =
        std::uniform_real_distribution<double>(setup.nominal_force_range[0], setup.nominal_force_range[1])(rng);
    params.reaction_delay = std::uniform_real_distribution<double>(setup.reaction_delay_range[0],
                                                                   setup.reaction_delay_range[1])(rng);

    HumanState hs = init_human(params, setup.goals.size(), rng);
    dynamics::AdmittanceController admittance(setup.admittance);
    signal::SensingChain sensing(setup.sensing);
    dynamics::PlantState plant{setup.goals.start, {}, 0.0};
    const PlanarWrench passive{};

    TrainingTrialSummary summary;
    summary.trial_id = static_cast<std::uint32_t>(trial);
    summary.goal = goal;
    bool started = false;

    for (std::uint64_t k = 0; k < max_ticks; ++k) {
      const double t = static_cast<double>(k) * dt;
      hs = human_step(params, hs, {plant.pose, plant.twist, passive}, setup.goals, dt, rng);
      const PlanarWrench f_h = sensing.step(t, hs.f_applied);

      if (k % intent_every == 0) {
        if (auto x = intent::extract_features(plant.pose, plant.twist, f_h, passive, setup.goals,
                                              setup.idle_threshold)) {
          if (!started) {
            started = true;
            summary.action_start = t;
          }
          out.records.push_back({t, *x, goal, summary.trial_id});
          summary.action_end = t;
          ++summary.n_records;
        }
      }

      admittance.update(passive, f_h);
      plant = dynamics::plant_step(plant, admittance.twist(), dt);
      if (dynamics::goal_check(plant.pose, setup.goals)) {
        summary.reached_goal = true;
        break;
      }
    }
    out.trials.push_back(summary);
  }
  return out;
}

std::pair<std::vector<intent::TrainingRecord>, std::vector<intent::TrainingRecord>> split_by_trial(
    const std::vector<intent::TrainingRecord>& records, std::uint32_t n_train)
{
  std::pair<std::vector<intent::TrainingRecord>, std::vector<intent::TrainingRecord>> split;
  for (const auto& r : records) {
    (r.trial_id < n_train ? split.first : split.second).push_back(r);
  }
  return split;
}

}  // namespace negotiation::human
