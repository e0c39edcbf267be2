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
#include <filesystem>
#include <optional>

#include <nlohmann/json.hpp>

#include "negotiation/action/action_force.hpp"
#include "negotiation/core/goals.hpp"
#include "negotiation/dynamics/admittance.hpp"
#include "negotiation/hlc/hlc.hpp"
#include "negotiation/human/human_model.hpp"
#include "negotiation/signal/sensing.hpp"

namespace negotiation::harness {

/// Environment variable naming the profile file used when none is given.
inline constexpr const char* kProfileEnvVar = "NEGOSIM_PROFILE";

struct Rates {
  double control_hz{500.0};
  double hlc_hz{50.0};
  double intent_hz{250.0};
  double sensing_hz{200.0};
};

struct IntentParams {
  double idle_threshold{1.5};  // N
  double commit_duration{0.5};  // s
  double hysteresis{0.2};  // s
  std::optional<double> lambda;  // absolute ridge; overrides ridge_scale
  double ridge_scale{1e-6};  // ridge as a fraction of the mean feature variance
};

/// Scripted partner templates. Each trial draws its own nominal effort,
/// reaction delay and yield patience from the ranges.
struct HumanProfile {
  human::HumanParams hard = human::HumanParams::defaults(Commitment::Hard, 0);
  human::HumanParams soft = soft_defaults();
  human::HumanParams follower = human::HumanParams::defaults(Commitment::Follower);
  std::array<double, 2> nominal_force_range{5.0, 10.0};  // N
  std::array<double, 2> reaction_delay_range{0.2, 0.3};  // s
  std::array<double, 2> yield_hold_range{0.1, 1.0};  // s, soft partners

  const human::HumanParams& for_commitment(Commitment c) const;

  /// Soft partners escalate slowly; they would rather give in than fight.
  static human::HumanParams soft_defaults();
};

/// Passive-robot data collection used to train the default intent model.
struct TrainingProfile {
  std::uint32_t n_trials{12};
  std::uint64_t seed{4347};
  std::array<double, 2> nominal_force_range{5.0, 14.0};  // N
  std::array<double, 2> reaction_delay_range{0.15, 0.35};  // s
  double heading_wobble_std{0.08};  // rad, how far participants wander off the straight path
  double max_trial_duration{10.0};  // s
};

/// Every tunable of the simulator. A trial is reproducible from a profile
/// and a seed.
struct Profile {
  GoalSet goals = GoalSet::standard();
  dynamics::AdmittanceParams admittance;
  double t_transient{0.2};  // s
  action::ForceSampler sampler;
  double filter_cutoff_hz{5.0};
  int filter_order{2};
  IntentParams intent;
  hlc::HlcConfig hlc;
  HumanProfile human;
  TrainingProfile training;
  Rates rates;
  double max_duration{20.0};  // s

  static Profile defaults();
  /// Defaults plus occasional goal mix-ups by the scripted partners.
  static Profile realistic();

  signal::SensingParams sensing() const;
  /// Throws ConfigError on any inconsistency.
  void validate() const;
};

nlohmann::json to_json(const Profile& p);
/// Keys absent from `j` keep the values of `base`.
Profile profile_from_json(const nlohmann::json& j, const Profile& base = Profile::defaults());
Profile load_profile(const std::filesystem::path& path);
void save_profile(const std::filesystem::path& path, const Profile& p);

/// Profile named by the environment variable, or the defaults when unset.
Profile profile_from_environment();

}  // namespace negotiation::harness
