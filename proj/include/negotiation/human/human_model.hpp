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

#include <optional>
#include <random>

#include "negotiation/core/geometry.hpp"
#include "negotiation/core/goals.hpp"

namespace negotiation::human {

/// Behavioral parameters of a scripted partner.
struct HumanParams {
  Commitment commitment{Commitment::Follower};
  std::optional<GoalIndex> goal_index;

  double reaction_delay{0.25};  // s, also the time to grasp the handle
  double force_cap{20.0};  // N, reached under sustained conflict
  double nominal_force{8.0};  // N, conflict-free pushing effort
  double escalation_time{2.0};  // s of conflict to escalate from nominal to cap
  double buildup_tau{0.3};  // s, first-order lag of the applied magnitude
  double yield_stretch{18.0};  // N, soft partners only
  double yield_hold{1.0};  // s
  double noise_std{0.5};  // N per axis, white
  double swap_error_prob{0.0};

  double heading_wobble_std{0.08};  // rad, stationary std of the aim error
  double heading_wobble_tau{0.5};  // s
  double follow_speed_threshold{0.05};  // m/s
  double conflict_angle_deg{25.0};  // robot force this far off our aim reads as conflict
  double conflict_min_force{1.5};  // N of robot action force before conflict is felt
  double approach_radius{0.12};  // m, effort tapers inside this distance to the target
  double approach_min_fraction{0.35};  // effort fraction kept right at the target
  double lateral_damping{15.0};  // N*s/m, resists sideways drift off the aim line

  /// Defaults for the given commitment (force_cap is 35 N for hard partners).
  static HumanParams defaults(Commitment c, std::optional<GoalIndex> goal = std::nullopt);
  void validate(double robot_f_max) const;
};

struct HumanState {
  std::optional<GoalIndex> current_target;
  PlanarWrench f_applied;
  bool yielded{false};
  double conflict_clock{0.0};  // s
  double stretch_clock{0.0};  // s above yield_stretch
  double follow_clock{0.0};  // s of robot motion above the follow threshold
  bool following{false};
  double magnitude{0.0};  // N, noise-free
  double heading_error{0.0};  // rad
  Vec2 last_direction{};
  double t{0.0};
};

/// Initial state; draws the swap error (a wrong but neighbouring goal) when enabled.
template <typename Rng>
HumanState init_human(const HumanParams& params, std::size_t n_goals, Rng& rng)
{
  HumanState s;
  s.current_target = params.goal_index;
  if (params.goal_index && params.swap_error_prob > 0.0 && n_goals > 1) {
    std::bernoulli_distribution swap(params.swap_error_prob);
    if (swap(rng)) {
      const GoalIndex g = *params.goal_index;
      s.current_target = (g + 1 < n_goals) ? g + 1 : g - 1;
    }
  }
  return s;
}

/// Everything the partner senses this tick.
struct HumanInputs {
  PlanarPose pose;
  PlanarTwist twist;
  PlanarWrench f_robot_act;
};

/// Random draws consumed by one human_step; zero for a noise-free step.
struct HumanNoise {
  double fx{0.0};  // standard normal
  double fy{0.0};  // standard normal
  double heading{0.0};  // standard normal
};

template <typename Rng>
HumanNoise draw_noise(Rng& rng)
{
  std::normal_distribution<double> n01(0.0, 1.0);
  HumanNoise n;
  n.fx = n01(rng);
  n.fy = n01(rng);
  n.heading = n01(rng);
  return n;
}

/// Goal whose direction from `pose` best aligns with `force`.
std::optional<GoalIndex> apparent_goal(const PlanarPose& pose, const Vec2& force, const GoalSet& goals);

/// One partner update; a pure function of its arguments.
///
/// Follower: no force until the object has moved faster than the follow
/// threshold for reaction_delay, then pushes along the object's velocity.
/// Hard: pushes toward its target; robot force pointing elsewhere is felt as
/// conflict and escalates the effort from nominal_force toward force_cap.
/// The effort tapers on the final approach and sideways drift is damped.
/// Soft: as Hard, but a stretch |F_H - F_act| above yield_stretch held for
/// yield_hold makes it give in and push toward the robot's apparent goal.
/// Before reaction_delay has elapsed the partner has not grasped the tray.
HumanState human_step(const HumanParams& params, HumanState state, const HumanInputs& in,
                      const GoalSet& goals, double dt, const HumanNoise& noise);

/// Convenience overload drawing the noise from `rng`.
template <typename Rng>
HumanState human_step(const HumanParams& params, const HumanState& state, const HumanInputs& in,
                      const GoalSet& goals, double dt, Rng& rng)
{
  return human_step(params, state, in, goals, dt, draw_noise(rng));
}

}  // namespace negotiation::human
