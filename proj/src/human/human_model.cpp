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

#include "negotiation/human/human_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "negotiation/core/errors.hpp"

namespace negotiation::human {

HumanParams HumanParams::defaults(Commitment c, std::optional<GoalIndex> goal)
{
  HumanParams p;
  p.commitment = c;
  p.goal_index = (c == Commitment::Follower) ? std::nullopt : goal;
  if (c == Commitment::Hard) {
    p.force_cap = 35.0;
  }
  return p;
}

void HumanParams::validate(double robot_f_max) const
{
  if (!(force_cap > 0.0) || !(reaction_delay >= 0.0) || !(buildup_tau > 0.0) ||
      !(nominal_force > 0.0) || !(escalation_time > 0.0) || !(noise_std >= 0.0) ||
      !(approach_radius > 0.0) || approach_min_fraction < 0.0 || approach_min_fraction > 1.0 ||
      !(lateral_damping >= 0.0)) {
    throw ConfigError("human parameters out of range");
  }
  if (!(yield_stretch < force_cap + robot_f_max)) {
    throw ConfigError("yield_stretch must be below force_cap + robot F_max");
  }
  if (swap_error_prob < 0.0 || swap_error_prob > 1.0) {
    throw ConfigError("swap_error_prob must be a probability");
  }
  if ((commitment == Commitment::Follower) == goal_index.has_value()) {
    throw ConfigError("a human goal is required iff the human is not a follower");
  }
}

std::optional<GoalIndex> apparent_goal(const PlanarPose& pose, const Vec2& force, const GoalSet& goals)
{
  const double f = force.norm();
  if (!(f > kDirectionEpsilon)) {
    return std::nullopt;
  }
  std::optional<GoalIndex> best;
  double best_cos = -2.0;
  for (std::size_t i = 0; i < goals.size(); ++i) {
    try {
      const double c = project(force, unit_direction(pose, goals.sites[i])) / f;
      if (c > best_cos) {
        best_cos = c;
        best = i;
      }
    } catch (const DegenerateDirection&) {
    }
  }
  return best;
}

namespace {

Vec2 rotate(const Vec2& v, double angle)
{
  return rotate_out_of_frame(v, angle);
}

double angle_between(const Vec2& a, const Vec2& b)
{
  const double na = a.norm();
  const double nb = b.norm();
  if (na <= 0.0 || nb <= 0.0) {
    return 0.0;
  }
  return std::acos(std::clamp(a.dot(b) / (na * nb), -1.0, 1.0));
}

}  // namespace

HumanState human_step(const HumanParams& params, HumanState s, const HumanInputs& in,
                      const GoalSet& goals, double dt, const HumanNoise& noise)
{
  s.t += dt;
  if (s.t + 1e-12 < params.reaction_delay) {
    s.f_applied = {};
    return s;
  }

  const Vec2 robot_force = in.f_robot_act.force();
  double target_mag = 0.0;
  Vec2 direction = s.last_direction;

  if (params.commitment == Commitment::Follower) {
    const double speed = in.twist.linear_speed();
    if (!s.following) {
      s.follow_clock = speed > params.follow_speed_threshold ? s.follow_clock + dt : 0.0;
      s.following = s.follow_clock + 1e-12 >= params.reaction_delay;
    }
    if (speed > 1e-6) {
      direction = in.twist.linear() * (1.0 / speed);
    }
    target_mag = s.following ? params.nominal_force : 0.0;
  } else if (s.current_target) {
    Vec2 aim{};
    try {
      aim = unit_direction(in.pose, goals.sites[*s.current_target]);
    } catch (const DegenerateDirection&) {
      aim = {};
    }

    // Slow wandering of the aim (Ornstein-Uhlenbeck).
    const double theta = params.heading_wobble_tau;
    s.heading_error += -s.heading_error * dt / theta +
                       params.heading_wobble_std * std::sqrt(2.0 * dt / theta) * noise.heading;
    direction = rotate(aim, s.heading_error);

    const bool conflict =
        robot_force.norm() > params.conflict_min_force &&
        angle_between(robot_force, aim) > params.conflict_angle_deg * std::numbers::pi / 180.0;
    s.conflict_clock = conflict ? s.conflict_clock + dt : std::max(0.0, s.conflict_clock - dt);

    if (params.commitment == Commitment::Soft && !s.yielded) {
      const double stretch = (s.f_applied - in.f_robot_act).magnitude();
      s.stretch_clock = stretch > params.yield_stretch ? s.stretch_clock + dt : 0.0;
      if (s.stretch_clock + 1e-12 >= params.yield_hold) {
        // Give in: adopt the goal the robot appears to be heading for.
        s.yielded = true;
        s.conflict_clock = 0.0;
        s.stretch_clock = 0.0;
        if (auto g = apparent_goal(in.pose, robot_force, goals)) {
          s.current_target = g;
        }
      }
    }

    const double esc = std::min(1.0, s.conflict_clock / params.escalation_time);
    target_mag = s.yielded ? params.nominal_force
                           : params.nominal_force + (params.force_cap - params.nominal_force) * esc;
    const double dist = planar_distance(in.pose, goals.sites[*s.current_target]);
    target_mag *= std::clamp(dist / params.approach_radius, params.approach_min_fraction, 1.0);
  }

  s.magnitude += (target_mag - s.magnitude) * dt / params.buildup_tau;
  s.last_direction = direction;

  Vec2 f = direction * s.magnitude;
  if (params.commitment != Commitment::Follower && target_mag > 0.0) {
    const Vec2 v = in.twist.linear();
    const Vec2 v_side = v - direction * v.dot(direction);
    f = f - v_side * params.lateral_damping;
    if (f.norm() > params.force_cap) {
      f = f * (params.force_cap / f.norm());
    }
  }
  if (target_mag > 0.0 && params.noise_std > 0.0) {
    Vec2 n{noise.fx * params.noise_std, noise.fy * params.noise_std};
    const double cap = 3.0 * params.noise_std;
    if (n.norm() > cap) {
      n = n * (cap / n.norm());
    }
    f = f + n;
  }
  s.f_applied = PlanarWrench::from_force(f);
  return s;
}

}  // namespace negotiation::human
