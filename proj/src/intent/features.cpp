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

#include "negotiation/intent/features.hpp"

#include "negotiation/core/errors.hpp"

namespace negotiation::intent {

const std::array<std::string, kFeatureCount>& feature_names()
{
  static const std::array<std::string, kFeatureCount> names{
      "force_g1", "force_g2", "force_g3", "power_g1", "power_g2", "power_g3", "velocity_g1",
      "velocity_g2", "velocity_g3", "stretch_fx", "stretch_fy", "stretch_tau", "force_magnitude"};
  return names;
}

std::optional<FeatureVector> extract_features(const PlanarPose& pose, const PlanarTwist& twist,
                                              const PlanarWrench& f_human,
                                              const PlanarWrench& f_robot_act, const GoalSet& goals,
                                              double idle_threshold)
{
  if (goals.size() != kGoalsPerFeatureSet) {
    throw ConfigError("feature extraction expects exactly three goal sites");
  }
  const double f_mag = f_human.magnitude();
  if (f_mag < idle_threshold) {
    return std::nullopt;
  }

  FeatureVector x{};
  const Vec2 force = f_human.force();
  const Vec2 velocity = twist.linear();
  for (std::size_t i = 0; i < kGoalsPerFeatureSet; ++i) {
    Vec2 dir{};
    try {
      dir = unit_direction(pose, goals.sites[i]);
    } catch (const DegenerateDirection&) {
      // Sitting on the goal: no meaningful direction, projections stay zero.
    }
    const double f_proj = project(force, dir);
    const double v_proj = project(velocity, dir);
    x[i] = f_proj;
    x[3 + i] = f_proj * v_proj;
    x[6 + i] = v_proj;
  }

  const PlanarWrench stretch = f_human - f_robot_act;
  const Vec2 stretch_obj = rotate_into_frame(stretch.force(), pose.theta);
  x[9] = stretch_obj.x;
  x[10] = stretch_obj.y;
  x[11] = stretch.tau;
  x[12] = f_mag;
  return x;
}

}  // namespace negotiation::intent
