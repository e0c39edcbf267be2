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

#include "negotiation/core/goals.hpp"

#include <numbers>

#include "negotiation/core/errors.hpp"

namespace negotiation {

std::string goal_name(GoalIndex g)
{
  return "g" + std::to_string(g + 1);
}

GoalSet GoalSet::standard(double radius, double separation_deg, double reach_tolerance)
{
  const double sep = separation_deg * std::numbers::pi / 180.0;
  GoalSet goals;
  goals.reach_tolerance = reach_tolerance;
  goals.start = PlanarPose{0.0, 0.0, 0.0};
  // Sites fan out around the +y axis: g1 on the left, g2 straight ahead, g3 right.
  for (int k = -1; k <= 1; ++k) {
    const double angle = k * sep;
    goals.sites.push_back(PlanarPose{radius * std::sin(angle), radius * std::cos(angle), 0.0});
  }
  return goals;
}

void GoalSet::validate() const
{
  if (sites.empty()) {
    throw ConfigError("goal set has no sites");
  }
  if (!(reach_tolerance > 0.0)) {
    throw ConfigError("reach_tolerance must be positive");
  }
  for (std::size_t i = 0; i < sites.size(); ++i) {
    if (!(planar_distance(start, sites[i]) > reach_tolerance)) {
      throw ConfigError(goal_name(i) + " lies within reach tolerance of the start pose");
    }
    for (std::size_t j = i + 1; j < sites.size(); ++j) {
      if (planar_distance(sites[i], sites[j]) <= kDirectionEpsilon) {
        throw ConfigError("goal sites " + goal_name(i) + " and " + goal_name(j) + " coincide");
      }
    }
  }
}

std::string_view to_string(Commitment c)
{
  switch (c) {
    case Commitment::Hard:
      return "hard";
    case Commitment::Soft:
      return "soft";
    case Commitment::Follower:
      return "follower";
  }
  return "follower";
}

std::optional<Commitment> commitment_from_string(std::string_view s)
{
  if (s == "hard") {
    return Commitment::Hard;
  }
  if (s == "soft") {
    return Commitment::Soft;
  }
  if (s == "follower") {
    return Commitment::Follower;
  }
  return std::nullopt;
}

bool GoalAssignment::valid(std::size_t n_goals) const
{
  if (commitment == Commitment::Follower) {
    return !goal_index.has_value();
  }
  return goal_index.has_value() && *goal_index < n_goals;
}

}  // namespace negotiation
