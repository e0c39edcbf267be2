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
#include <string>
#include <string_view>
#include <vector>

#include "negotiation/core/geometry.hpp"

namespace negotiation {

/// Zero-based index into GoalSet::sites. Rendered as g1..gn for humans.
using GoalIndex = std::size_t;

std::string goal_name(GoalIndex g);

/// Goal sites are compared by planar position only; orientation at the goal
/// is ignored.
struct GoalSet {
  std::vector<PlanarPose> sites;
  double reach_tolerance{0.03};  // m
  PlanarPose start{};

  std::size_t size() const { return sites.size(); }

  /// Three sites on a 0.5 m arc in front of the start pose, 40 degrees apart,
  /// numbered left to right.
  static GoalSet standard(double radius = 0.5, double separation_deg = 40.0,
                          double reach_tolerance = 0.03);

  /// Throws ConfigError when the invariants do not hold.
  void validate() const;
};

enum class Commitment { Hard, Soft, Follower };

std::string_view to_string(Commitment c);
std::optional<Commitment> commitment_from_string(std::string_view s);

/// Per-agent goal and commitment. A goal is present iff the agent is not a
/// follower.
struct GoalAssignment {
  std::optional<GoalIndex> goal_index;
  Commitment commitment{Commitment::Follower};

  static GoalAssignment follower() { return {std::nullopt, Commitment::Follower}; }
  static GoalAssignment hard(GoalIndex g) { return {g, Commitment::Hard}; }
  static GoalAssignment soft(GoalIndex g) { return {g, Commitment::Soft}; }

  bool valid(std::size_t n_goals) const;
  bool operator==(const GoalAssignment&) const = default;
};

}  // namespace negotiation
