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
#include <optional>
#include <string>

#include "negotiation/core/geometry.hpp"
#include "negotiation/core/goals.hpp"

namespace negotiation::intent {

inline constexpr std::size_t kGoalsPerFeatureSet = 3;
inline constexpr std::size_t kFeatureCount = 13;
inline constexpr int kFeatureSchemaVersion = 1;

/// Layout, goal-major within each group:
///   [0..2]   human force projected on the direction to g1..g3   [N]
///   [3..5]   projected force times projected velocity per goal  [W]
///   [6..8]   object velocity projected on the direction to g1..g3 [m/s]
///   [9..11]  stretch force F_H - F_act in the object frame: fx, fy, tau
///   [12]     human linear force magnitude                          [N]
using FeatureVector = std::array<double, kFeatureCount>;

const std::array<std::string, kFeatureCount>& feature_names();

/// Idle is reported as std::nullopt when |F_H| is below `idle_threshold`.
/// Projections onto a goal the pose coincides with are zero.
/// Requires exactly three goal sites.
std::optional<FeatureVector> extract_features(const PlanarPose& pose, const PlanarTwist& twist,
                                              const PlanarWrench& f_human,
                                              const PlanarWrench& f_robot_act, const GoalSet& goals,
                                              double idle_threshold = 1.5);

}  // namespace negotiation::intent
