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

#include "negotiation/core/geometry.hpp"
#include "negotiation/core/goals.hpp"

namespace negotiation::dynamics {

/// Diagonal virtual inertia and damping of the admittance law plus the
/// velocity saturation applied after each update.
struct AdmittanceParams {
  double mass_linear{8.0};  // kg, both x and y
  double inertia_rotational{0.5};  // kg*m^2
  double damping_linear{25.0};  // N*s/m
  double damping_rotational{2.0};  // N*m*s
  double dt{0.002};  // s
  double v_max_linear{0.5};  // m/s
  double v_max_rotational{1.0};  // rad/s

  /// Throws ConfigError unless every entry is positive.
  void validate() const;
};

struct AdmittanceResult {
  PlanarTwist twist;
  PlanarAccel accel;
};

/// One discrete admittance update. Per axis:
///   accel = (m + dt*b)^-1 (f_act + f_sensor - b * v_prev)
///   v     = v_prev + dt * accel
/// The linear velocity is then scaled back onto the v_max_linear disc and the
/// angular rate clamped to +-v_max_rotational. The returned accel is the
/// unsaturated value.
AdmittanceResult admittance_step(const PlanarTwist& twist_prev, const PlanarWrench& f_act,
                                 const PlanarWrench& f_sensor, const AdmittanceParams& p);

/// Stateful wrapper around admittance_step.
class AdmittanceController {
 public:
  explicit AdmittanceController(AdmittanceParams params = {});

  const PlanarTwist& update(const PlanarWrench& f_act, const PlanarWrench& f_sensor);

  /// Commands zero twist, as the low-level controller does once the object is placed.
  void stop() { twist_ = {}; }

  const PlanarTwist& twist() const { return twist_; }
  const PlanarAccel& accel() const { return accel_; }
  const AdmittanceParams& params() const { return params_; }

 private:
  AdmittanceParams params_;
  PlanarTwist twist_;
  PlanarAccel accel_;
};

/// Simulated tray held by the robot end-effector.
struct PlantState {
  PlanarPose pose;
  PlanarTwist twist;
  double t{0.0};  // s
};

/// Explicit Euler integration of the commanded world-frame twist.
PlantState plant_step(const PlantState& state, const PlanarTwist& twist, double dt);

/// Index of the first goal within reach tolerance of `pose` (lowest index wins ties).
std::optional<GoalIndex> goal_check(const PlanarPose& pose, const GoalSet& goals);

}  // namespace negotiation::dynamics
