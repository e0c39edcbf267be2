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

#include "negotiation/dynamics/admittance.hpp"

#include <algorithm>

#include "negotiation/core/errors.hpp"

namespace negotiation::dynamics {

void AdmittanceParams::validate() const
{
  const bool ok = mass_linear > 0.0 && inertia_rotational > 0.0 && damping_linear > 0.0 &&
                  damping_rotational > 0.0 && dt > 0.0 && v_max_linear > 0.0 &&
                  v_max_rotational > 0.0;
  if (!ok) {
    throw ConfigError("admittance parameters must all be positive");
  }
}

namespace {

double axis_accel(double m, double b, double dt, double force, double v_prev)
{
  return (force - b * v_prev) / (m + dt * b);
}

}  // namespace

AdmittanceResult admittance_step(const PlanarTwist& twist_prev, const PlanarWrench& f_act,
                                 const PlanarWrench& f_sensor, const AdmittanceParams& p)
{
  const PlanarWrench f = f_act + f_sensor;
  AdmittanceResult r;
  r.accel.ax = axis_accel(p.mass_linear, p.damping_linear, p.dt, f.fx, twist_prev.vx);
  r.accel.ay = axis_accel(p.mass_linear, p.damping_linear, p.dt, f.fy, twist_prev.vy);
  r.accel.alphaz = axis_accel(p.inertia_rotational, p.damping_rotational, p.dt, f.tau, twist_prev.wz);

  r.twist.vx = twist_prev.vx + p.dt * r.accel.ax;
  r.twist.vy = twist_prev.vy + p.dt * r.accel.ay;
  r.twist.wz = twist_prev.wz + p.dt * r.accel.alphaz;

  const double speed = r.twist.linear_speed();
  if (speed > p.v_max_linear) {
    const double scale = p.v_max_linear / speed;
    r.twist.vx *= scale;
    r.twist.vy *= scale;
  }
  r.twist.wz = std::clamp(r.twist.wz, -p.v_max_rotational, p.v_max_rotational);
  return r;
}

AdmittanceController::AdmittanceController(AdmittanceParams params) : params_(params)
{
  params_.validate();
}

const PlanarTwist& AdmittanceController::update(const PlanarWrench& f_act, const PlanarWrench& f_sensor)
{
  const AdmittanceResult r = admittance_step(twist_, f_act, f_sensor, params_);
  twist_ = r.twist;
  accel_ = r.accel;
  return twist_;
}

PlantState plant_step(const PlantState& state, const PlanarTwist& twist, double dt)
{
  PlantState next;
  next.pose.x = state.pose.x + dt * twist.vx;
  next.pose.y = state.pose.y + dt * twist.vy;
  next.pose.theta = normalize_angle(state.pose.theta + dt * twist.wz);
  next.twist = twist;
  next.t = state.t + dt;
  return next;
}

std::optional<GoalIndex> goal_check(const PlanarPose& pose, const GoalSet& goals)
{
  for (std::size_t i = 0; i < goals.sites.size(); ++i) {
    if (planar_distance(pose, goals.sites[i]) <= goals.reach_tolerance) {
      return i;
    }
  }
  return std::nullopt;
}

}  // namespace negotiation::dynamics
