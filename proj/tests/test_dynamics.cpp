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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "negotiation/core/errors.hpp"
#include "negotiation/dynamics/admittance.hpp"
#include "oracles.hpp"

namespace negotiation::dynamics {
namespace {

TEST(Admittance, MatchesClosedFormUnderConstantForce)
{
  const AdmittanceParams p;
  AdmittanceController c(p);
  for (int k = 1; k <= 2500; ++k) {
    c.update({}, {0.0, 10.0, 0.0});
    ASSERT_NEAR(c.twist().vy, oracle::admittance_speed(10.0, p.mass_linear, p.damping_linear, p.dt, k), 1e-12);
  }
  EXPECT_NEAR(c.twist().vy, 0.4, 1e-3);
  EXPECT_DOUBLE_EQ(c.twist().vx, 0.0);
}

TEST(Admittance, ActionAndSensorForcesAdd)
{
  const AdmittanceParams p;
  const auto a = admittance_step({}, {3.0, 0.0, 0.0}, {2.0, 0.0, 0.0}, p);
  const auto b = admittance_step({}, {}, {5.0, 0.0, 0.0}, p);
  EXPECT_DOUBLE_EQ(a.twist.vx, b.twist.vx);
}

TEST(Admittance, ZeroForceDecayIsMonotonePerAxis)
{
  AdmittanceParams p;
  AdmittanceController c(p);
  for (int k = 0; k < 1000; ++k) {
    c.update({}, {6.0, -4.0, 0.3});
  }
  PlanarTwist prev = c.twist();
  for (int k = 0; k < 3000; ++k) {
    const auto& v = c.update({}, {});
    EXPECT_LE(std::abs(v.vx), std::abs(prev.vx));
    EXPECT_LE(std::abs(v.vy), std::abs(prev.vy));
    EXPECT_LE(std::abs(v.wz), std::abs(prev.wz));
    EXPECT_GE(v.vx * prev.vx, 0.0);
    prev = v;
  }
  EXPECT_LT(prev.linear_speed(), 1e-3);
}

TEST(Admittance, SpeedIsClampedToDisc)
{
  AdmittanceParams p;
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> f(-80.0, 80.0);
  PlanarTwist v{};
  for (int k = 0; k < 20000; ++k) {
    v = admittance_step(v, {f(rng), f(rng), f(rng)}, {f(rng), f(rng), 0.0}, p).twist;
    EXPECT_LE(v.linear_speed(), p.v_max_linear + 1e-12);
    EXPECT_LE(std::abs(v.wz), p.v_max_rotational + 1e-12);
  }
}

TEST(Admittance, ClampPreservesDirection)
{
  AdmittanceParams p;
  const auto r = admittance_step({0.3, 0.4, 0.0}, {300.0, 400.0, 0.0}, {}, p);
  EXPECT_NEAR(r.twist.linear_speed(), p.v_max_linear, 1e-12);
  EXPECT_NEAR(r.twist.vy / r.twist.vx, 4.0 / 3.0, 1e-12);
}

TEST(Admittance, ValidateRejectsNonPositive)
{
  AdmittanceParams p;
  p.damping_linear = 0.0;
  EXPECT_THROW(p.validate(), ConfigError);
  p = {};
  p.dt = -1.0;
  EXPECT_THROW(p.validate(), ConfigError);
}

TEST(Plant, EulerStep)
{
  const PlantState s{{0.1, 0.2, 3.1}, {}, 1.0};
  const auto n = plant_step(s, {0.5, -0.25, 1.0}, 0.1);
  EXPECT_NEAR(n.pose.x, 0.15, 1e-12);
  EXPECT_NEAR(n.pose.y, 0.175, 1e-12);
  EXPECT_NEAR(n.pose.theta, normalize_angle(3.2), 1e-12);
  EXPECT_NEAR(n.t, 1.1, 1e-12);
}

TEST(Plant, GoalCheck)
{
  const GoalSet g = GoalSet::standard();
  EXPECT_FALSE(goal_check(g.start, g).has_value());
  auto at = g.sites[2];
  at.x += 0.029;
  EXPECT_EQ(goal_check(at, g), 2u);
  at.x += 0.002;
  EXPECT_FALSE(goal_check(at, g).has_value());
}

}  // namespace
}  // namespace negotiation::dynamics
