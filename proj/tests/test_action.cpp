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

#include "negotiation/action/action_force.hpp"
#include "negotiation/core/errors.hpp"
#include "oracles.hpp"

namespace negotiation::action {
namespace {

TEST(ActionForce, StepResponseFollowsFirstOrderLag)
{
  ActionForceState s;
  set_reference(s, {1.0, 0.0}, 10.0, {});
  for (int k = 1; k <= 300; ++k) {
    action_force_step(s, 0.002, false);
    ASSERT_NEAR(s.f_act.fx, 10.0 * oracle::lag_fraction(0.002, 0.2, k), 1e-9);
  }
}

TEST(ActionForce, ReachesSixtyThreePercentAtTimeConstant)
{
  ActionForceState s;
  set_reference(s, {0.0, 1.0}, 12.0, {});
  for (int k = 0; k < 100; ++k) {
    action_force_step(s, 0.002, false);
  }
  EXPECT_NEAR(s.f_act.fy / 12.0, 1.0 - std::exp(-1.0), 0.01);
}

TEST(ActionForce, ZeroAtGoal)
{
  ActionForceState s;
  s.f_act = {4.0, 1.0, 0.0};
  set_reference(s, {1.0, 0.0}, 10.0, {});
  action_force_step(s, 0.002, true);
  EXPECT_EQ(s.f_act, PlanarWrench{});
}

TEST(ActionForce, ConvexCombinationBound)
{
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_real_distribution<double> mag(0.0, 20.0);
  ActionForceState s;
  for (int k = 0; k < 100000; ++k) {
    if (k % 37 == 0) {
      const Vec2 d{u(rng), u(rng)};
      if (d.norm() > 1e-6) {
        set_reference(s, d * (1.0 / d.norm()), mag(rng), {});
      }
    }
    const double before = s.f_act.magnitude();
    action_force_step(s, 0.002, false);
    ASSERT_LE(s.f_act.magnitude(), std::max(before, s.f_ref.magnitude()) + 1e-12);
  }
}

TEST(ActionForce, ReferenceIsClampedAndTorqueFree)
{
  ActionForceState s;
  set_reference(s, {0.6, 0.8}, 40.0, {3.0, 15.0});
  EXPECT_NEAR(s.f_ref.magnitude(), 15.0, 1e-12);
  EXPECT_DOUBLE_EQ(s.f_ref.tau, 0.0);
  set_reference(s, {0.6, 0.8}, 0.5, {3.0, 15.0});
  EXPECT_NEAR(s.f_ref.magnitude(), 3.0, 1e-12);
}

TEST(Sampler, MagnitudesStayWithinLimits)
{
  ForceSampler sampler;
  std::mt19937_64 rng(3);
  for (auto role : {SamplerRole::Kcg, SamplerRole::Soft, SamplerRole::Hard}) {
    for (int i = 0; i < 5000; ++i) {
      const double m = sample_magnitude(sampler, role, rng);
      EXPECT_GE(m, sampler.limits.f_min);
      EXPECT_LE(m, sampler.limits.f_max);
    }
  }
}

TEST(Sampler, LevelFrequenciesMatchOdds)
{
  ForceSampler sampler;
  std::mt19937_64 rng(8);
  for (auto role : {SamplerRole::Kcg, SamplerRole::Soft, SamplerRole::Hard}) {
    std::array<int, 3> counts{};
    const int n = 60000;
    for (int i = 0; i < n; ++i) {
      ++counts[static_cast<std::size_t>(sample_level(sampler, role, rng))];
    }
    for (std::size_t l = 0; l < 3; ++l) {
      const double p = sampler.level_probs[static_cast<std::size_t>(role)][l];
      EXPECT_NEAR(counts[l] / static_cast<double>(n), p, 4.0 * std::sqrt(p * (1 - p) / n));
    }
  }
}

TEST(Sampler, LevelMeansSpreadEvenly)
{
  const auto m = ForceSampler::spread_means({3.0, 15.0});
  EXPECT_DOUBLE_EQ(m[0], 5.0);
  EXPECT_DOUBLE_EQ(m[1], 9.0);
  EXPECT_DOUBLE_EQ(m[2], 13.0);
}

TEST(Sampler, ValidateRejectsBadOdds)
{
  ForceSampler s;
  s.level_probs[0] = {0.5, 0.5, 0.5};
  EXPECT_THROW(s.validate(), ConfigError);
  s = {};
  s.limits = {10.0, 5.0};
  EXPECT_THROW(s.validate(), ConfigError);
}

}  // namespace
}  // namespace negotiation::action
