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

#include <algorithm>
#include <array>
#include <random>
#include <string_view>

#include "negotiation/core/geometry.hpp"

namespace negotiation::action {

struct ForceLimits {
  double f_min{3.0};  // N
  double f_max{15.0};  // N

  double clamp(double magnitude) const { return std::clamp(magnitude, f_min, f_max); }
};

/// Robot action force F_act tracking the reference F_ref through a first-order
/// transient of time constant t_transient.
struct ActionForceState {
  PlanarWrench f_act;
  PlanarWrench f_ref;
  double t_transient{0.2};  // s
};

/// F_act <- F_act + (F_ref - F_act) * dt / t_transient, or zero when the object
/// sits on any goal site. Requires dt < t_transient.
PlanarWrench action_force_step(ActionForceState& state, double dt, bool at_goal);

/// F_ref <- direction * clamp(magnitude, limits). Torque is always zero.
void set_reference(ActionForceState& state, const Vec2& direction, double magnitude,
                   const ForceLimits& limits);

inline void clear_reference(ActionForceState& state) { state.f_ref = {}; }

enum class ForceLevel { Weak = 0, Medium = 1, Strong = 2 };

/// Which controller is asking for a magnitude; each has its own level odds.
enum class SamplerRole { Kcg = 0, Soft = 1, Hard = 2 };

std::string_view to_string(SamplerRole role);

/// Three Gaussian strength levels spread over [f_min, f_max] with a shared
/// standard deviation.
struct ForceSampler {
  ForceLimits limits;
  double sigma{0.6};  // N
  std::array<double, 3> level_means{5.0, 9.0, 13.0};
  /// Indexed by SamplerRole, each row is P(weak), P(medium), P(strong).
  std::array<std::array<double, 3>, 3> level_probs{{
      {0.7, 0.2, 0.1},  // KCG
      {0.2, 0.5, 0.3},  // soft goal
      {0.1, 0.3, 0.6},  // hard goal
  }};

  /// Level means at the centers of three equal slices of [f_min, f_max].
  static std::array<double, 3> spread_means(const ForceLimits& limits);

  /// Throws ConfigError on inconsistent limits or probabilities.
  void validate() const;
};

template <typename Rng>
ForceLevel sample_level(const ForceSampler& sampler, SamplerRole role, Rng& rng)
{
  const auto& p = sampler.level_probs[static_cast<std::size_t>(role)];
  std::discrete_distribution<int> pick({p[0], p[1], p[2]});
  return static_cast<ForceLevel>(pick(rng));
}

template <typename Rng>
double sample_at_level(const ForceSampler& sampler, ForceLevel level, Rng& rng)
{
  std::normal_distribution<double> draw(sampler.level_means[static_cast<std::size_t>(level)],
                                        sampler.sigma);
  return sampler.limits.clamp(draw(rng));
}

/// Draws a strength level with the role's odds, then a Gaussian magnitude at
/// that level, clamped to the force limits.
template <typename Rng>
double sample_magnitude(const ForceSampler& sampler, SamplerRole role, Rng& rng)
{
  return sample_at_level(sampler, sample_level(sampler, role, rng), rng);
}

}  // namespace negotiation::action
