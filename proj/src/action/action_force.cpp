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

#include "negotiation/action/action_force.hpp"

#include <cmath>

#include "negotiation/core/errors.hpp"

namespace negotiation::action {

PlanarWrench action_force_step(ActionForceState& state, double dt, bool at_goal)
{
  if (at_goal) {
    state.f_act = {};
    return state.f_act;
  }
  const double alpha = dt / state.t_transient;
  state.f_act = state.f_act + (state.f_ref - state.f_act) * alpha;
  return state.f_act;
}

void set_reference(ActionForceState& state, const Vec2& direction, double magnitude,
                   const ForceLimits& limits)
{
  state.f_ref = PlanarWrench::from_force(direction * limits.clamp(magnitude));
}

std::string_view to_string(SamplerRole role)
{
  switch (role) {
    case SamplerRole::Kcg:
      return "kcg";
    case SamplerRole::Soft:
      return "soft";
    case SamplerRole::Hard:
      return "hard";
  }
  return "kcg";
}

std::array<double, 3> ForceSampler::spread_means(const ForceLimits& limits)
{
  const double third = (limits.f_max - limits.f_min) / 3.0;
  return {limits.f_min + 0.5 * third, limits.f_min + 1.5 * third, limits.f_min + 2.5 * third};
}

void ForceSampler::validate() const
{
  if (!(limits.f_min > 0.0) || !(limits.f_min < limits.f_max)) {
    throw ConfigError("force limits require 0 < f_min < f_max");
  }
  if (!(sigma > 0.0)) {
    throw ConfigError("sampler sigma must be positive");
  }
  for (double mu : level_means) {
    if (mu < limits.f_min || mu > limits.f_max) {
      throw ConfigError("level mean outside force limits");
    }
  }
  for (const auto& row : level_probs) {
    double sum = 0.0;
    for (double p : row) {
      if (p < 0.0) {
        throw ConfigError("negative level probability");
      }
      sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
      throw ConfigError("level probabilities must sum to 1");
    }
  }
}

}  // namespace negotiation::action
