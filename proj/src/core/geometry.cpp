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

#include "negotiation/core/geometry.hpp"

#include <numbers>

#include "negotiation/core/errors.hpp"

namespace negotiation {

double normalize_angle(double theta)
{
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double wrapped = std::fmod(theta, two_pi);
  if (wrapped <= -std::numbers::pi) {
    wrapped += two_pi;
  } else if (wrapped > std::numbers::pi) {
    wrapped -= two_pi;
  }
  return wrapped;
}

double planar_distance(const PlanarPose& a, const PlanarPose& b)
{
  return std::hypot(b.x - a.x, b.y - a.y);
}

Vec2 unit_direction(const PlanarPose& from, const PlanarPose& to)
{
  const Vec2 delta{to.x - from.x, to.y - from.y};
  const double len = delta.norm();
  if (!(len > kDirectionEpsilon)) {
    throw DegenerateDirection();
  }
  return delta * (1.0 / len);
}

Vec2 rotate_into_frame(const Vec2& v, double theta)
{
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return {c * v.x + s * v.y, -s * v.x + c * v.y};
}

Vec2 rotate_out_of_frame(const Vec2& v, double theta)
{
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return {c * v.x - s * v.y, s * v.x + c * v.y};
}

}  // namespace negotiation
