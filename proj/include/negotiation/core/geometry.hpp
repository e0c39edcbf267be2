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

#include <cmath>

namespace negotiation {

/// Threshold below which two planar positions are treated as coincident [m].
inline constexpr double kDirectionEpsilon = 1e-9;

struct Vec2 {
  double x{0.0};
  double y{0.0};

  double norm() const { return std::hypot(x, y); }
  double dot(const Vec2& o) const { return x * o.x + y * o.y; }

  Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  Vec2 operator-() const { return {-x, -y}; }
  bool operator==(const Vec2&) const = default;
};

inline Vec2 operator*(double s, const Vec2& v) { return v * s; }

/// Force/torque in the plane. Magnitude is the linear-force norm; torque is
/// carried but never enters a threshold comparison.
struct PlanarWrench {
  double fx{0.0};  // N
  double fy{0.0};  // N
  double tau{0.0};  // N*m

  Vec2 force() const { return {fx, fy}; }
  double magnitude() const { return std::hypot(fx, fy); }
  bool finite() const { return std::isfinite(fx) && std::isfinite(fy) && std::isfinite(tau); }

  static PlanarWrench from_force(const Vec2& f, double tau = 0.0) { return {f.x, f.y, tau}; }

  PlanarWrench operator+(const PlanarWrench& o) const { return {fx + o.fx, fy + o.fy, tau + o.tau}; }
  PlanarWrench operator-(const PlanarWrench& o) const { return {fx - o.fx, fy - o.fy, tau - o.tau}; }
  PlanarWrench operator*(double s) const { return {fx * s, fy * s, tau * s}; }
  bool operator==(const PlanarWrench&) const = default;
};

struct PlanarTwist {
  double vx{0.0};  // m/s
  double vy{0.0};  // m/s
  double wz{0.0};  // rad/s

  Vec2 linear() const { return {vx, vy}; }
  double linear_speed() const { return std::hypot(vx, vy); }
  bool finite() const { return std::isfinite(vx) && std::isfinite(vy) && std::isfinite(wz); }
  bool operator==(const PlanarTwist&) const = default;
};

struct PlanarAccel {
  double ax{0.0};  // m/s^2
  double ay{0.0};  // m/s^2
  double alphaz{0.0};  // rad/s^2
  bool operator==(const PlanarAccel&) const = default;
};

/// Wraps an angle into (-pi, pi].
double normalize_angle(double theta);

struct PlanarPose {
  double x{0.0};  // m
  double y{0.0};  // m
  double theta{0.0};  // rad, (-pi, pi]

  Vec2 position() const { return {x, y}; }
  PlanarPose normalized() const { return {x, y, normalize_angle(theta)}; }
  bool operator==(const PlanarPose&) const = default;
};

double planar_distance(const PlanarPose& a, const PlanarPose& b);

/// Unit vector pointing from `from` to `to` in the plane.
/// Throws DegenerateDirection when the positions are closer than kDirectionEpsilon.
Vec2 unit_direction(const PlanarPose& from, const PlanarPose& to);

/// Scalar projection of `v` onto the unit vector `dir`.
inline double project(const Vec2& v, const Vec2& dir) { return v.dot(dir); }

/// Expresses a world-frame vector in a frame rotated by `theta`.
Vec2 rotate_into_frame(const Vec2& v, double theta);

/// Rotates a body-frame vector by `theta` back into the world frame.
Vec2 rotate_out_of_frame(const Vec2& v, double theta);

}  // namespace negotiation
