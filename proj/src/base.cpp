// Copyright 2026 The Walk Companion Authors
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

#include "companion/base.hpp"

#include <cmath>
#include <string>

#include "companion/errors.hpp"
#include "companion/geometry.hpp"

namespace companion {

double BodyTwist::planar_speed() const { return std::hypot(vx, vy); }

WheelLayout::WheelLayout()
    : WheelLayout({deg_to_rad(60.0), deg_to_rad(180.0), deg_to_rad(300.0)},
                  0.2, 0.05) {}

WheelLayout::WheelLayout(std::array<double, 3> mount_bearings,
                         double base_radius, double wheel_radius)
    : bearings_(mount_bearings),
      base_radius_(base_radius),
      wheel_radius_(wheel_radius) {
  if (!(base_radius_ > 0.0) || !(wheel_radius_ > 0.0)) {
    throw ConfigError("wheel layout radii must be positive");
  }
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      if (std::abs(normalize_angle(bearings_[i] - bearings_[j])) < 1e-9) {
        throw ConfigError("wheel mount bearings must be pairwise distinct");
      }
    }
  }
  for (int i = 0; i < 3; ++i) {
    ik_[i] = {-std::sin(bearings_[i]) / wheel_radius_,
              std::cos(bearings_[i]) / wheel_radius_,
              base_radius_ / wheel_radius_};
  }

  // Adjugate inverse of the 3x3 IK matrix.
  const auto& m = ik_;
  const double c00 = m[1][1] * m[2][2] - m[1][2] * m[2][1];
  const double c01 = m[1][2] * m[2][0] - m[1][0] * m[2][2];
  const double c02 = m[1][0] * m[2][1] - m[1][1] * m[2][0];
  const double det = m[0][0] * c00 + m[0][1] * c01 + m[0][2] * c02;
  // det scales with 1/r^3; compare against the same scale.
  const double scale = 1.0 / (wheel_radius_ * wheel_radius_ * wheel_radius_);
  if (std::abs(det) < 1e-9 * scale * base_radius_) {
    throw ConfigError("wheel layout is singular (IK matrix not invertible)");
  }
  const double inv = 1.0 / det;
  fk_[0] = {c00 * inv, (m[0][2] * m[2][1] - m[0][1] * m[2][2]) * inv,
            (m[0][1] * m[1][2] - m[0][2] * m[1][1]) * inv};
  fk_[1] = {c01 * inv, (m[0][0] * m[2][2] - m[0][2] * m[2][0]) * inv,
            (m[0][2] * m[1][0] - m[0][0] * m[1][2]) * inv};
  fk_[2] = {c02 * inv, (m[0][1] * m[2][0] - m[0][0] * m[2][1]) * inv,
            (m[0][0] * m[1][1] - m[0][1] * m[1][0]) * inv};
}

WheelSpeeds inverse_kinematics(const BodyTwist& twist,
                               const WheelLayout& layout) {
  WheelSpeeds out{};
  const auto& m = layout.ik_matrix();
  for (int i = 0; i < 3; ++i) {
    out[i] = m[i][0] * twist.vx + m[i][1] * twist.vy + m[i][2] * twist.omega;
  }
  return out;
}

BodyTwist forward_kinematics(const WheelSpeeds& wheels,
                             const WheelLayout& layout) {
  const auto& m = layout.fk_matrix();
  BodyTwist out;
  out.vx = m[0][0] * wheels[0] + m[0][1] * wheels[1] + m[0][2] * wheels[2];
  out.vy = m[1][0] * wheels[0] + m[1][1] * wheels[1] + m[1][2] * wheels[2];
  out.omega = m[2][0] * wheels[0] + m[2][1] * wheels[1] + m[2][2] * wheels[2];
  return out;
}

void MotionLimits::validate() const {
  if (!(v_max > 0.0) || v_max > kPlatformCeiling) {
    throw ConfigError("v_max must lie in (0, " +
                      std::to_string(kPlatformCeiling) + "] m/s");
  }
  if (!(a_max > 0.0)) throw ConfigError("a_max must be positive");
  if (!(omega_max > 0.0)) throw ConfigError("omega_max must be positive");
}

namespace {

// Scales v onto the disc of radius bound; rounding never leaves it outside.
Vec2 clamp_norm(Vec2 v, double bound) {
  const double n = norm(v);
  if (n <= bound) return v;
  double s = bound / n;
  while (s > 0.0 && norm(v * s) > bound) s = std::nextafter(s, 0.0);
  return v * s;
}

}  // namespace

BodyTwist limit(const BodyTwist& target, const BodyTwist& previous, double dt,
                const MotionLimits& limits) {
  Vec2 v = clamp_norm({target.vx, target.vy}, limits.v_max);
  const Vec2 prev{previous.vx, previous.vy};
  v = clamp_norm(prev + clamp_norm(v - prev, limits.a_max * dt), limits.v_max);

  BodyTwist out{v.x, v.y, target.omega};
  if (out.omega > limits.omega_max) out.omega = limits.omega_max;
  if (out.omega < -limits.omega_max) out.omega = -limits.omega_max;
  return out;
}

Pose integrate(const Pose& pose, const BodyTwist& twist, double dt) {
  const double dtheta = twist.omega * dt;
  Vec2 body_disp;
  if (std::abs(twist.omega) < 1e-9) {
    body_disp = {twist.vx * dt, twist.vy * dt};
  } else {
    const double s = std::sin(dtheta) / twist.omega;
    const double c = (1.0 - std::cos(dtheta)) / twist.omega;
    body_disp = {s * twist.vx - c * twist.vy, c * twist.vx + s * twist.vy};
  }
  const Vec2 world_disp = rotate(body_disp, pose.heading);
  return {pose.x + world_disp.x, pose.y + world_disp.y,
          normalize_angle(pose.heading + dtheta)};
}

}  // namespace companion
