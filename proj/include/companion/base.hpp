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

// Holonomic three-omniwheel base: wheel kinematics, the speed and
// acceleration limiter, and planar pose integration.

#pragma once

#include <array>

namespace companion {

// Planar velocity command in the robot frame. vx forward, vy left, omega
// counter-clockwise.
struct BodyTwist {
  double vx = 0.0;
  double vy = 0.0;
  double omega = 0.0;

  bool operator==(const BodyTwist&) const = default;
  double planar_speed() const;
};

// Robot pose in the world frame. heading is kept in (-pi, pi].
struct Pose {
  double x = 0.0;
  double y = 0.0;
  double heading = 0.0;

  bool operator==(const Pose&) const = default;
};

using WheelSpeeds = std::array<double, 3>;

// Three omniwheels mounted tangentially on a circle of radius base_radius.
// Bearing 0 points along the robot's forward axis.
class WheelLayout {
 public:
  // Front left, back and front right at 60, 180 and 300 degrees.
  WheelLayout();
  WheelLayout(std::array<double, 3> mount_bearings, double base_radius,
              double wheel_radius);

  const std::array<double, 3>& mount_bearings() const { return bearings_; }
  double base_radius() const { return base_radius_; }
  double wheel_radius() const { return wheel_radius_; }

  // Rows map (vx, vy, omega) to wheel angular speed.
  const std::array<std::array<double, 3>, 3>& ik_matrix() const { return ik_; }
  const std::array<std::array<double, 3>, 3>& fk_matrix() const { return fk_; }

 private:
  std::array<double, 3> bearings_;
  double base_radius_;
  double wheel_radius_;
  std::array<std::array<double, 3>, 3> ik_{};
  std::array<std::array<double, 3>, 3> fk_{};
};

WheelSpeeds inverse_kinematics(const BodyTwist& twist, const WheelLayout& layout);
BodyTwist forward_kinematics(const WheelSpeeds& wheels, const WheelLayout& layout);

struct MotionLimits {
  static constexpr double kPlatformCeiling = 0.8;  // m/s

  double v_max = 0.35;     // m/s, planar norm
  double a_max = 0.3;      // m/s^2, planar norm of the velocity change
  double omega_max = 0.5;  // rad/s

  void validate() const;
};

// Clamps the planar speed of target to v_max, then limits the planar change
// from previous to a_max * dt, then clamps |omega| to omega_max.
BodyTwist limit(const BodyTwist& target, const BodyTwist& previous, double dt,
                const MotionLimits& limits);

// Integrates a constant body twist over dt along the exact arc.
Pose integrate(const Pose& pose, const BodyTwist& twist, double dt);

}  // namespace companion
