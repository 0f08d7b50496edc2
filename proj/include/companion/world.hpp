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

// 2D world with static obstacles, simulated range sensors, distance queries
// and the simulation step that runs the full pipeline:
//   sense -> estimate -> gate -> twist -> comply -> policy -> limit -> integrate

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "companion/base.hpp"
#include "companion/compliance.hpp"
#include "companion/control.hpp"
#include "companion/geometry.hpp"
#include "companion/intention.hpp"
#include "companion/kinematics.hpp"

namespace companion {

struct Circle {
  Vec2 center;
  double radius = 0.0;
};

struct Segment {
  Vec2 p1;
  Vec2 p2;
};

using Obstacle = std::variant<Circle, Segment>;

void validate_obstacle(const Obstacle& obstacle);

enum class SensorKind { Laser, Sonar };

struct RangeSensor {
  SensorKind kind = SensorKind::Laser;
  double mount_bearing = 0.0;  // rad, robot frame
  double fov = 0.0;            // rad
  int ray_count = 1;
  double max_range = 1.0;      // m

  void validate() const;
  // Robot-frame bearing of each ray, at the centre of equal slices of the fov.
  std::vector<double> ray_bearings() const;
};

struct World {
  std::vector<Obstacle> obstacles;
  std::vector<RangeSensor> sensors;

  // Three lasers (-90, 0, +90 deg; 60 deg fov; 15 rays; 3 m) and two sonars
  // (+-30 deg; 30 deg fov; 1 ray; 5 m).
  static std::vector<RangeSensor> default_sensor_suite();
};

// Distance along a unit ray to the obstacle boundary, or nullopt.
std::optional<double> ray_hit(const Obstacle& obstacle, Vec2 origin, Vec2 dir);
// Euclidean distance from p to the obstacle boundary and the closest point.
double boundary_distance(const Obstacle& obstacle, Vec2 p, Vec2* closest = nullptr);

// One reading per ray; max_range where nothing is hit within range.
std::vector<double> raycast(const World& world, const Pose& pose,
                            const RangeSensor& sensor);

// Distance and robot-frame bearing to every obstacle.
std::vector<ObstacleReading> obstacle_readings(const World& world,
                                               const Pose& pose);
// The closest obstacle, or nullopt for an empty world.
std::optional<ObstacleReading> nearest_obstacle(const World& world,
                                                const Pose& pose);

// Scripted push in the robot frame: fx forward, fy left.
struct PushInput {
  Vec2 force;
  std::size_t link_index = 2;
  double application_distance = 0.3;
  double start = 0.0;  // s, inclusive
  double end = 0.0;    // s, exclusive

  bool active_at(double t) const;
  void validate() const;
};

struct SimState {
  World world;
  KinematicChain pitch_chain = default_chain(JointAxis::Pitch);
  KinematicChain roll_chain = default_chain(JointAxis::Roll);
  Pose pose;
  BodyTwist twist;
  ControlConfig control;
  EstimatorConfig estimator;
  ComplianceParams compliance;
  MotionLimits limits;
  double noise_std = 0.0;  // N*m on every torque channel
  bool blend_obstacles = false;
  double clock = 0.0;
  std::uint64_t rng_seed = 0;
  std::uint64_t step_count = 0;
  std::optional<IntentionEstimate> filtered;
  bool halted = false;

  void validate() const;
};

// What happened in one step, evaluated at the new pose.
struct StepRecord {
  double t = 0.0;
  Pose pose;
  BodyTwist twist;
  IntentionEstimate estimate;
  PushDirection direction;
  double r_c = 1.0;
  std::optional<double> nearest_d;
  bool locked = false;
  LoopMode loop = LoopMode::Assisted;
  SideMotionMode side_motion = SideMotionMode::VerticalAxisRotation;
  std::optional<BlockReason> blocked;
};

struct Collision {
  double t = 0.0;
  Pose pose;
  std::size_t obstacle_index = 0;
};

struct StepResult {
  SimState state;
  StepRecord record;
  std::optional<Collision> collision;
};

// Advances the simulation by dt in (0, 0.1]. Only pushes active at the
// current clock contribute. A collision halts the returned state; stepping a
// halted state throws std::logic_error.
StepResult step(const SimState& state, std::span<const PushInput> pushes,
                double dt);

}  // namespace companion
