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

// Obstacle-distance compliance: the generalized logistic law, its
// simplified form and the scaling of a body twist near obstacles.

#pragma once

#include <optional>
#include <span>

#include "companion/base.hpp"

namespace companion {

struct ComplianceParams {
  double lower_A = 0.0;  // lower compliance limit
  double upper_K = 1.0;  // upper compliance limit
  double C = 1.0;
  double v = 1.0;        // growth shape near the limits
  double M = 1.0;        // m, midpoint distance
  double B = 4.0;        // 1/m, growth rate

  void validate() const;
};

// A + (K - A) / (C + exp(-B (d - M)))^(1/v)
double generalized_logistic(double d, const ComplianceParams& p);

// R_c(d) = 1 / (1 + exp(-B (d - 1)))
double compliance(double d, double B);

// Distance from the robot centre to an obstacle boundary and the bearing to
// it in the robot frame.
struct ObstacleReading {
  double distance = 0.0;
  double bearing = 0.0;
};

enum class ScalingMode {
  // Only the velocity component pointing at the obstacle is scaled.
  ComponentWise,
  // The component-wise result projected back onto the input velocity, so its
  // direction (and a zero lateral component) is kept. Head-on this equals
  // ComponentWise; inside hard_stop all planar motion stops.
  DirectionPreserving,
};

// Factor applied to the toward-obstacle motion: the logistic law clamped to
// [0, 1], and exactly 0 inside hard_stop.
double approach_factor(double distance, const ComplianceParams& p,
                       double hard_stop);

// Scales the toward-obstacle part of the planar velocity by the compliance
// factor. Motion away from (or parallel to) the obstacle and omega are left
// untouched. No reading means no obstacle in range.
BodyTwist scale_twist(const BodyTwist& twist,
                      const std::optional<ObstacleReading>& nearest,
                      const ComplianceParams& p, double hard_stop = 0.25,
                      ScalingMode mode = ScalingMode::ComponentWise);

// Applies scale_twist once per reading, so the factors multiply.
BodyTwist scale_twist_blended(const BodyTwist& twist,
                              std::span<const ObstacleReading> readings,
                              const ComplianceParams& p, double hard_stop = 0.25,
                              ScalingMode mode = ScalingMode::ComponentWise);

// Largest approach speed that, covered for one step of dt and then braked at
// decel per step, keeps the travelled distance within gap.
double max_safe_approach_speed(double gap, double decel, double dt);

// Uniformly scales the planar velocity so that, for every reading, the
// approach speed stays within max_safe_approach_speed(distance - hard_stop)
// at the approach component's share of decel.
BodyTwist clip_to_stopping_envelope(const BodyTwist& twist,
                                    std::span<const ObstacleReading> readings,
                                    double hard_stop, double decel, double dt);

}  // namespace companion
