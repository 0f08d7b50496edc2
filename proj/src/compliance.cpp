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

#include "companion/compliance.hpp"

#include <algorithm>
#include <cmath>

#include "companion/errors.hpp"
#include "companion/geometry.hpp"

namespace companion {

void ComplianceParams::validate() const {
  if (!(upper_K > lower_A)) throw ConfigError("compliance requires K > A");
  if (!(v > 0.0)) throw ConfigError("compliance requires v > 0");
  if (!(C > 0.0)) throw ConfigError("compliance requires C > 0");
  if (!(B > 0.0)) throw ConfigError("compliance requires B > 0");
}

double generalized_logistic(double d, const ComplianceParams& p) {
  const double denom = std::pow(p.C + std::exp(-p.B * (d - p.M)), 1.0 / p.v);
  return p.lower_A + (p.upper_K - p.lower_A) / denom;
}

double compliance(double d, double B) {
  return 1.0 / (1.0 + std::exp(-B * (d - 1.0)));
}

double approach_factor(double distance, const ComplianceParams& p,
                       double hard_stop) {
  if (distance < hard_stop) return 0.0;
  return std::clamp(generalized_logistic(distance, p), 0.0, 1.0);
}

BodyTwist scale_twist(const BodyTwist& twist,
                      const std::optional<ObstacleReading>& nearest,
                      const ComplianceParams& p, double hard_stop,
                      ScalingMode mode) {
  if (!nearest || std::isinf(nearest->distance)) return twist;
  const Vec2 v{twist.vx, twist.vy};
  const Vec2 n = unit_from_angle(nearest->bearing);
  const double toward = dot(v, n);
  // Round-off from the bearing's cosine must not count as approach.
  if (toward <= 1e-12) return twist;

  const double factor = approach_factor(nearest->distance, p, hard_stop);
  Vec2 scaled;
  if (mode == ScalingMode::ComponentWise) {
    scaled = v - n * ((1.0 - factor) * toward);
  } else if (factor == 0.0) {
    scaled = {};
  } else {
    // Projection of the component-wise result back onto v.
    const double c = toward / norm(v);
    scaled = v * (1.0 - (1.0 - factor) * c * c);
  }
  return {scaled.x, scaled.y, twist.omega};
}

BodyTwist scale_twist_blended(const BodyTwist& twist,
                              std::span<const ObstacleReading> readings,
                              const ComplianceParams& p, double hard_stop,
                              ScalingMode mode) {
  BodyTwist out = twist;
  for (const auto& r : readings) out = scale_twist(out, r, p, hard_stop, mode);
  return out;
}

double max_safe_approach_speed(double gap, double decel, double dt) {
  if (!(gap > 0.0)) return 0.0;
  if (std::isinf(gap)) return gap;
  // Travel for speed v is dt * sum_k max(0, v - k*u) with u = decel*dt. On
  // [n*u, (n+1)*u) that is dt * ((n+1) v - u n (n+1) / 2).
  const double u = decel * dt;
  const double budget = gap / dt;
  if (!(u > 0.0)) return budget;
  double n = std::floor((std::sqrt(1.0 + 8.0 * budget / u) - 1.0) / 2.0);
  while (n > 0.0 && u * n * (n + 1.0) / 2.0 > budget) n -= 1.0;
  while (u * (n + 1.0) * (n + 2.0) / 2.0 <= budget) n += 1.0;
  return (budget + u * n * (n + 1.0) / 2.0) / (n + 1.0);
}

BodyTwist clip_to_stopping_envelope(const BodyTwist& twist,
                                    std::span<const ObstacleReading> readings,
                                    double hard_stop, double decel, double dt) {
  const Vec2 v{twist.vx, twist.vy};
  double factor = 1.0;
  for (const auto& r : readings) {
    const double toward = dot(v, unit_from_angle(r.bearing));
    if (toward <= 1e-12) continue;
    // Braking shrinks the whole planar velocity, so the approach component
    // only brakes at decel times the approach cosine.
    const double allowed =
        max_safe_approach_speed(r.distance - hard_stop, decel * toward / norm(v), dt);
    if (toward > allowed) factor = std::min(factor, allowed / toward);
  }
  if (factor >= 1.0) return twist;
  return {twist.vx * factor, twist.vy * factor, twist.omega};
}

}  // namespace companion
