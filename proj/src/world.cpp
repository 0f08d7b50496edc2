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

#include "companion/world.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "companion/errors.hpp"

namespace companion {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

bool segments_intersect(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
  const Vec2 r = b - a;
  const Vec2 s = d - c;
  const double denom = cross(r, s);
  if (std::abs(denom) < 1e-15) return false;
  const double t = cross(c - a, s) / denom;
  const double u = cross(c - a, r) / denom;
  return t >= 0.0 && t <= 1.0 && u >= 0.0 && u <= 1.0;
}

std::optional<std::size_t> find_collision(const World& world, Vec2 from,
                                          Vec2 to) {
  for (std::size_t i = 0; i < world.obstacles.size(); ++i) {
    const bool hit = std::visit(
        Overloaded{
            [&](const Circle& c) { return norm(to - c.center) < c.radius; },
            [&](const Segment& s) {
              return segments_intersect(from, to, s.p1, s.p2) ||
                     boundary_distance(s, to) < 1e-9;
            }},
        world.obstacles[i]);
    if (hit) return i;
  }
  return std::nullopt;
}

// Independent RNG stream per step and axis.
std::uint64_t sensing_seed(std::uint64_t base, std::uint64_t step, int axis) {
  std::seed_seq seq{static_cast<std::uint32_t>(base),
                    static_cast<std::uint32_t>(base >> 32),
                    static_cast<std::uint32_t>(step),
                    static_cast<std::uint32_t>(step >> 32),
                    static_cast<std::uint32_t>(axis)};
  std::uint32_t words[2];
  seq.generate(words, words + 2);
  return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

void sense(KinematicChain& chain, std::span<const ContactForce> contacts,
           double noise_std, std::uint64_t seed, double dt) {
  auto states = simulate_sensing(chain, contacts, noise_std, seed);
  const auto before = chain.states();
  for (std::size_t i = 0; i < states.size(); ++i) {
    states[i].theta_dot = (states[i].theta_s - before[i].theta_s) / dt;
  }
  chain.set_states(states);
}

}  // namespace

void validate_obstacle(const Obstacle& obstacle) {
  std::visit(Overloaded{[](const Circle& c) {
                          if (!(c.radius > 0.0)) {
                            throw ConfigError("circle radius must be positive");
                          }
                        },
                        [](const Segment& s) {
                          if (s.p1 == s.p2) {
                            throw ConfigError("segment endpoints must differ");
                          }
                        }},
             obstacle);
}

void RangeSensor::validate() const {
  if (ray_count < 1) throw ConfigError("sensor ray_count must be at least 1");
  if (!(fov > 0.0) || fov > 2.0 * std::numbers::pi + 1e-12) {
    throw ConfigError("sensor fov must lie in (0, 2*pi]");
  }
  if (!(max_range > 0.0)) throw ConfigError("sensor max_range must be positive");
}

std::vector<double> RangeSensor::ray_bearings() const {
  std::vector<double> out(static_cast<std::size_t>(ray_count));
  for (int i = 0; i < ray_count; ++i) {
    out[i] = mount_bearing - fov / 2.0 + fov * (i + 0.5) / ray_count;
  }
  return out;
}

std::vector<RangeSensor> World::default_sensor_suite() {
  const double laser_fov = deg_to_rad(60.0);
  const double sonar_fov = deg_to_rad(30.0);
  return {
      {SensorKind::Laser, deg_to_rad(-90.0), laser_fov, 15, 3.0},
      {SensorKind::Laser, 0.0, laser_fov, 15, 3.0},
      {SensorKind::Laser, deg_to_rad(90.0), laser_fov, 15, 3.0},
      {SensorKind::Sonar, deg_to_rad(30.0), sonar_fov, 1, 5.0},
      {SensorKind::Sonar, deg_to_rad(-30.0), sonar_fov, 1, 5.0},
  };
}

std::optional<double> ray_hit(const Obstacle& obstacle, Vec2 origin, Vec2 dir) {
  return std::visit(
      Overloaded{
          [&](const Circle& c) -> std::optional<double> {
            const Vec2 oc = origin - c.center;
            const double b = dot(dir, oc);
            const double k = dot(oc, oc) - c.radius * c.radius;
            const double disc = b * b - k;
            if (disc < 0.0) return std::nullopt;
            const double root = std::sqrt(disc);
            const double t1 = -b - root;
            const double t2 = -b + root;
            if (t1 >= 0.0) return t1;
            if (t2 >= 0.0) return t2;
            return std::nullopt;
          },
          [&](const Segment& s) -> std::optional<double> {
            const Vec2 e = s.p2 - s.p1;
            const double denom = cross(dir, e);
            if (std::abs(denom) < 1e-15) return std::nullopt;
            const Vec2 w = s.p1 - origin;
            const double t = cross(w, e) / denom;
            const double u = cross(w, dir) / denom;
            if (t < 0.0 || u < 0.0 || u > 1.0) return std::nullopt;
            return t;
          }},
      obstacle);
}

double boundary_distance(const Obstacle& obstacle, Vec2 p, Vec2* closest) {
  return std::visit(
      Overloaded{[&](const Circle& c) {
                   const Vec2 d = p - c.center;
                   const double r = norm(d);
                   if (closest) {
                     const Vec2 u = r > 0.0 ? d * (1.0 / r) : Vec2{1.0, 0.0};
                     *closest = c.center + u * c.radius;
                   }
                   return std::abs(r - c.radius);
                 },
                 [&](const Segment& s) {
                   const Vec2 e = s.p2 - s.p1;
                   const double t =
                       std::clamp(dot(p - s.p1, e) / dot(e, e), 0.0, 1.0);
                   const Vec2 q = s.p1 + e * t;
                   if (closest) *closest = q;
                   return norm(p - q);
                 }},
      obstacle);
}

std::vector<double> raycast(const World& world, const Pose& pose,
                            const RangeSensor& sensor) {
  const Vec2 origin{pose.x, pose.y};
  const auto bearings = sensor.ray_bearings();
  std::vector<double> out(bearings.size(), sensor.max_range);
  for (std::size_t i = 0; i < bearings.size(); ++i) {
    const Vec2 dir = unit_from_angle(pose.heading + bearings[i]);
    for (const auto& obstacle : world.obstacles) {
      if (auto t = ray_hit(obstacle, origin, dir); t && *t < out[i]) out[i] = *t;
    }
  }
  return out;
}

std::vector<ObstacleReading> obstacle_readings(const World& world,
                                               const Pose& pose) {
  const Vec2 p{pose.x, pose.y};
  std::vector<ObstacleReading> out;
  out.reserve(world.obstacles.size());
  for (const auto& obstacle : world.obstacles) {
    Vec2 q;
    const double d = boundary_distance(obstacle, p, &q);
    const Vec2 v = q - p;
    const double world_bearing = std::atan2(v.y, v.x);
    out.push_back({d, normalize_angle(world_bearing - pose.heading)});
  }
  return out;
}

std::optional<ObstacleReading> nearest_obstacle(const World& world,
                                                const Pose& pose) {
  const auto readings = obstacle_readings(world, pose);
  if (readings.empty()) return std::nullopt;
  return *std::min_element(readings.begin(), readings.end(),
                           [](const auto& a, const auto& b) {
                             return a.distance < b.distance;
                           });
}

bool PushInput::active_at(double t) const { return t >= start && t < end; }

void PushInput::validate() const {
  if (!(start < end)) throw ConfigError("push window requires start < end");
  if (!std::isfinite(force.x) || !std::isfinite(force.y)) {
    throw ConfigError("push force must be finite");
  }
}

void SimState::validate() const {
  for (const auto& o : world.obstacles) validate_obstacle(o);
  for (const auto& s : world.sensors) s.validate();
  control.validate();
  estimator.validate();
  compliance.validate();
  limits.validate();
  if (!(noise_std >= 0.0)) throw ConfigError("noise_std must be non-negative");
  if (!pitch_chain.find(estimator.pitch_joint)) {
    throw ConfigError("pitch joint '" + estimator.pitch_joint + "' not in chain");
  }
  if (!roll_chain.find(estimator.roll_joint)) {
    throw ConfigError("roll joint '" + estimator.roll_joint + "' not in chain");
  }
}

StepResult step(const SimState& state, std::span<const PushInput> pushes,
                double dt) {
  if (!(dt > 0.0 && dt <= 0.1)) {
    throw std::invalid_argument("step dt must lie in (0, 0.1]");
  }
  if (state.halted) throw std::logic_error("simulation halted after a collision");

  StepResult result{state, {}, std::nullopt};
  SimState& next = result.state;
  const double t = state.clock;

  // Sense. Forward force loads the pitch plane; a push to the right (-fy)
  // loads the roll plane in its positive direction.
  std::vector<ContactForce> pitch_contacts;
  std::vector<ContactForce> roll_contacts;
  for (const auto& push : pushes) {
    if (!push.active_at(t)) continue;
    pitch_contacts.push_back(
        {push.link_index, push.application_distance, {push.force.x, 0.0}});
    roll_contacts.push_back(
        {push.link_index, push.application_distance, {-push.force.y, 0.0}});
  }
  sense(next.pitch_chain, pitch_contacts, state.noise_std,
        sensing_seed(state.rng_seed, state.step_count, 0), dt);
  sense(next.roll_chain, roll_contacts, state.noise_std,
        sensing_seed(state.rng_seed, state.step_count, 1), dt);

  // Estimate.
  const auto raw = motion_vector(next.pitch_chain, next.roll_chain, state.estimator);
  const auto estimate = smooth_estimate(state.filtered, raw, state.estimator);
  if (state.estimator.smoothing_alpha < 1.0) next.filtered = estimate;

  // Gate.
  const bool assisted = state.control.loop == LoopMode::Assisted;
  const auto readings = obstacle_readings(state.world, state.pose);
  std::optional<ObstacleReading> nearest;
  if (!readings.empty()) {
    nearest = *std::min_element(
        readings.begin(), readings.end(),
        [](const auto& a, const auto& b) { return a.distance < b.distance; });
  }
  const auto gated =
      gate(estimate, state.control,
           nearest ? std::optional<double>(nearest->distance) : std::nullopt,
           state.estimator.deadband);

  // Command, comply, policy.
  BodyTwist target;
  if (gated.passed()) {
    target = to_body_twist(gated.estimate, state.control.side_motion,
                           state.estimator);
  }
  if (assisted) {
    const ScalingMode mode =
        state.control.side_motion == SideMotionMode::VerticalAxisRotation
            ? ScalingMode::DirectionPreserving
            : ScalingMode::ComponentWise;
    target = state.blend_obstacles
                 ? scale_twist_blended(target, readings, state.compliance,
                                       state.control.hard_stop, mode)
                 : scale_twist(target, nearest, state.compliance,
                               state.control.hard_stop, mode);
  }
  target = apply_policy(target, state.control);
  if (assisted) {
    target = clip_to_stopping_envelope(target, readings, state.control.hard_stop,
                                       0.5 * state.limits.a_max, dt);
  }

  // Limit and integrate.
  BodyTwist twist = limit(target, state.twist, dt, state.limits);
  Pose pose = integrate(state.pose, twist, dt);
  if (assisted && !state.world.obstacles.empty()) {
    // The envelope works on the straight-line approach; along an arc the
    // true distance can still dip under hard_stop, so shrink the planar
    // velocity until the integrated pose clears it.
    const auto clears = [&](const Pose& p) {
      const auto n = nearest_obstacle(state.world, p);
      return !n || n->distance >= state.control.hard_stop;
    };
    if (!clears(pose) && (!nearest || nearest->distance >= state.control.hard_stop)) {
      double lo = 0.0;
      double hi = 1.0;
      for (int i = 0; i < 60; ++i) {
        const double mid = 0.5 * (lo + hi);
        const BodyTwist trial{twist.vx * mid, twist.vy * mid, twist.omega};
        (clears(integrate(state.pose, trial, dt)) ? lo : hi) = mid;
      }
      twist = {twist.vx * lo, twist.vy * lo, twist.omega};
      pose = integrate(state.pose, twist, dt);
    }
  }

  next.twist = twist;
  next.pose = pose;
  next.clock = t + dt;
  next.step_count = state.step_count + 1;

  if (auto hit = find_collision(state.world, {state.pose.x, state.pose.y},
                                {pose.x, pose.y})) {
    next.halted = true;
    result.collision = Collision{next.clock, pose, *hit};
  }

  auto& rec = result.record;
  rec.t = next.clock;
  rec.pose = pose;
  rec.twist = twist;
  rec.estimate = estimate;
  rec.direction = classify_direction(estimate, state.estimator);
  rec.locked = state.control.locked;
  rec.loop = state.control.loop;
  rec.side_motion = state.control.side_motion;
  rec.blocked = gated.blocked;
  if (const auto after = nearest_obstacle(state.world, pose)) {
    rec.nearest_d = after->distance;
    rec.r_c = generalized_logistic(after->distance, state.compliance);
  } else {
    rec.r_c = generalized_logistic(kInf, state.compliance);
  }
  return result;
}

}  // namespace companion
