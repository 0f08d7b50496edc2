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

// Planar joint chain (knee -> hip -> torso) and the statics that turn a
// surface contact force into joint torques and sensed deflections.
//
// A chain lives in one vertical plane. Each joint carries an axis tag; joints
// whose axis matches the chain's plane rotate in it, the rest are rigid in
// that plane (they keep their link geometry but contribute no motion and
// report no torque). The pitch and roll channels are therefore two chains
// built from the same joint list.
//
// Plane coordinates are (h, z): h horizontal, z up. Joint angles are relative
// and measured from the vertical, so an all-zero chain stands upright.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "companion/geometry.hpp"

namespace companion {

enum class JointAxis { Pitch, Roll };

struct JointSpec {
  std::string name;
  JointAxis axis = JointAxis::Pitch;
  double link_length = 0.3;       // m
  double link_mass = 1.0;         // kg
  double com_offset = 0.15;       // m along the link from its joint
  double stiffness = 150.0;       // N*m/rad
  double coulomb_friction = 0.0;  // N*m
  double viscous_friction = 0.1;  // N*m*s/rad
  double angle_min = -1.0;        // rad
  double angle_max = 1.0;         // rad

  void validate() const;
};

struct JointState {
  double theta_c = 0.0;    // commanded angle
  double theta_s = 0.0;    // sensed angle
  double theta_dot = 0.0;  // sensed rate
  double tau_total = 0.0;  // measured joint torque
  double tau_m = 0.0;      // gravity hold torque
  double tau_f = 0.0;      // friction torque

  bool operator==(const JointState&) const = default;
};

struct Joint {
  JointSpec spec;
  JointState state;
};

// Force applied to one link, at a distance along it from its joint.
struct ContactForce {
  std::size_t link_index = 0;
  double application_distance = 0.0;  // m
  Vec2 force;                         // N, (h, z) in the chain plane
};

class KinematicChain {
 public:
  static constexpr double kDefaultGravity = 9.81;

  // joints are base-first. Throws ConfigError on fewer than two joints or an
  // invalid spec.
  KinematicChain(std::vector<Joint> joints, JointAxis plane,
                 double gravity = kDefaultGravity);

  std::size_t size() const { return joints_.size(); }
  std::span<const Joint> joints() const { return joints_; }
  const Joint& joint(std::size_t i) const { return joints_.at(i); }
  JointAxis plane() const { return plane_; }
  double gravity() const { return gravity_; }

  // True when joint i rotates in this chain's plane.
  bool is_active(std::size_t i) const;
  std::optional<std::size_t> find(std::string_view name) const;

  // Replaces joint states; the joint order and specs stay fixed.
  void set_state(std::size_t i, const JointState& state);
  void set_states(std::span<const JointState> states);
  void set_commanded(std::span<const double> angles);
  std::vector<JointState> states() const;

  // Absolute in-plane angle of every link from the vertical, evaluated at the
  // commanded configuration.
  std::vector<double> link_angles() const;
  // Joint origins in the plane (size() + 1 points; the last is the top of the
  // final link).
  std::vector<Vec2> joint_positions() const;
  // A point on link i at distance s from its joint.
  Vec2 point_on_link(std::size_t link, double s) const;

 private:
  std::vector<Joint> joints_;
  JointAxis plane_;
  double gravity_;
};

// Gravity load each joint must hold, tau_m = -dV/dq at the commanded
// configuration. Zero for joints that are rigid in the chain's plane.
std::vector<double> static_hold_torques(const KinematicChain& chain);

// Jacobian-transpose statics of one contact force. Joints above the contact
// link get exactly zero. Throws std::invalid_argument for a malformed contact.
std::vector<double> propagate_contact_force(const KinematicChain& chain,
                                            const ContactForce& contact);

std::vector<double> propagate_contact_forces(
    const KinematicChain& chain, std::span<const ContactForce> contacts);

// tau_f = coulomb * sign(theta_dot) + viscous * theta_dot.
double friction_torque(const JointSpec& spec, double theta_dot);

// Synthesizes what the joints report under the given contacts:
//   tau_total = tau_m + tau_f + tau_ext + N(0, noise_std)
//   theta_s   = theta_c + tau_ext / stiffness (clamped to the joint limits)
// Deterministic for a given seed; noise_std == 0 draws nothing.
std::vector<JointState> simulate_sensing(const KinematicChain& chain,
                                         std::span<const ContactForce> contacts,
                                         double noise_std, std::uint64_t seed);
std::vector<JointState> simulate_sensing(const KinematicChain& chain,
                                         const ContactForce& contact,
                                         double noise_std, std::uint64_t seed);

// The stand-in humanoid: KneePitch, HipPitch, HipRoll with link lengths
// 0.33/0.30/0.45 m and masses 10/8/10 kg, standing.
std::vector<Joint> default_joints();
KinematicChain default_chain(JointAxis plane);

}  // namespace companion
