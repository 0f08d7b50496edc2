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

#include "companion/kinematics.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "companion/errors.hpp"

namespace companion {

void JointSpec::validate() const {
  if (!(link_length > 0.0)) {
    throw ConfigError("joint '" + name + "': link_length must be positive");
  }
  if (!(stiffness > 0.0)) {
    throw ConfigError("joint '" + name + "': stiffness must be positive");
  }
  if (!(coulomb_friction >= 0.0) || !(viscous_friction >= 0.0)) {
    throw ConfigError("joint '" + name + "': friction must be non-negative");
  }
  if (!(link_mass >= 0.0)) {
    throw ConfigError("joint '" + name + "': link_mass must be non-negative");
  }
  if (!(angle_min < angle_max)) {
    throw ConfigError("joint '" + name + "': angle limits must satisfy min < max");
  }
}

KinematicChain::KinematicChain(std::vector<Joint> joints, JointAxis plane,
                               double gravity)
    : joints_(std::move(joints)), plane_(plane), gravity_(gravity) {
  if (joints_.size() < 2) {
    throw ConfigError("kinematic chain needs at least two joints");
  }
  for (const auto& j : joints_) {
    j.spec.validate();
    if (j.state.theta_c < j.spec.angle_min || j.state.theta_c > j.spec.angle_max) {
      throw ConfigError("joint '" + j.spec.name +
                        "': commanded angle outside its limits");
    }
  }
}

bool KinematicChain::is_active(std::size_t i) const {
  return joints_.at(i).spec.axis == plane_;
}

std::optional<std::size_t> KinematicChain::find(std::string_view name) const {
  for (std::size_t i = 0; i < joints_.size(); ++i) {
    if (joints_[i].spec.name == name) return i;
  }
  return std::nullopt;
}

void KinematicChain::set_state(std::size_t i, const JointState& state) {
  joints_.at(i).state = state;
}

void KinematicChain::set_states(std::span<const JointState> states) {
  if (states.size() != joints_.size()) {
    throw std::invalid_argument("state count does not match the chain");
  }
  for (std::size_t i = 0; i < states.size(); ++i) joints_[i].state = states[i];
}

void KinematicChain::set_commanded(std::span<const double> angles) {
  if (angles.size() != joints_.size()) {
    throw std::invalid_argument("angle count does not match the chain");
  }
  for (std::size_t i = 0; i < angles.size(); ++i) {
    joints_[i].state.theta_c = angles[i];
  }
}

std::vector<JointState> KinematicChain::states() const {
  std::vector<JointState> out;
  out.reserve(joints_.size());
  for (const auto& j : joints_) out.push_back(j.state);
  return out;
}

std::vector<double> KinematicChain::link_angles() const {
  std::vector<double> out(joints_.size());
  double phi = 0.0;
  for (std::size_t i = 0; i < joints_.size(); ++i) {
    if (is_active(i)) phi += joints_[i].state.theta_c;
    out[i] = phi;
  }
  return out;
}

namespace {

Vec2 link_direction(double phi) { return {std::sin(phi), std::cos(phi)}; }

// Generalized force at a joint located at pivot from a planar force applied
// at point: F . d(point)/dq.
double joint_torque(Vec2 pivot, Vec2 point, Vec2 force) {
  const Vec2 r = point - pivot;
  return force.x * r.y - force.y * r.x;
}

}  // namespace

std::vector<Vec2> KinematicChain::joint_positions() const {
  const auto phi = link_angles();
  std::vector<Vec2> out(joints_.size() + 1);
  for (std::size_t i = 0; i < joints_.size(); ++i) {
    out[i + 1] = out[i] + link_direction(phi[i]) * joints_[i].spec.link_length;
  }
  return out;
}

Vec2 KinematicChain::point_on_link(std::size_t link, double s) const {
  const auto phi = link_angles();
  const auto p = joint_positions();
  return p.at(link) + link_direction(phi.at(link)) * s;
}

std::vector<double> static_hold_torques(const KinematicChain& chain) {
  const auto phi = chain.link_angles();
  const auto p = chain.joint_positions();
  const std::size_t n = chain.size();
  std::vector<double> tau(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    const auto& spec = chain.joint(k).spec;
    const Vec2 com = p[k] + link_direction(phi[k]) * spec.com_offset;
    const Vec2 weight{0.0, -spec.link_mass * chain.gravity()};
    for (std::size_t j = 0; j <= k; ++j) {
      if (chain.is_active(j)) tau[j] += joint_torque(p[j], com, weight);
    }
  }
  return tau;
}

std::vector<double> propagate_contact_force(const KinematicChain& chain,
                                            const ContactForce& contact) {
  if (contact.link_index >= chain.size()) {
    throw std::invalid_argument("contact link_index " +
                                std::to_string(contact.link_index) +
                                " is outside the chain");
  }
  const double length = chain.joint(contact.link_index).spec.link_length;
  if (!(contact.application_distance >= 0.0) ||
      contact.application_distance > length) {
    throw std::invalid_argument(
        "contact application_distance must lie within the link length");
  }
  const auto p = chain.joint_positions();
  const Vec2 point =
      chain.point_on_link(contact.link_index, contact.application_distance);
  std::vector<double> tau(chain.size(), 0.0);
  for (std::size_t j = 0; j <= contact.link_index; ++j) {
    if (chain.is_active(j)) tau[j] = joint_torque(p[j], point, contact.force);
  }
  return tau;
}

std::vector<double> propagate_contact_forces(
    const KinematicChain& chain, std::span<const ContactForce> contacts) {
  std::vector<double> total(chain.size(), 0.0);
  for (const auto& c : contacts) {
    const auto tau = propagate_contact_force(chain, c);
    for (std::size_t i = 0; i < total.size(); ++i) total[i] += tau[i];
  }
  return total;
}

double friction_torque(const JointSpec& spec, double theta_dot) {
  const double sign = (theta_dot > 0.0) - (theta_dot < 0.0);
  return spec.coulomb_friction * sign + spec.viscous_friction * theta_dot;
}

std::vector<JointState> simulate_sensing(const KinematicChain& chain,
                                         std::span<const ContactForce> contacts,
                                         double noise_std, std::uint64_t seed) {
  if (!(noise_std >= 0.0)) {
    throw std::invalid_argument("noise_std must be non-negative");
  }
  const auto hold = static_hold_torques(chain);
  const auto ext = propagate_contact_forces(chain, contacts);

  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32)};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> noise(0.0, noise_std > 0.0 ? noise_std : 1.0);

  std::vector<JointState> out = chain.states();
  for (std::size_t i = 0; i < out.size(); ++i) {
    const auto& spec = chain.joint(i).spec;
    auto& s = out[i];
    s.tau_m = hold[i];
    s.tau_f = friction_torque(spec, s.theta_dot);
    s.tau_total = s.tau_m + s.tau_f + ext[i];
    if (noise_std > 0.0) s.tau_total += noise(rng);
    s.theta_s = std::clamp(s.theta_c + ext[i] / spec.stiffness, spec.angle_min,
                           spec.angle_max);
  }
  return out;
}

std::vector<JointState> simulate_sensing(const KinematicChain& chain,
                                         const ContactForce& contact,
                                         double noise_std, std::uint64_t seed) {
  return simulate_sensing(chain, std::span<const ContactForce>(&contact, 1),
                          noise_std, seed);
}

std::vector<Joint> default_joints() {
  std::vector<Joint> joints(3);
  joints[0].spec = {"KneePitch", JointAxis::Pitch, 0.33, 10.0, 0.165, 200.0,
                    0.05, 0.1, -0.51, 0.51};
  joints[1].spec = {"HipPitch", JointAxis::Pitch, 0.30, 8.0, 0.15, 150.0,
                    0.05, 0.1, -1.04, 1.04};
  joints[2].spec = {"HipRoll", JointAxis::Roll, 0.45, 10.0, 0.2, 120.0,
                    0.05, 0.1, -0.51, 0.51};
  joints[1].state.theta_c = joints[1].state.theta_s = -0.02;
  return joints;
}

KinematicChain default_chain(JointAxis plane) {
  return KinematicChain(default_joints(), plane);
}

}  // namespace companion
