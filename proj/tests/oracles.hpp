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

// Test-only reference computations. Nothing here calls into the statics or
// limiter code it is used to check.

#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "companion/kinematics.hpp"

namespace companion::testing {

// Plain trigonometric forward kinematics: the point at distance s along link
// `link` for joint angles q, honouring which joints are active.
inline Vec2 oracle_point(const KinematicChain& chain, const std::vector<double>& q,
                         std::size_t link, double s) {
  double phi = 0.0;
  double h = 0.0;
  double z = 0.0;
  for (std::size_t k = 0; k <= link; ++k) {
    if (chain.joint(k).spec.axis == chain.plane()) phi += q[k];
    const double len = k == link ? s : chain.joint(k).spec.link_length;
    h += len * std::sin(phi);
    z += len * std::cos(phi);
  }
  return {h, z};
}

inline double oracle_potential(const KinematicChain& chain,
                               const std::vector<double>& q) {
  double v = 0.0;
  for (std::size_t k = 0; k < chain.size(); ++k) {
    const auto& spec = chain.joint(k).spec;
    v += spec.link_mass * chain.gravity() *
         oracle_point(chain, q, k, spec.com_offset).y;
  }
  return v;
}

inline std::vector<double> commanded(const KinematicChain& chain) {
  std::vector<double> q;
  for (const auto& j : chain.joints()) q.push_back(j.state.theta_c);
  return q;
}

// Five-point derivative of f along coordinate i.
template <class F>
double five_point(F&& f, std::vector<double> q, std::size_t i, double h) {
  const double q0 = q[i];
  auto at = [&](double x) {
    q[i] = x;
    return f(q);
  };
  return (-at(q0 + 2 * h) + 8 * at(q0 + h) - 8 * at(q0 - h) + at(q0 - 2 * h)) /
         (12 * h);
}

template <class F>
double central(F&& f, std::vector<double> q, std::size_t i, double h) {
  const double q0 = q[i];
  q[i] = q0 + h;
  const double up = f(q);
  q[i] = q0 - h;
  const double down = f(q);
  return (up - down) / (2 * h);
}

// -dV/dq by finite differences.
inline std::vector<double> oracle_gravity_torques(const KinematicChain& chain,
                                                  double h, bool high_order) {
  const auto q = commanded(chain);
  std::vector<double> out(q.size());
  auto v = [&](const std::vector<double>& x) { return oracle_potential(chain, x); };
  for (std::size_t i = 0; i < q.size(); ++i) {
    out[i] = -(high_order ? five_point(v, q, i, h) : central(v, q, i, h));
  }
  return out;
}

// J^T F with J the finite-difference Jacobian of the contact point.
inline std::vector<double> oracle_contact_torques(const KinematicChain& chain,
                                                  const ContactForce& c) {
  const auto q = commanded(chain);
  std::vector<double> out(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) {
    auto ph = [&](const std::vector<double>& x) {
      return oracle_point(chain, x, c.link_index, c.application_distance).x;
    };
    auto pz = [&](const std::vector<double>& x) {
      return oracle_point(chain, x, c.link_index, c.application_distance).y;
    };
    out[i] = c.force.x * five_point(ph, q, i, 1e-3) +
             c.force.y * five_point(pz, q, i, 1e-3);
  }
  return out;
}

// Random planar chain with 2..5 joints, all active in the chain plane unless
// mixed_axes is set.
inline KinematicChain random_chain(std::mt19937_64& rng, bool mixed_axes = false) {
  std::uniform_int_distribution<int> count(2, 5);
  std::uniform_real_distribution<double> len(0.1, 0.6);
  std::uniform_real_distribution<double> mass(0.5, 12.0);
  std::uniform_real_distribution<double> frac(0.0, 1.0);
  std::uniform_real_distribution<double> angle(-0.9, 0.9);
  std::bernoulli_distribution coin(0.3);
  const int n = count(rng);
  std::vector<Joint> joints(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    auto& s = joints[i].spec;
    s.name = "J" + std::to_string(i + 1);
    s.axis = mixed_axes && coin(rng) ? JointAxis::Roll : JointAxis::Pitch;
    s.link_length = len(rng);
    s.link_mass = mass(rng);
    s.com_offset = frac(rng) * s.link_length;
    s.stiffness = 50.0 + 200.0 * frac(rng);
    s.angle_min = -1.2;
    s.angle_max = 1.2;
    joints[i].state.theta_c = joints[i].state.theta_s = angle(rng);
  }
  return KinematicChain(std::move(joints), JointAxis::Pitch);
}

inline ContactForce random_contact(std::mt19937_64& rng, const KinematicChain& chain) {
  std::uniform_int_distribution<std::size_t> link(0, chain.size() - 1);
  std::uniform_real_distribution<double> frac(0.0, 1.0);
  std::uniform_real_distribution<double> force(-30.0, 30.0);
  ContactForce c;
  c.link_index = link(rng);
  c.application_distance = frac(rng) * chain.joint(c.link_index).spec.link_length;
  c.force = {force(rng), force(rng)};
  return c;
}

}  // namespace companion::testing
