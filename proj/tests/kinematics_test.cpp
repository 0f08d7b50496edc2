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

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include <gtest/gtest.h>

#include "companion/errors.hpp"
#include "companion/intention.hpp"
#include "oracles.hpp"

namespace companion {
namespace {

using testing::oracle_contact_torques;
using testing::oracle_gravity_torques;
using testing::random_chain;
using testing::random_contact;

// Two links: the first carries all the mass, the second is massless.
KinematicChain lever(double angle, double mass = 1.0) {
  std::vector<Joint> joints(2);
  joints[0].spec = {"J1", JointAxis::Pitch, 1.0, mass, 0.5, 100.0, 0.0, 0.1, -2.0, 2.0};
  joints[1].spec = {"J2", JointAxis::Pitch, 0.5, 0.0, 0.25, 100.0, 0.0, 0.1, -2.0, 2.0};
  joints[0].state.theta_c = joints[0].state.theta_s = angle;
  return KinematicChain(std::move(joints), JointAxis::Pitch);
}

TEST(StaticHoldTorques, HorizontalLinkIsMassTimesLever) {
  const auto tau = static_hold_torques(lever(std::numbers::pi / 2));
  EXPECT_NEAR(tau[0], 4.905, 1e-12);
  EXPECT_NEAR(tau[1], 0.0, 1e-12);
}

TEST(StaticHoldTorques, VerticalLinkHasNoMoment) {
  const auto tau = static_hold_torques(lever(0.0, 7.3));
  EXPECT_EQ(tau[0], 0.0);
  EXPECT_EQ(tau[1], 0.0);
}

TEST(StaticHoldTorques, MatchesPotentialGradient) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const auto chain = random_chain(rng, trial % 2 == 1);
    const auto tau = static_hold_torques(chain);
    const auto precise = oracle_gravity_torques(chain, 1e-3, true);
    const auto coarse = oracle_gravity_torques(chain, 1e-5, false);
    for (std::size_t i = 0; i < chain.size(); ++i) {
      EXPECT_NEAR(tau[i], precise[i], 1e-9) << "trial " << trial << " joint " << i;
      EXPECT_LT(std::abs(tau[i] - coarse[i]), 1e-6);
    }
  }
}

TEST(PropagateContactForce, LeverArm) {
  ContactForce c{0, 0.3, {10.0, 0.0}};
  const auto tau = propagate_contact_force(lever(0.0), c);
  EXPECT_NEAR(tau[0], 3.0, 1e-12);
  EXPECT_EQ(tau[1], 0.0);
}

TEST(PropagateContactForce, OnlyPrecedingJointsCarryLoad) {
  std::vector<Joint> joints(3);
  for (int i = 0; i < 3; ++i) {
    joints[i].spec = {"J" + std::to_string(i + 1), JointAxis::Pitch, 0.3, 2.0,
                      0.15, 100.0, 0.0, 0.1, -1.0, 1.0};
  }
  joints[1].state.theta_c = 0.1;
  const KinematicChain chain(std::move(joints), JointAxis::Pitch);
  const auto tau = propagate_contact_force(chain, {1, 0.2, {10.0, 0.0}});
  EXPECT_NE(tau[0], 0.0);
  EXPECT_NE(tau[1], 0.0);
  EXPECT_EQ(tau[2], 0.0);
}

TEST(PropagateContactForce, MatchesNumericJacobianTranspose) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 300; ++trial) {
    const auto chain = random_chain(rng, trial % 3 == 0);
    const auto contact = random_contact(rng, chain);
    const auto tau = propagate_contact_force(chain, contact);
    const auto oracle = oracle_contact_torques(chain, contact);
    for (std::size_t i = 0; i < chain.size(); ++i) {
      EXPECT_NEAR(tau[i], oracle[i], 1e-8);
      if (i > contact.link_index) EXPECT_EQ(tau[i], 0.0);
    }
  }
}

TEST(PropagateContactForce, LinearInForce) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const auto chain = random_chain(rng);
    auto a = random_contact(rng, chain);
    auto b = a;
    b.force = random_contact(rng, chain).force;
    auto sum = a;
    sum.force = a.force + b.force;
    const auto ta = propagate_contact_force(chain, a);
    const auto tb = propagate_contact_force(chain, b);
    const auto ts = propagate_contact_force(chain, sum);
    for (std::size_t i = 0; i < chain.size(); ++i) {
      EXPECT_NEAR(ts[i], ta[i] + tb[i], 1e-12);
    }
  }
}

TEST(PropagateContactForce, RigidJointsReportNothing) {
  const auto roll = default_chain(JointAxis::Roll);
  const auto tau = propagate_contact_force(roll, {2, 0.3, {10.0, 0.0}});
  EXPECT_EQ(tau[0], 0.0);
  EXPECT_EQ(tau[1], 0.0);
  EXPECT_NEAR(tau[2], 3.0, 1e-12);
}

TEST(PropagateContactForce, RejectsMalformedContact) {
  const auto chain = default_chain(JointAxis::Pitch);
  EXPECT_THROW(propagate_contact_force(chain, {3, 0.1, {1.0, 0.0}}),
               std::invalid_argument);
  EXPECT_THROW(propagate_contact_force(chain, {0, 0.5, {1.0, 0.0}}),
               std::invalid_argument);
  EXPECT_THROW(propagate_contact_force(chain, {0, -0.01, {1.0, 0.0}}),
               std::invalid_argument);
}

TEST(KinematicChain, Validation) {
  std::vector<Joint> one(1);
  one[0].spec.name = "solo";
  EXPECT_THROW(KinematicChain(one, JointAxis::Pitch), ConfigError);

  auto joints = default_joints();
  joints[0].spec.stiffness = 0.0;
  EXPECT_THROW(KinematicChain(joints, JointAxis::Pitch), ConfigError);

  joints = default_joints();
  joints[1].spec.angle_min = joints[1].spec.angle_max;
  EXPECT_THROW(KinematicChain(joints, JointAxis::Pitch), ConfigError);

  joints = default_joints();
  joints[2].spec.coulomb_friction = -0.1;
  EXPECT_THROW(KinematicChain(joints, JointAxis::Pitch), ConfigError);
}

TEST(SimulateSensing, SeriesElasticDeflection) {
  std::vector<Joint> joints(2);
  joints[0].spec = {"J1", JointAxis::Pitch, 1.0, 0.0, 0.5, 100.0, 0.0, 0.1, -1.0, 1.0};
  joints[1].spec = {"J2", JointAxis::Pitch, 1.0, 0.0, 0.5, 100.0, 0.0, 0.1, -1.0, 1.0};
  joints[0].state.theta_c = 0.1;
  const KinematicChain chain(std::move(joints), JointAxis::Pitch);
  // 2 N*m at J1 (the first link is tilted, so use the lever along it).
  const double arm = std::cos(0.1) * 0.2;
  const auto states = simulate_sensing(chain, {0, 0.2, {2.0 / arm, 0.0}}, 0.0, 1);
  EXPECT_NEAR(states[0].theta_s - states[0].theta_c, 0.02, 1e-12);
}

TEST(SimulateSensing, NoContactIsIdentity) {
  auto chain = default_chain(JointAxis::Pitch);
  JointState moving = chain.joint(0).state;
  moving.theta_dot = 0.3;
  chain.set_state(0, moving);
  const auto states = simulate_sensing(chain, std::span<const ContactForce>{}, 0.0, 9);
  for (const auto& s : states) {
    EXPECT_EQ(s.theta_s, s.theta_c);
    EXPECT_EQ(s.tau_total, s.tau_m + s.tau_f);
  }
  // Friction: Coulomb + viscous, bounded by both terms.
  EXPECT_NEAR(states[0].tau_f, 0.05 + 0.1 * 0.3, 1e-15);
}

TEST(SimulateSensing, DeflectionClampedToLimits) {
  const auto chain = default_chain(JointAxis::Pitch);
  const auto states = simulate_sensing(chain, {2, 0.45, {5000.0, 0.0}}, 0.0, 1);
  EXPECT_EQ(states[0].theta_s, chain.joint(0).spec.angle_max);
}

TEST(SimulateSensing, SeedReproducible) {
  const auto chain = default_chain(JointAxis::Pitch);
  const ContactForce push{2, 0.3, {10.0, 0.0}};
  const auto a = simulate_sensing(chain, push, 0.05, 1234);
  const auto b = simulate_sensing(chain, push, 0.05, 1234);
  const auto c = simulate_sensing(chain, push, 0.05, 1235);
  EXPECT_EQ(a, b);
  EXPECT_NE(a, c);
  EXPECT_THROW(simulate_sensing(chain, push, -1.0, 1), std::invalid_argument);
}

TEST(SimulateSensing, EstimatorRecoversInjectedTorque) {
  std::mt19937_64 rng(77);
  const double noise = 0.05;
  int samples = 0;
  int outside_3sigma = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const auto chain = random_chain(rng);
    const auto contact = random_contact(rng, chain);
    const auto oracle = oracle_contact_torques(chain, contact);
    const auto states = simulate_sensing(chain, contact, noise, trial);
    const auto exact = simulate_sensing(chain, contact, 0.0, trial);
    for (std::size_t i = 0; i < chain.size(); ++i) {
      const double err = std::abs(estimate_external_torque(states[i]) - oracle[i]);
      ++samples;
      if (err > 3.0 * noise) ++outside_3sigma;
      EXPECT_LT(err, 5.0 * noise);
      EXPECT_NEAR(estimate_external_torque(exact[i]), oracle[i], 1e-8);
    }
  }
  // Gaussian: 0.27% of draws fall outside 3 sigma.
  EXPECT_LE(outside_3sigma, samples / 100);
}

}  // namespace
}  // namespace companion
