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

#include "companion/intention.hpp"

#include <random>

#include <gtest/gtest.h>

#include "companion/errors.hpp"

namespace companion {
namespace {

JointState torques(double total, double friction, double hold) {
  JointState s;
  s.tau_total = total;
  s.tau_f = friction;
  s.tau_m = hold;
  return s;
}

JointState angles(double sensed, double commanded) {
  JointState s;
  s.theta_s = sensed;
  s.theta_c = commanded;
  return s;
}

// A joint reading with the given external torque and a matching deflection.
JointState pushed(double tau_ext, double stiffness = 100.0) {
  JointState s;
  s.tau_m = 3.1;
  s.tau_f = 0.4;
  s.tau_total = s.tau_m + s.tau_f + tau_ext;
  s.theta_c = 0.1;
  s.theta_s = 0.1 + tau_ext / stiffness;
  return s;
}

TEST(EstimateExternalTorque, Arithmetic) {
  EXPECT_NEAR(estimate_external_torque(torques(5.0, 0.4, 3.1)), 1.5, 1e-12);
  EXPECT_EQ(estimate_external_torque(torques(3.5, 0.4, 3.1)), 3.5 - 0.4 - 3.1);
  const JointState none = torques(2.25, 0.25, 2.0);
  EXPECT_EQ(estimate_external_torque(none), 0.0);
}

TEST(EstimateExternalTorque, Linear) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int i = 0; i < 500; ++i) {
    const double a = u(rng), b = u(rng), c = u(rng);
    const double k = u(rng);
    EXPECT_NEAR(estimate_external_torque(torques(k * a, k * b, k * c)),
                k * estimate_external_torque(torques(a, b, c)), 1e-12);
  }
}

TEST(AngleError, SignCarriesDirection) {
  EXPECT_NEAR(angle_error(angles(0.12, 0.10)), 0.02, 1e-15);
  EXPECT_EQ(angle_error(angles(0.1, 0.1)), 0.0);
  EXPECT_NEAR(angle_error(angles(0.08, 0.10)), -0.02, 1e-15);
}

TEST(MotionVector, PitchOnlyIsNorth) {
  EstimatorConfig cfg;
  const auto e = motion_vector(pushed(1.5), pushed(0.0), cfg);
  EXPECT_NEAR(e.pitch.magnitude, 1.5, 1e-12);
  EXPECT_EQ(e.pitch.direction_sign, 1);
  EXPECT_EQ(e.roll.magnitude, 0.0);
  EXPECT_EQ(classify_direction(e, cfg).to_string(), "North");
}

TEST(MotionVector, ZeroInputIsIdle) {
  EstimatorConfig cfg;
  const auto e = motion_vector(pushed(0.0), pushed(0.0), cfg);
  EXPECT_TRUE(classify_direction(e, cfg).idle());
  EXPECT_EQ(classify_direction(e, cfg).to_string(), "Idle");
  EXPECT_EQ(to_body_twist(e, SideMotionMode::LateralTranslation, cfg), BodyTwist{});
}

TEST(MotionVector, AxesCombine) {
  EstimatorConfig cfg;
  const auto e = motion_vector(pushed(1.5), pushed(1.0), cfg);
  const auto d = classify_direction(e, cfg);
  EXPECT_EQ(d.forward, ForwardPush::North);
  EXPECT_EQ(d.lateral, LateralPush::East);
  EXPECT_EQ(d.to_string(), "North+East");
}

TEST(MotionVector, SignFlipPerJoint) {
  EstimatorConfig cfg;
  cfg.roll_sign = -1;
  const auto e = motion_vector(pushed(0.0), pushed(1.0), cfg);
  EXPECT_EQ(classify_direction(e, cfg).lateral, LateralPush::West);
}

TEST(MotionVector, MissingJointIsConfigError) {
  EstimatorConfig cfg;
  const auto pitch = default_chain(JointAxis::Pitch);
  const auto roll = default_chain(JointAxis::Roll);
  EXPECT_NO_THROW(motion_vector(pitch, roll, cfg));
  cfg.roll_joint = "ElbowRoll";
  EXPECT_THROW(motion_vector(pitch, roll, cfg), ConfigError);
  cfg = {};
  cfg.pitch_joint = "AnklePitch";
  EXPECT_THROW(motion_vector(pitch, roll, cfg), ConfigError);
}

TEST(ClassifyDirection, Deadband) {
  EstimatorConfig cfg;
  cfg.deadband = 0.5;
  EXPECT_TRUE(classify_direction(motion_vector(pushed(0.1), pushed(0.0), cfg), cfg).idle());
  EXPECT_EQ(classify_direction(motion_vector(pushed(1.5), pushed(0.0), cfg), cfg).forward,
            ForwardPush::North);
  EXPECT_EQ(classify_direction(motion_vector(pushed(0.0), pushed(-1.0), cfg), cfg).lateral,
            LateralPush::West);
  EXPECT_EQ(classify_direction(motion_vector(pushed(-2.0), pushed(0.0), cfg), cfg).forward,
            ForwardPush::South);
  // Exactly at the deadband does not count.
  EXPECT_TRUE(classify_direction(motion_vector(pushed(0.5), pushed(-0.5), cfg), cfg).idle());
}

TEST(ClassifyDirection, ScaleInvariantAboveDeadband) {
  EstimatorConfig cfg;
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> tau(-5.0, 5.0);
  std::uniform_real_distribution<double> scale(1.0, 20.0);
  for (int i = 0; i < 500; ++i) {
    const double p = tau(rng), r = tau(rng), c = scale(rng);
    const auto base = classify_direction(motion_vector(pushed(p), pushed(r), cfg), cfg);
    auto scaled_est = motion_vector(pushed(p), pushed(r), cfg);
    scaled_est.pitch.magnitude *= c;
    scaled_est.roll.magnitude *= c;
    const auto scaled = classify_direction(scaled_est, cfg);
    if (std::abs(p) > cfg.deadband) EXPECT_EQ(base.forward, scaled.forward);
    if (std::abs(r) > cfg.deadband) EXPECT_EQ(base.lateral, scaled.lateral);
  }
}

TEST(ToBodyTwist, ForwardScalesByGain) {
  EstimatorConfig cfg;
  cfg.gain = 0.2;
  const auto e = motion_vector(pushed(1.5), pushed(0.0), cfg);
  for (auto mode : {SideMotionMode::LateralTranslation, SideMotionMode::VerticalAxisRotation}) {
    const auto t = to_body_twist(e, mode, cfg);
    EXPECT_NEAR(t.vx, 0.30, 1e-12);
    EXPECT_EQ(t.vy, 0.0);
    EXPECT_EQ(t.omega, 0.0);
  }
}

TEST(ToBodyTwist, EastTranslatesRight) {
  EstimatorConfig cfg;
  cfg.gain = 0.2;
  const auto e = motion_vector(pushed(0.0), pushed(1.0), cfg);
  const auto t = to_body_twist(e, SideMotionMode::LateralTranslation, cfg);
  EXPECT_EQ(t.vx, 0.0);
  EXPECT_NEAR(t.vy, -0.20, 1e-12);
  EXPECT_EQ(t.omega, 0.0);
}

TEST(ToBodyTwist, EastRotatesClockwise) {
  EstimatorConfig cfg;
  cfg.gain = 0.2;
  cfg.rotation_gain = 1.5;
  const auto e = motion_vector(pushed(0.0), pushed(1.0), cfg);
  const auto t = to_body_twist(e, SideMotionMode::VerticalAxisRotation, cfg);
  EXPECT_EQ(t.vx, 0.0);
  EXPECT_EQ(t.vy, 0.0);
  EXPECT_NEAR(t.omega, -0.20 * 1.5, 1e-12);
}

TEST(ToBodyTwist, ZeroWheneverIdle) {
  EstimatorConfig cfg;
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> tau(-0.5, 0.5);
  for (int i = 0; i < 500; ++i) {
    const auto e = motion_vector(pushed(tau(rng)), pushed(tau(rng)), cfg);
    ASSERT_TRUE(classify_direction(e, cfg).idle());
    EXPECT_EQ(to_body_twist(e, SideMotionMode::LateralTranslation, cfg), BodyTwist{});
    EXPECT_EQ(to_body_twist(e, SideMotionMode::VerticalAxisRotation, cfg), BodyTwist{});
  }
}

TEST(SmoothEstimate, DisabledByDefault) {
  EstimatorConfig cfg;
  const auto a = motion_vector(pushed(1.0), pushed(0.0), cfg);
  const auto b = motion_vector(pushed(3.0), pushed(0.0), cfg);
  EXPECT_EQ(smooth_estimate(a, b, cfg), b);
}

TEST(SmoothEstimate, ExponentialAverage) {
  EstimatorConfig cfg;
  cfg.smoothing_alpha = 0.25;
  const auto a = motion_vector(pushed(1.0), pushed(-2.0), cfg);
  const auto b = motion_vector(pushed(3.0), pushed(2.0), cfg);
  EXPECT_EQ(smooth_estimate(std::nullopt, b, cfg), b);
  const auto s = smooth_estimate(a, b, cfg);
  EXPECT_NEAR(s.tau_ext_pitch, 1.5, 1e-12);
  EXPECT_NEAR(s.tau_ext_roll, -1.0, 1e-12);
  EXPECT_EQ(s.roll.direction_sign, -1);
  EXPECT_NEAR(s.roll.magnitude, 1.0, 1e-12);
}

TEST(EstimatorConfig, Validation) {
  EstimatorConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.deadband = 0.0;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = {};
  cfg.gain = -1.0;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = {};
  cfg.pitch_sign = 2;
  EXPECT_THROW(cfg.validate(), ConfigError);
}

}  // namespace
}  // namespace companion
