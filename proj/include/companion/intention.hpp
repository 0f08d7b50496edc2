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

// User motion intention: external torque and angle error per axis, the
// resulting motion vector, push-direction classification and the mapping to
// a body twist.

#pragma once

#include <optional>
#include <string>

#include "companion/base.hpp"
#include "companion/kinematics.hpp"

namespace companion {

// How the lateral channel is actuated.
enum class SideMotionMode { LateralTranslation, VerticalAxisRotation };

// One axis of the motion vector: |tau_ext| and the sign of the angle error
// (after the per-joint sign flip). direction_sign is 0 only when the angle
// error is exactly zero.
struct AxisIntent {
  double magnitude = 0.0;
  int direction_sign = 0;

  double signed_value() const { return magnitude * direction_sign; }
  bool operator==(const AxisIntent&) const = default;
};

struct IntentionEstimate {
  double tau_ext_pitch = 0.0;
  double tau_ext_roll = 0.0;
  double theta_eps_pitch = 0.0;
  double theta_eps_roll = 0.0;
  AxisIntent pitch;  // forward (+) / back (-)
  AxisIntent roll;   // East (+) / West (-)

  bool operator==(const IntentionEstimate&) const = default;
};

enum class ForwardPush { None, North, South };
enum class LateralPush { None, East, West };

// Combination of at most one forward and one lateral direction. Idle when
// neither axis is engaged.
struct PushDirection {
  ForwardPush forward = ForwardPush::None;
  LateralPush lateral = LateralPush::None;

  bool idle() const {
    return forward == ForwardPush::None && lateral == LateralPush::None;
  }
  // "Idle", "North", "North+East", ...
  std::string to_string() const;
  bool operator==(const PushDirection&) const = default;
};

struct EstimatorConfig {
  double deadband = 0.5;        // N*m, per axis
  double gain = 0.03;           // (m/s) per N*m
  double rotation_gain = 2.0;   // (rad/s) per (m/s) of lateral command
  std::string pitch_joint = "KneePitch";
  std::string roll_joint = "HipRoll";
  int pitch_sign = 1;           // flips the pitch angle-error convention
  int roll_sign = 1;            // flips the roll angle-error convention
  // Exponential smoothing weight of the newest sample; 1 disables filtering.
  double smoothing_alpha = 1.0;

  void validate() const;
};

// tau_ext = tau_total - tau_f - tau_m.
double estimate_external_torque(const JointState& state);
// theta_eps = theta_s - theta_c.
double angle_error(const JointState& state);

IntentionEstimate motion_vector(const JointState& pitch_state,
                                const JointState& roll_state,
                                const EstimatorConfig& config);
// Looks the configured joints up by name in the pitch and roll chains.
// Throws ConfigError if either is missing.
IntentionEstimate motion_vector(const KinematicChain& pitch_chain,
                                const KinematicChain& roll_chain,
                                const EstimatorConfig& config);

PushDirection classify_direction(const IntentionEstimate& estimate,
                                 const EstimatorConfig& config);

// Forward channel drives vx; the lateral channel drives vy or omega depending
// on mode. Axes at or below the deadband contribute nothing. Positive roll is
// East, i.e. to the right (negative vy) or clockwise (negative omega).
BodyTwist to_body_twist(const IntentionEstimate& estimate, SideMotionMode mode,
                        const EstimatorConfig& config);

// Exponential moving average over the torque and angle channels; the axis
// intents are rebuilt from the smoothed values.
IntentionEstimate smooth_estimate(const std::optional<IntentionEstimate>& previous,
                                  const IntentionEstimate& sample,
                                  const EstimatorConfig& config);

}  // namespace companion
