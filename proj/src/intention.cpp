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

#include <cmath>

#include "companion/errors.hpp"

namespace companion {

namespace {

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

AxisIntent make_axis(double tau_ext, double theta_eps, int flip) {
  return {std::abs(tau_ext), sign_of(theta_eps) * flip};
}

bool engaged(const AxisIntent& axis, const EstimatorConfig& config) {
  return axis.magnitude > config.deadband && axis.direction_sign != 0;
}

IntentionEstimate assemble(double tau_pitch, double tau_roll, double eps_pitch,
                           double eps_roll, const EstimatorConfig& config) {
  IntentionEstimate e;
  e.tau_ext_pitch = tau_pitch;
  e.tau_ext_roll = tau_roll;
  e.theta_eps_pitch = eps_pitch;
  e.theta_eps_roll = eps_roll;
  e.pitch = make_axis(tau_pitch, eps_pitch, config.pitch_sign);
  e.roll = make_axis(tau_roll, eps_roll, config.roll_sign);
  return e;
}

}  // namespace

std::string PushDirection::to_string() const {
  if (idle()) return "Idle";
  std::string out;
  if (forward == ForwardPush::North) out = "North";
  if (forward == ForwardPush::South) out = "South";
  if (lateral != LateralPush::None) {
    if (!out.empty()) out += "+";
    out += lateral == LateralPush::East ? "East" : "West";
  }
  return out;
}

void EstimatorConfig::validate() const {
  if (!(deadband > 0.0)) throw ConfigError("estimator deadband must be positive");
  if (!(gain > 0.0)) throw ConfigError("estimator gain must be positive");
  if (!(rotation_gain > 0.0)) {
    throw ConfigError("estimator rotation_gain must be positive");
  }
  if (std::abs(pitch_sign) != 1 || std::abs(roll_sign) != 1) {
    throw ConfigError("estimator sign flips must be +1 or -1");
  }
  if (!(smoothing_alpha > 0.0 && smoothing_alpha <= 1.0)) {
    throw ConfigError("estimator smoothing_alpha must lie in (0, 1]");
  }
}

double estimate_external_torque(const JointState& state) {
  return state.tau_total - state.tau_f - state.tau_m;
}

double angle_error(const JointState& state) {
  return state.theta_s - state.theta_c;
}

IntentionEstimate motion_vector(const JointState& pitch_state,
                                const JointState& roll_state,
                                const EstimatorConfig& config) {
  return assemble(estimate_external_torque(pitch_state),
                  estimate_external_torque(roll_state), angle_error(pitch_state),
                  angle_error(roll_state), config);
}

IntentionEstimate motion_vector(const KinematicChain& pitch_chain,
                                const KinematicChain& roll_chain,
                                const EstimatorConfig& config) {
  const auto pitch = pitch_chain.find(config.pitch_joint);
  if (!pitch) {
    throw ConfigError("pitch joint '" + config.pitch_joint + "' not in chain");
  }
  const auto roll = roll_chain.find(config.roll_joint);
  if (!roll) {
    throw ConfigError("roll joint '" + config.roll_joint + "' not in chain");
  }
  return motion_vector(pitch_chain.joint(*pitch).state,
                       roll_chain.joint(*roll).state, config);
}

PushDirection classify_direction(const IntentionEstimate& estimate,
                                 const EstimatorConfig& config) {
  PushDirection d;
  if (engaged(estimate.pitch, config)) {
    d.forward = estimate.pitch.direction_sign > 0 ? ForwardPush::North
                                                  : ForwardPush::South;
  }
  if (engaged(estimate.roll, config)) {
    d.lateral = estimate.roll.direction_sign > 0 ? LateralPush::East
                                                 : LateralPush::West;
  }
  return d;
}

BodyTwist to_body_twist(const IntentionEstimate& estimate, SideMotionMode mode,
                        const EstimatorConfig& config) {
  BodyTwist twist;
  if (engaged(estimate.pitch, config)) {
    twist.vx = config.gain * estimate.pitch.signed_value();
  }
  if (engaged(estimate.roll, config)) {
    const double lateral = config.gain * estimate.roll.signed_value();
    if (mode == SideMotionMode::LateralTranslation) {
      twist.vy = -lateral;
    } else {
      twist.omega = -config.rotation_gain * lateral;
    }
  }
  return twist;
}

IntentionEstimate smooth_estimate(const std::optional<IntentionEstimate>& previous,
                                  const IntentionEstimate& sample,
                                  const EstimatorConfig& config) {
  if (!previous || config.smoothing_alpha >= 1.0) return sample;
  const double a = config.smoothing_alpha;
  const auto mix = [a](double old_v, double new_v) {
    return a * new_v + (1.0 - a) * old_v;
  };
  return assemble(mix(previous->tau_ext_pitch, sample.tau_ext_pitch),
                  mix(previous->tau_ext_roll, sample.tau_ext_roll),
                  mix(previous->theta_eps_pitch, sample.theta_eps_pitch),
                  mix(previous->theta_eps_roll, sample.theta_eps_roll), config);
}

}  // namespace companion
