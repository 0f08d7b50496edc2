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

#include "companion/control.hpp"

#include <algorithm>
#include <cmath>

#include "companion/errors.hpp"

namespace companion {

void ControlConfig::validate() const {
  if (!(hard_stop > 0.0)) throw ConfigError("hard_stop must be positive");
  if (lock_gesture == LockGesture::PressAndHold && !(hold_duration > 0.0)) {
    throw ConfigError("hold_duration must be positive");
  }
}

std::string_view to_string(BlockReason reason) {
  switch (reason) {
    case BlockReason::BelowThreshold: return "BelowThreshold";
    case BlockReason::Locked: return "Locked";
    case BlockReason::ObstacleTooClose: return "ObstacleTooClose";
  }
  return "";
}

std::string_view to_string(LoopMode mode) {
  return mode == LoopMode::Assisted ? "Assisted" : "NonAssisted";
}

std::string_view to_string(SideMotionMode mode) {
  return mode == SideMotionMode::LateralTranslation ? "LateralTranslation"
                                                    : "VerticalAxisRotation";
}

std::optional<LoopMode> parse_loop_mode(std::string_view text) {
  if (text == "Assisted") return LoopMode::Assisted;
  if (text == "NonAssisted") return LoopMode::NonAssisted;
  return std::nullopt;
}

std::optional<SideMotionMode> parse_side_motion(std::string_view text) {
  if (text == "LateralTranslation") return SideMotionMode::LateralTranslation;
  if (text == "VerticalAxisRotation") return SideMotionMode::VerticalAxisRotation;
  return std::nullopt;
}

GateResult gate(const IntentionEstimate& estimate, const ControlConfig& config,
                std::optional<double> nearest, double deadband) {
  GateResult result{estimate, std::nullopt};
  if (config.loop == LoopMode::NonAssisted) return result;

  const double strongest =
      std::max(std::abs(estimate.tau_ext_pitch), std::abs(estimate.tau_ext_roll));
  if (config.locked) {
    result.blocked = BlockReason::Locked;
  } else if (nearest && *nearest < config.hard_stop) {
    result.blocked = BlockReason::ObstacleTooClose;
  } else if (!(strongest > deadband)) {
    result.blocked = BlockReason::BelowThreshold;
  }
  return result;
}

ControlConfig handle_touch(const TouchEvent& event, ControlConfig config) {
  if (config.lock_gesture == LockGesture::Toggle) {
    if (event.kind == TouchKind::Press) config.locked = !config.locked;
    return config;
  }
  if (event.kind == TouchKind::Press) {
    if (!config.press_started) config.press_started = event.time;
  } else if (config.press_started) {
    if (event.time - *config.press_started >= config.hold_duration) {
      config.locked = !config.locked;
    }
    config.press_started.reset();
  }
  return config;
}

BodyTwist apply_policy(const BodyTwist& twist, const ControlConfig& config) {
  BodyTwist out = twist;
  if (config.backward_disabled && out.vx < 0.0) out.vx = 0.0;
  return out;
}

}  // namespace companion
