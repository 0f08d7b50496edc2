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

// Assisted and non-assisted control loops, the touch-operated supervisor
// lock and the motion policies.

#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "companion/base.hpp"
#include "companion/intention.hpp"

namespace companion {

enum class LoopMode { Assisted, NonAssisted };

enum class LockGesture {
  Toggle,        // every press flips the lock
  PressAndHold,  // a press held for hold_duration flips it on release
};

struct ControlConfig {
  LoopMode loop = LoopMode::Assisted;
  bool locked = false;
  SideMotionMode side_motion = SideMotionMode::VerticalAxisRotation;
  bool backward_disabled = true;
  double hard_stop = 0.25;  // m

  LockGesture lock_gesture = LockGesture::Toggle;
  double hold_duration = 1.0;          // s, PressAndHold only
  std::optional<double> press_started;  // s, PressAndHold only

  void validate() const;
};

enum class TouchSensor { LeftHand, RightHand };
enum class TouchKind { Press, Release };

struct TouchEvent {
  TouchSensor sensor = TouchSensor::LeftHand;
  TouchKind kind = TouchKind::Press;
  double time = 0.0;
};

enum class BlockReason { BelowThreshold, Locked, ObstacleTooClose };

std::string_view to_string(BlockReason reason);
std::string_view to_string(LoopMode mode);
std::string_view to_string(SideMotionMode mode);
std::optional<LoopMode> parse_loop_mode(std::string_view text);
std::optional<SideMotionMode> parse_side_motion(std::string_view text);

// Pass carries the estimate through unchanged; otherwise blocked is set.
struct GateResult {
  IntentionEstimate estimate;
  std::optional<BlockReason> blocked;

  bool passed() const { return !blocked.has_value(); }
};

// NonAssisted always passes. Assisted passes iff the larger axis |tau_ext|
// exceeds deadband, the lock is off and the nearest obstacle (if any) is at
// least hard_stop away. When several conditions fail the reason reported is
// the first of Locked, ObstacleTooClose, BelowThreshold.
GateResult gate(const IntentionEstimate& estimate, const ControlConfig& config,
                std::optional<double> nearest, double deadband);

ControlConfig handle_touch(const TouchEvent& event, ControlConfig config);

// Zeroes a backward vx when backward motion is disabled.
BodyTwist apply_policy(const BodyTwist& twist, const ControlConfig& config);

}  // namespace companion
