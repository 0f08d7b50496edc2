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

// Wire protocol v1: newline-delimited JSON frames, each carrying "v": 1 and
// a "type" tag. Clients send push/lock/mode/reset; the server sends
// hello/state/error.

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "companion/world.hpp"

namespace companion::bridge {

inline constexpr int kProtocolVersion = 1;
inline constexpr double kMaxPushForce = 100.0;  // N

class ProtocolError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Robot-frame force, held until superseded. The norm is clamped to
// kMaxPushForce on parse.
struct PushMessage {
  double fx = 0.0;
  double fy = 0.0;
};

struct LockMessage {
  bool engaged = false;
};

// Any subset of the fields may be present.
struct ModeMessage {
  std::optional<LoopMode> loop;
  std::optional<SideMotionMode> side_motion;
  std::optional<bool> backward_disabled;
};

struct ResetMessage {};

using ClientMessage = std::variant<PushMessage, LockMessage, ModeMessage, ResetMessage>;

// Parses a single frame. Throws ProtocolError.
ClientMessage parse_client_message(std::string_view frame);
nlohmann::json to_json(const ClientMessage& message);

// Splits a transport message into its non-empty lines.
std::vector<std::string_view> split_frames(std::string_view text);

struct Telemetry {
  double t = 0.0;
  Pose pose;
  BodyTwist twist;
  double tau_ext_pitch = 0.0;
  double tau_ext_roll = 0.0;
  double r_c = 1.0;
  std::optional<double> nearest_d;
  bool locked = false;
  std::vector<double> sensor_rays;  // every ray of every sensor, in order
  std::optional<BlockReason> blocked_reason;
};

Telemetry make_telemetry(const SimState& state, const StepRecord& record);
nlohmann::json to_json(const Telemetry& telemetry);

enum class Role { Controller, Observer };

// Serialized frames, newline terminated.
std::string encode(const nlohmann::json& frame);
std::string state_frame(const Telemetry& telemetry);
std::string error_frame(std::string_view message);
std::string hello_frame(Role role);

}  // namespace companion::bridge
