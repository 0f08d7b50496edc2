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

#include "companion/bridge/protocol.hpp"

#include <cmath>
#include <set>

namespace companion::bridge {

namespace {

using nlohmann::json;

const json& field(const json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end()) throw ProtocolError(std::string("missing field '") + key + "'");
  return *it;
}

double finite_number(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number()) throw ProtocolError(std::string("'") + key + "' must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ProtocolError(std::string("'") + key + "' must be finite");
  return d;
}

bool boolean(const json& v, const char* key) {
  if (!v.is_boolean()) throw ProtocolError(std::string("'") + key + "' must be a boolean");
  return v.get<bool>();
}

void only_fields(const json& j, std::initializer_list<const char*> allowed) {
  const std::set<std::string> keys(allowed.begin(), allowed.end());
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (it.key() != "v" && it.key() != "type" && !keys.contains(it.key())) {
      throw ProtocolError("unknown field '" + it.key() + "'");
    }
  }
}

json pose_json(const Pose& p) {
  return {{"x", p.x}, {"y", p.y}, {"heading", p.heading}};
}

}  // namespace

ClientMessage parse_client_message(std::string_view frame) {
  json j;
  try {
    j = json::parse(frame.begin(), frame.end());
  } catch (const json::parse_error&) {
    throw ProtocolError("frame is not valid JSON");
  }
  if (!j.is_object()) throw ProtocolError("frame must be a JSON object");
  const json& v = field(j, "v");
  if (!v.is_number_integer() || v.get<int>() != kProtocolVersion) {
    throw ProtocolError("unsupported protocol version (expected 1)");
  }
  const json& type = field(j, "type");
  if (!type.is_string()) throw ProtocolError("'type' must be a string");
  const auto t = type.get<std::string>();

  if (t == "push") {
    only_fields(j, {"fx", "fy"});
    PushMessage m{finite_number(j, "fx"), finite_number(j, "fy")};
    const double n = std::hypot(m.fx, m.fy);
    if (n > kMaxPushForce) {
      m.fx *= kMaxPushForce / n;
      m.fy *= kMaxPushForce / n;
    }
    return m;
  }
  if (t == "lock") {
    only_fields(j, {"engaged"});
    return LockMessage{boolean(field(j, "engaged"), "engaged")};
  }
  if (t == "mode") {
    only_fields(j, {"loop", "side_motion", "backward_disabled"});
    ModeMessage m;
    if (const auto it = j.find("loop"); it != j.end()) {
      m.loop = it->is_string() ? parse_loop_mode(it->get<std::string>()) : std::nullopt;
      if (!m.loop) throw ProtocolError("'loop' must be \"Assisted\" or \"NonAssisted\"");
    }
    if (const auto it = j.find("side_motion"); it != j.end()) {
      m.side_motion =
          it->is_string() ? parse_side_motion(it->get<std::string>()) : std::nullopt;
      if (!m.side_motion) {
        throw ProtocolError(
            "'side_motion' must be \"LateralTranslation\" or \"VerticalAxisRotation\"");
      }
    }
    if (const auto it = j.find("backward_disabled"); it != j.end()) {
      m.backward_disabled = boolean(*it, "backward_disabled");
    }
    return m;
  }
  if (t == "reset") {
    only_fields(j, {});
    return ResetMessage{};
  }
  throw ProtocolError("unknown message type '" + t + "'");
}

json to_json(const ClientMessage& message) {
  json j{{"v", kProtocolVersion}};
  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, PushMessage>) {
          j["type"] = "push";
          j["fx"] = m.fx;
          j["fy"] = m.fy;
        } else if constexpr (std::is_same_v<T, LockMessage>) {
          j["type"] = "lock";
          j["engaged"] = m.engaged;
        } else if constexpr (std::is_same_v<T, ModeMessage>) {
          j["type"] = "mode";
          if (m.loop) j["loop"] = to_string(*m.loop);
          if (m.side_motion) j["side_motion"] = to_string(*m.side_motion);
          if (m.backward_disabled) j["backward_disabled"] = *m.backward_disabled;
        } else {
          j["type"] = "reset";
        }
      },
      message);
  return j;
}

std::vector<std::string_view> split_frames(std::string_view text) {
  std::vector<std::string_view> out;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    auto line = text.substr(0, nl);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") != std::string_view::npos) out.push_back(line);
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
  return out;
}

Telemetry make_telemetry(const SimState& state, const StepRecord& record) {
  Telemetry t;
  t.t = record.t;
  t.pose = record.pose;
  t.twist = record.twist;
  t.tau_ext_pitch = record.estimate.tau_ext_pitch;
  t.tau_ext_roll = record.estimate.tau_ext_roll;
  t.r_c = record.r_c;
  t.nearest_d = record.nearest_d;
  t.locked = record.locked;
  for (const auto& sensor : state.world.sensors) {
    const auto rays = raycast(state.world, state.pose, sensor);
    t.sensor_rays.insert(t.sensor_rays.end(), rays.begin(), rays.end());
  }
  t.blocked_reason = record.blocked;
  return t;
}

json to_json(const Telemetry& t) {
  return {{"v", kProtocolVersion},
          {"type", "state"},
          {"t", t.t},
          {"pose", pose_json(t.pose)},
          {"twist", {{"vx", t.twist.vx}, {"vy", t.twist.vy}, {"omega", t.twist.omega}}},
          {"tau_ext", {{"pitch", t.tau_ext_pitch}, {"roll", t.tau_ext_roll}}},
          {"r_c", t.r_c},
          {"nearest_d", t.nearest_d ? json(*t.nearest_d) : json(nullptr)},
          {"locked", t.locked},
          {"sensor_rays", t.sensor_rays},
          {"blocked_reason",
           t.blocked_reason ? json(std::string(to_string(*t.blocked_reason)))
                            : json(nullptr)}};
}

std::string encode(const json& frame) { return frame.dump() + "\n"; }

std::string state_frame(const Telemetry& telemetry) { return encode(to_json(telemetry)); }

std::string error_frame(std::string_view message) {
  return encode({{"v", kProtocolVersion}, {"type", "error"}, {"message", message}});
}

std::string hello_frame(Role role) {
  return encode({{"v", kProtocolVersion},
                 {"type", "hello"},
                 {"role", role == Role::Controller ? "controller" : "observer"}});
}

}  // namespace companion::bridge
