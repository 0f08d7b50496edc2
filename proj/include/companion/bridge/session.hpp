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

// Transport-independent interactive session. Owns the SimState, queues
// client commands and drains them at tick boundaries, and keeps a message
// log that replays as a scenario.

#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "companion/bridge/protocol.hpp"
#include "companion/scenario.hpp"

namespace companion::bridge {

using ClientId = std::uint64_t;

class Session {
 public:
  static constexpr double kTickDt = 0.02;   // 50 Hz
  static constexpr int kTickRate = 50;
  static constexpr int kTelemetryRate = 20;

  // Scripted pushes, touches and commands in the scenario play as well.
  explicit Session(Scenario scenario);

  // The first connected client controls; later ones observe. The clock
  // stays paused until the first connection.
  Role connect(ClientId id);
  // Zeroes the push if the controller leaves and returns the promoted
  // client, if any.
  std::optional<ClientId> disconnect(ClientId id);

  // Parses every frame in a transport message. Controller commands are
  // queued; the returned error frames go back to the sender.
  std::vector<std::string> receive(ClientId id, std::string_view text);

  // Drains the queue and advances one step. Returns telemetry on the ticks
  // that publish (20 of every 50).
  std::optional<Telemetry> tick();

  bool started() const { return started_; }
  bool halted() const { return state_.halted; }
  std::optional<ClientId> controller() const;
  const SimState& state() const { return state_; }
  const std::vector<StepRecord>& records() const { return records_; }

  // Everything since the last reset as a scenario: the source scenario's
  // world and configuration with the effective push windows and commands.
  Scenario message_log() const;

 private:
  void apply(const ClientMessage& message);
  void set_push(Vec2 force);
  void restart();

  Scenario source_;
  SimState state_;
  std::vector<PushInput> pushes_;
  std::optional<std::size_t> open_push_;
  std::vector<ControlCommand> logged_commands_;
  struct Event {
    double time;
    const TouchEvent* touch;
    const ControlCommand* command;
  };
  std::vector<Event> events_;
  std::size_t next_event_ = 0;
  std::deque<ClientMessage> pending_;
  std::vector<ClientId> clients_;
  std::vector<StepRecord> records_;
  std::uint64_t ticks_ = 0;
  bool started_ = false;
};

}  // namespace companion::bridge
