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

#include "companion/bridge/session.hpp"

#include <algorithm>
#include <limits>

namespace companion::bridge {

Session::Session(Scenario scenario) : source_(std::move(scenario)) {
  for (const auto& t : source_.touches) events_.push_back({t.time, &t, nullptr});
  for (const auto& c : source_.commands) events_.push_back({c.time, nullptr, &c});
  std::stable_sort(events_.begin(), events_.end(),
                   [](const Event& a, const Event& b) { return a.time < b.time; });
  restart();
}

void Session::restart() {
  state_ = source_.initial;
  pushes_ = source_.pushes;
  open_push_.reset();
  logged_commands_.clear();
  next_event_ = 0;
  records_.clear();
  ticks_ = 0;
}

Role Session::connect(ClientId id) {
  started_ = true;
  clients_.push_back(id);
  return clients_.front() == id ? Role::Controller : Role::Observer;
}

std::optional<ClientId> Session::disconnect(ClientId id) {
  const auto it = std::find(clients_.begin(), clients_.end(), id);
  if (it == clients_.end()) return std::nullopt;
  const bool was_controller = it == clients_.begin();
  clients_.erase(it);
  if (!was_controller) return std::nullopt;
  pending_.push_back(PushMessage{});
  if (clients_.empty()) return std::nullopt;
  return clients_.front();
}

std::optional<ClientId> Session::controller() const {
  if (clients_.empty()) return std::nullopt;
  return clients_.front();
}

std::vector<std::string> Session::receive(ClientId id, std::string_view text) {
  std::vector<std::string> replies;
  const bool controls = controller() == id;
  for (const auto frame : split_frames(text)) {
    try {
      auto message = parse_client_message(frame);
      if (!controls) {
        replies.push_back(error_frame("read-only client: only the controller may send commands"));
        continue;
      }
      pending_.push_back(std::move(message));
    } catch (const ProtocolError& e) {
      replies.push_back(error_frame(e.what()));
    }
  }
  return replies;
}

void Session::set_push(Vec2 force) {
  const double now = state_.clock;
  if (open_push_) {
    auto& open = pushes_[*open_push_];
    if (open.force == force) return;
    if (open.start < now) {
      open.end = now;
    } else {
      pushes_.erase(pushes_.begin() + static_cast<std::ptrdiff_t>(*open_push_));
    }
    open_push_.reset();
  }
  if (force == Vec2{}) return;
  PushInput p;
  p.force = force;
  p.start = now;
  p.end = std::numeric_limits<double>::infinity();
  open_push_ = pushes_.size();
  pushes_.push_back(p);
}

void Session::apply(const ClientMessage& message) {
  const double now = state_.clock;
  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, PushMessage>) {
          set_push({m.fx, m.fy});
        } else if constexpr (std::is_same_v<T, LockMessage>) {
          ControlCommand c;
          c.time = now;
          c.lock = m.engaged;
          apply_command(c, state_.control);
          logged_commands_.push_back(c);
        } else if constexpr (std::is_same_v<T, ModeMessage>) {
          ControlCommand c;
          c.time = now;
          c.loop = m.loop;
          c.side_motion = m.side_motion;
          c.backward_disabled = m.backward_disabled;
          apply_command(c, state_.control);
          logged_commands_.push_back(c);
        } else {
          restart();
        }
      },
      message);
}

std::optional<Telemetry> Session::tick() {
  if (!started_) return std::nullopt;
  // Scripted events first, then client messages, matching replay order.
  const auto run_events = [&] {
    while (next_event_ < events_.size() &&
           events_[next_event_].time <= state_.clock + 1e-9) {
      const Event& ev = events_[next_event_++];
      if (ev.touch) state_.control = handle_touch(*ev.touch, state_.control);
      if (ev.command) apply_command(*ev.command, state_.control);
    }
  };
  run_events();
  while (!pending_.empty()) {
    const ClientMessage m = std::move(pending_.front());
    pending_.pop_front();
    apply(m);
    if (std::holds_alternative<ResetMessage>(m)) run_events();
  }
  if (state_.halted) return std::nullopt;

  StepResult r = step(state_, pushes_, kTickDt);
  state_ = std::move(r.state);
  records_.push_back(r.record);
  const std::uint64_t k = ++ticks_;
  const bool publish =
      (k * kTelemetryRate) / kTickRate != ((k - 1) * kTelemetryRate) / kTickRate;
  if (!publish && !r.collision) return std::nullopt;
  return make_telemetry(state_, r.record);
}

Scenario Session::message_log() const {
  Scenario out = source_;
  out.id = source_.id + "-session";
  out.duration_s = state_.clock;
  out.dt = kTickDt;
  out.pushes = pushes_;
  if (open_push_) out.pushes[*open_push_].end = state_.clock;
  std::erase_if(out.pushes, [](const PushInput& p) { return !(p.start < p.end); });
  out.commands.insert(out.commands.end(), logged_commands_.begin(),
                      logged_commands_.end());
  std::stable_sort(out.commands.begin(), out.commands.end(),
                   [](const ControlCommand& a, const ControlCommand& b) {
                     return a.time < b.time;
                   });
  return out;
}

}  // namespace companion::bridge
