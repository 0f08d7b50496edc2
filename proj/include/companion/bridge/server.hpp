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

// WebSocket front end for a Session. Single-threaded: one io_context runs
// the accept loop, every connection and the 50 Hz tick timer.

#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include "companion/bridge/session.hpp"

namespace companion::bridge {

class Server {
 public:
  struct Options {
    std::string address = "127.0.0.1";
    std::uint16_t port = 0;  // 0 picks a free port
    bool stop_on_signals = false;  // SIGINT/SIGTERM end run()
  };

  // Binds and listens immediately; throws std::runtime_error if the port is
  // taken.
  Server(Session& session, const Options& options);
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  std::uint16_t port() const;
  // Serves until stop() is called.
  void run();
  // Safe to call from any thread or a signal handler context.
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace companion::bridge
