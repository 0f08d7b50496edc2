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

// companion: run, sweep and serve walk-companion scenarios.
//
//   companion run <file> [--out <csv>]
//   companion sweep <file> --param <name> --values a,b,c --out <dir>
//   companion serve <file> --port <n> [--out <csv>] [--log <json>]
//
// Exit status: 0 success, 1 collision, 2 usage, parse or validation error.
// COMPANION_LOG sets the log level (trace, debug, info, warn, error, off).

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "companion/bridge/server.hpp"
#include "companion/bridge/session.hpp"
#include "companion/scenario.hpp"

namespace {

using namespace companion;
namespace fs = std::filesystem;

constexpr int kExitCollision = 1;
constexpr int kExitError = 2;

void configure_logging() {
  auto logger = spdlog::stderr_color_mt("companion");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%l] %v");
  spdlog::set_level(spdlog::level::warn);
  if (const char* env = std::getenv("COMPANION_LOG")) {
    const auto level = spdlog::level::from_str(env);
    if (level == spdlog::level::off && std::string_view(env) != "off") {
      spdlog::warn("ignoring unknown COMPANION_LOG level '{}'", env);
    } else {
      spdlog::set_level(level);
    }
  }
}

void write_csv(const fs::path& path, std::span<const StepRecord> records) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  write_trajectory_csv(out, records);
}

int cmd_run(const std::string& file, const std::string& out) {
  const Scenario sc = load_scenario(file);
  spdlog::info("running '{}' for {} steps", sc.id, sc.step_count());
  const RunResult r = run_scenario(sc);
  if (!out.empty()) write_csv(out, r.records);
  std::cout << summary_to_json(r.summary).dump() << '\n';
  if (r.collision) {
    spdlog::error("collision with obstacle {} at t={:.3f}", r.collision->obstacle_index,
                  r.collision->t);
    return kExitCollision;
  }
  return 0;
}

std::string value_label(double v) { return fmt::format("{:g}", v); }

int cmd_sweep(const std::string& file, const std::string& param,
              const std::vector<double>& values, const std::string& out) {
  const Scenario sc = load_scenario(file);
  const auto entries = sweep(sc, param, values);
  const fs::path dir(out);
  fs::create_directories(dir);
  std::ofstream table(dir / "sweep.csv", std::ios::binary);
  if (!table) throw std::runtime_error("cannot write '" + (dir / "sweep.csv").string() + "'");
  table << "param,value,steps,min_obstacle_distance,max_speed,max_accel,collision,"
           "final_x,final_y,final_heading\n";
  bool collided = false;
  for (const auto& e : entries) {
    const auto& s = e.result.summary;
    write_csv(dir / fmt::format("{}_{}.csv", param, value_label(e.value)), e.result.records);
    table << fmt::format("{},{},{},{},{:.17g},{:.17g},{},{:.17g},{:.17g},{:.17g}\n", param,
                         value_label(e.value), s.steps,
                         s.min_obstacle_distance
                             ? fmt::format("{:.17g}", *s.min_obstacle_distance)
                             : std::string(),
                         s.max_speed, s.max_accel, s.collision ? 1 : 0, s.final_pose.x,
                         s.final_pose.y, s.final_pose.heading);
    auto j = summary_to_json(s);
    j["param"] = param;
    j["value"] = e.value;
    std::cout << j.dump() << '\n';
    collided |= s.collision;
  }
  return collided ? kExitCollision : 0;
}

int cmd_serve(const std::string& file, std::uint16_t port, const std::string& address,
              const std::string& out, const std::string& log) {
  const Scenario sc = load_scenario(file);
  bridge::Session session(sc);
  bridge::Server::Options options;
  options.address = address;
  options.port = port;
  options.stop_on_signals = true;
  bridge::Server server(session, options);
  std::cout << "listening on ws://" << address << ":" << server.port() << std::endl;
  server.run();

  write_csv(out, session.records());
  std::ofstream log_file(log, std::ios::binary);
  if (!log_file) throw std::runtime_error("cannot write '" + log + "'");
  log_file << scenario_to_json(session.message_log()).dump(2) << '\n';
  spdlog::info("wrote {} steps to {} and the message log to {}", session.records().size(),
               out, log);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  configure_logging();
  CLI::App app{"Walk-companion simulator"};
  app.require_subcommand(1);

  std::string file;
  std::string out;

  auto* run = app.add_subcommand("run", "Run a scenario and print its summary");
  run->add_option("file", file, "Scenario JSON")->required();
  run->add_option("--out", out, "Trajectory CSV to write");

  std::string param;
  std::vector<double> values;
  auto* sw = app.add_subcommand("sweep", "Run a scenario once per parameter value");
  sw->add_option("file", file, "Scenario JSON")->required();
  sw->add_option("--param", param, "Parameter to vary")
      ->required()
      ->check(CLI::IsMember({"B", "deadband", "gain", "v_max"}));
  sw->add_option("--values", values, "Comma-separated values")->required()->delimiter(',');
  sw->add_option("--out", out, "Output directory")->required();

  std::uint16_t port = 8765;
  std::string address = "127.0.0.1";
  std::string log = "session_log.json";
  auto* serve = app.add_subcommand("serve", "Serve an interactive session over WebSocket");
  serve->add_option("file", file, "Scenario JSON")->required();
  serve->add_option("--port", port, "TCP port (0 picks a free one)");
  serve->add_option("--address", address, "Listen address");
  serve->add_option("--out", out, "Trajectory CSV written on shutdown")
      ->default_str("session.csv");
  serve->add_option("--log", log, "Replayable message log written on shutdown");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  }

  try {
    if (*run) return cmd_run(file, out);
    if (*sw) {
      if (values.empty()) throw std::invalid_argument("--values needs at least one value");
      return cmd_sweep(file, param, values, out);
    }
    return cmd_serve(file, port, address, out.empty() ? "session.csv" : out, log);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
}
