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

// Scenario files, deterministic runs, trajectory CSV logs and parameter
// sweeps.

#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "companion/world.hpp"

namespace companion {

// Parse or validation failure. The message names the line/column or the
// offending field.
class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Timed control change, as issued by an interactive client. Unset fields are
// left alone.
struct ControlCommand {
  double time = 0.0;
  std::optional<bool> lock;
  std::optional<LoopMode> loop;
  std::optional<SideMotionMode> side_motion;
  std::optional<bool> backward_disabled;
};

void apply_command(const ControlCommand& command, ControlConfig& config);

struct Scenario {
  std::string id = "scenario";
  SimState initial;
  std::vector<PushInput> pushes;
  std::vector<TouchEvent> touches;
  std::vector<ControlCommand> commands;
  double duration_s = 0.0;
  double dt = 0.02;

  std::size_t step_count() const;
};

Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::filesystem::path& path);
nlohmann::json scenario_to_json(const Scenario& scenario);

struct RunSummary {
  std::string scenario_id;
  std::size_t steps = 0;
  std::optional<double> min_obstacle_distance;
  double max_speed = 0.0;  // m/s, planar norm
  double max_accel = 0.0;  // m/s^2, planar norm of per-step twist change
  bool collision = false;
  Pose final_pose;
};

struct RunResult {
  RunSummary summary;
  std::vector<StepRecord> records;
  std::optional<Collision> collision;
};

RunResult run_scenario(const Scenario& scenario);

// Summary metrics over a trajectory that started from the given state.
RunSummary summarize(std::string_view id, const SimState& initial,
                     std::span<const StepRecord> records, double dt);

nlohmann::json summary_to_json(const RunSummary& summary);

// Columns: t,x,y,heading,vx,vy,omega,tau_ext_pitch,tau_ext_roll,r_c,
// nearest_d,locked,mode. Numbers carry 6 significant digits; nearest_d is
// empty when the world has no obstacles.
extern const char* const kTrajectoryHeader;
std::string format_trajectory_row(const StepRecord& record);
void write_trajectory_csv(std::ostream& out, std::span<const StepRecord> records);
std::string trajectory_csv(std::span<const StepRecord> records);

// Sweepable parameters: B, deadband, gain, v_max.
bool is_sweep_parameter(std::string_view name);
// Throws std::invalid_argument for an unknown name.
Scenario with_parameter(Scenario scenario, std::string_view name, double value);

struct SweepEntry {
  double value = 0.0;
  RunResult result;
};

std::vector<SweepEntry> sweep(const Scenario& scenario, std::string_view name,
                              std::span<const double> values);

}  // namespace companion
