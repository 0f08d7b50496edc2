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

#include "companion/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "companion/errors.hpp"

namespace companion {

namespace {

using nlohmann::json;

std::string describe_position(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  const std::size_t end = std::min(byte > 0 ? byte - 1 : 0, text.size());
  for (std::size_t i = 0; i < end; ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return fmt::format("line {}, column {}", line, column);
}

// Typed access to one JSON object, tracking which keys were consumed so that
// unknown (likely misspelt) keys can be rejected.
class Fields {
 public:
  Fields(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) fail_at(path_, "expected an object");
  }

  [[noreturn]] static void fail_at(const std::string& path,
                                   const std::string& what) {
    throw ScenarioError(fmt::format("field '{}': {}", path, what));
  }

  std::string path(std::string_view key) const {
    return path_.empty() ? std::string(key) : path_ + "." + std::string(key);
  }

  const json* child(std::string_view key) {
    used_.emplace(key);
    const auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  std::optional<double> opt_number(std::string_view key) {
    const json* v = child(key);
    if (!v) return std::nullopt;
    if (!v->is_number()) fail_at(path(key), "expected a number");
    const double d = v->get<double>();
    if (!std::isfinite(d)) fail_at(path(key), "expected a finite number");
    return d;
  }

  double number(std::string_view key, double fallback) {
    return opt_number(key).value_or(fallback);
  }

  double required_number(std::string_view key) {
    const auto v = opt_number(key);
    if (!v) fail_at(path(key), "is required");
    return *v;
  }

  std::optional<bool> opt_boolean(std::string_view key) {
    const json* v = child(key);
    if (!v) return std::nullopt;
    if (!v->is_boolean()) fail_at(path(key), "expected true or false");
    return v->get<bool>();
  }

  bool boolean(std::string_view key, bool fallback) {
    return opt_boolean(key).value_or(fallback);
  }

  std::optional<std::string> opt_string(std::string_view key) {
    const json* v = child(key);
    if (!v) return std::nullopt;
    if (!v->is_string()) fail_at(path(key), "expected a string");
    return v->get<std::string>();
  }

  std::uint64_t unsigned_integer(std::string_view key, std::uint64_t fallback) {
    const json* v = child(key);
    if (!v) return fallback;
    if (!v->is_number_unsigned()) {
      fail_at(path(key), "expected a non-negative integer");
    }
    return v->get<std::uint64_t>();
  }

  Vec2 vec2(std::string_view key) {
    const json* v = child(key);
    if (!v) fail_at(path(key), "is required");
    if (!v->is_array() || v->size() != 2 || !(*v)[0].is_number() ||
        !(*v)[1].is_number()) {
      fail_at(path(key), "expected [x, y]");
    }
    return {(*v)[0].get<double>(), (*v)[1].get<double>()};
  }

  const json* array(std::string_view key) {
    const json* v = child(key);
    if (v && !v->is_array()) fail_at(path(key), "expected an array");
    return v;
  }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!used_.contains(it.key())) fail_at(path(it.key()), "unknown field");
    }
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string, std::less<>> used_;
};

template <class T, class F>
T parse_enum(Fields& f, std::string_view key, T fallback, F parse) {
  const auto text = f.opt_string(key);
  if (!text) return fallback;
  const std::optional<T> v = parse(*text);
  if (!v) Fields::fail_at(f.path(key), "unrecognised value '" + *text + "'");
  return *v;
}

std::optional<JointAxis> parse_axis(std::string_view s) {
  if (s == "Pitch") return JointAxis::Pitch;
  if (s == "Roll") return JointAxis::Roll;
  return std::nullopt;
}

std::optional<SensorKind> parse_sensor_kind(std::string_view s) {
  if (s == "Laser") return SensorKind::Laser;
  if (s == "Sonar") return SensorKind::Sonar;
  return std::nullopt;
}

std::optional<LockGesture> parse_gesture(std::string_view s) {
  if (s == "Toggle") return LockGesture::Toggle;
  if (s == "PressAndHold") return LockGesture::PressAndHold;
  return std::nullopt;
}

std::optional<TouchSensor> parse_touch_sensor(std::string_view s) {
  if (s == "LeftHand") return TouchSensor::LeftHand;
  if (s == "RightHand") return TouchSensor::RightHand;
  return std::nullopt;
}

std::optional<TouchKind> parse_touch_kind(std::string_view s) {
  if (s == "Press") return TouchKind::Press;
  if (s == "Release") return TouchKind::Release;
  return std::nullopt;
}

std::string item_path(const Fields& f, std::string_view key, std::size_t i) {
  return f.path(key) + "[" + std::to_string(i) + "]";
}

Obstacle parse_obstacle(const json& j, const std::string& path) {
  Fields f(j, path);
  const auto type = f.opt_string("type");
  Obstacle out;
  if (type == "circle") {
    out = Circle{f.vec2("center"), f.required_number("radius")};
  } else if (type == "segment") {
    out = Segment{f.vec2("p1"), f.vec2("p2")};
  } else {
    Fields::fail_at(f.path("type"), "expected \"circle\" or \"segment\"");
  }
  f.finish();
  try {
    validate_obstacle(out);
  } catch (const ConfigError& e) {
    Fields::fail_at(path, e.what());
  }
  return out;
}

RangeSensor parse_sensor(const json& j, const std::string& path) {
  Fields f(j, path);
  RangeSensor s;
  s.kind = parse_enum(f, "kind", SensorKind::Laser, parse_sensor_kind);
  s.mount_bearing = f.number("mount_bearing", 0.0);
  s.fov = f.required_number("fov");
  const double rays = f.number("ray_count", 1.0);
  if (rays != std::floor(rays)) Fields::fail_at(f.path("ray_count"), "expected an integer");
  s.ray_count = static_cast<int>(rays);
  s.max_range = f.required_number("max_range");
  f.finish();
  try {
    s.validate();
  } catch (const ConfigError& e) {
    Fields::fail_at(path, e.what());
  }
  return s;
}

Joint parse_joint(const json& j, const std::string& path) {
  Fields f(j, path);
  Joint joint;
  auto& s = joint.spec;
  const auto name = f.opt_string("name");
  if (!name) Fields::fail_at(f.path("name"), "is required");
  s.name = *name;
  s.axis = parse_enum(f, "axis", JointAxis::Pitch, parse_axis);
  s.link_length = f.required_number("link_length");
  s.link_mass = f.number("link_mass", s.link_mass);
  s.com_offset = f.number("com_offset", s.link_length / 2.0);
  s.stiffness = f.number("stiffness", s.stiffness);
  s.coulomb_friction = f.number("coulomb_friction", s.coulomb_friction);
  s.viscous_friction = f.number("viscous_friction", s.viscous_friction);
  s.angle_min = f.number("angle_min", s.angle_min);
  s.angle_max = f.number("angle_max", s.angle_max);
  joint.state.theta_c = f.number("theta_c", 0.0);
  joint.state.theta_s = joint.state.theta_c;
  f.finish();
  return joint;
}

PushInput parse_push(const json& j, const std::string& path,
                     const KinematicChain& chain) {
  Fields f(j, path);
  PushInput p;
  p.force = f.vec2("force");
  const double link = f.number("link_index", static_cast<double>(p.link_index));
  if (link < 0 || link != std::floor(link) || link >= static_cast<double>(chain.size())) {
    Fields::fail_at(f.path("link_index"), "not a link of the chain");
  }
  p.link_index = static_cast<std::size_t>(link);
  p.application_distance = f.number("application_distance", p.application_distance);
  const double length = chain.joint(p.link_index).spec.link_length;
  if (p.application_distance < 0.0 || p.application_distance > length) {
    Fields::fail_at(f.path("application_distance"),
                    fmt::format("must lie in [0, {}]", length));
  }
  p.start = f.required_number("start");
  p.end = f.required_number("end");
  if (!(p.start < p.end)) Fields::fail_at(path, "requires start < end");
  f.finish();
  return p;
}

void parse_control(Fields& f, ControlConfig& c) {
  c.loop = parse_enum(f, "loop", c.loop, parse_loop_mode);
  c.locked = f.boolean("locked", c.locked);
  c.side_motion = parse_enum(f, "side_motion", c.side_motion, parse_side_motion);
  c.backward_disabled = f.boolean("backward_disabled", c.backward_disabled);
  c.hard_stop = f.number("hard_stop", c.hard_stop);
  c.lock_gesture = parse_enum(f, "lock_gesture", c.lock_gesture, parse_gesture);
  c.hold_duration = f.number("hold_duration", c.hold_duration);
}

json vec2_json(Vec2 v) { return json::array({v.x, v.y}); }

std::string_view axis_name(JointAxis a) {
  return a == JointAxis::Pitch ? "Pitch" : "Roll";
}

std::string format_number(double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of -0
  return fmt::format("{:.6g}", v);
}

}  // namespace

void apply_command(const ControlCommand& command, ControlConfig& config) {
  if (command.lock) config.locked = *command.lock;
  if (command.loop) config.loop = *command.loop;
  if (command.side_motion) config.side_motion = *command.side_motion;
  if (command.backward_disabled) config.backward_disabled = *command.backward_disabled;
}

std::size_t Scenario::step_count() const {
  if (duration_s <= 0.0) return 0;
  return static_cast<std::size_t>(std::ceil(duration_s / dt - 1e-9));
}

Scenario parse_scenario(std::string_view text) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ScenarioError("malformed JSON at " + describe_position(text, e.byte) +
                        ": " + e.what());
  }

  Scenario sc;
  Fields top(root, "");
  if (auto id = top.opt_string("id")) sc.id = *id;
  sc.duration_s = top.required_number("duration_s");
  if (sc.duration_s < 0.0) Fields::fail_at("duration_s", "must be non-negative");
  sc.dt = top.number("dt", sc.dt);
  if (!(sc.dt > 0.0 && sc.dt <= 0.1)) Fields::fail_at("dt", "must lie in (0, 0.1]");

  SimState& st = sc.initial;
  st.rng_seed = top.unsigned_integer("seed", 0);
  st.noise_std = top.number("noise_std", 0.0);
  if (st.noise_std < 0.0) Fields::fail_at("noise_std", "must be non-negative");

  if (const json* w = top.child("world")) {
    Fields f(*w, "world");
    if (const json* obs = f.array("obstacles")) {
      for (std::size_t i = 0; i < obs->size(); ++i) {
        st.world.obstacles.push_back(parse_obstacle((*obs)[i], item_path(f, "obstacles", i)));
      }
    }
    if (const json* sensors = f.array("sensors")) {
      for (std::size_t i = 0; i < sensors->size(); ++i) {
        st.world.sensors.push_back(parse_sensor((*sensors)[i], item_path(f, "sensors", i)));
      }
    } else {
      st.world.sensors = World::default_sensor_suite();
    }
    f.finish();
  } else {
    st.world.sensors = World::default_sensor_suite();
  }

  if (const json* c = top.child("chain")) {
    Fields f(*c, "chain");
    const double g = f.number("gravity", KinematicChain::kDefaultGravity);
    std::vector<Joint> joints = default_joints();
    if (const json* js = f.array("joints")) {
      joints.clear();
      for (std::size_t i = 0; i < js->size(); ++i) {
        joints.push_back(parse_joint((*js)[i], item_path(f, "joints", i)));
      }
    }
    f.finish();
    try {
      st.pitch_chain = KinematicChain(joints, JointAxis::Pitch, g);
      st.roll_chain = KinematicChain(joints, JointAxis::Roll, g);
    } catch (const ConfigError& e) {
      Fields::fail_at("chain", e.what());
    }
  }

  if (const json* e = top.child("estimator")) {
    Fields f(*e, "estimator");
    auto& c = st.estimator;
    c.deadband = f.number("deadband", c.deadband);
    c.gain = f.number("gain", c.gain);
    c.rotation_gain = f.number("rotation_gain", c.rotation_gain);
    c.pitch_joint = f.opt_string("pitch_joint").value_or(c.pitch_joint);
    c.roll_joint = f.opt_string("roll_joint").value_or(c.roll_joint);
    c.pitch_sign = static_cast<int>(f.number("pitch_sign", c.pitch_sign));
    c.roll_sign = static_cast<int>(f.number("roll_sign", c.roll_sign));
    c.smoothing_alpha = f.number("smoothing_alpha", c.smoothing_alpha);
    f.finish();
  }

  if (const json* c = top.child("control")) {
    Fields f(*c, "control");
    parse_control(f, st.control);
    f.finish();
  }

  if (const json* c = top.child("compliance")) {
    Fields f(*c, "compliance");
    auto& p = st.compliance;
    p.lower_A = f.number("lower_A", p.lower_A);
    p.upper_K = f.number("upper_K", p.upper_K);
    p.C = f.number("C", p.C);
    p.v = f.number("v", p.v);
    p.M = f.number("M", p.M);
    p.B = f.number("B", p.B);
    st.blend_obstacles = f.boolean("blend_obstacles", st.blend_obstacles);
    f.finish();
  }

  if (const json* l = top.child("limits")) {
    Fields f(*l, "limits");
    auto& m = st.limits;
    m.v_max = f.number("v_max", m.v_max);
    m.a_max = f.number("a_max", m.a_max);
    m.omega_max = f.number("omega_max", m.omega_max);
    f.finish();
  }

  if (const json* p = top.child("initial_pose")) {
    Fields f(*p, "initial_pose");
    st.pose = {f.number("x", 0.0), f.number("y", 0.0),
               normalize_angle(f.number("heading", 0.0))};
    f.finish();
  }
  if (const json* t = top.child("initial_twist")) {
    Fields f(*t, "initial_twist");
    st.twist = {f.number("vx", 0.0), f.number("vy", 0.0), f.number("omega", 0.0)};
    f.finish();
  }

  if (const json* pushes = top.array("pushes")) {
    for (std::size_t i = 0; i < pushes->size(); ++i) {
      sc.pushes.push_back(parse_push((*pushes)[i], item_path(top, "pushes", i),
                                     st.pitch_chain));
    }
  }
  if (const json* touches = top.array("touches")) {
    for (std::size_t i = 0; i < touches->size(); ++i) {
      Fields f((*touches)[i], item_path(top, "touches", i));
      TouchEvent ev;
      ev.sensor = parse_enum(f, "sensor", ev.sensor, parse_touch_sensor);
      ev.kind = parse_enum(f, "kind", ev.kind, parse_touch_kind);
      ev.time = f.required_number("time");
      f.finish();
      sc.touches.push_back(ev);
    }
  }
  if (const json* commands = top.array("commands")) {
    for (std::size_t i = 0; i < commands->size(); ++i) {
      Fields f((*commands)[i], item_path(top, "commands", i));
      ControlCommand c;
      c.time = f.required_number("time");
      c.lock = f.opt_boolean("lock");
      if (f.opt_string("loop")) {
        c.loop = parse_enum(f, "loop", LoopMode::Assisted, parse_loop_mode);
      }
      if (f.opt_string("side_motion")) {
        c.side_motion = parse_enum(f, "side_motion",
                                   SideMotionMode::VerticalAxisRotation,
                                   parse_side_motion);
      }
      c.backward_disabled = f.opt_boolean("backward_disabled");
      f.finish();
      sc.commands.push_back(c);
    }
  }
  top.finish();

  try {
    st.validate();
  } catch (const ConfigError& e) {
    throw ScenarioError(std::string("invalid scenario: ") + e.what());
  }
  return sc;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ScenarioError("cannot open scenario file '" + path.string() + "'");
  const std::string text{std::istreambuf_iterator<char>(in),
                         std::istreambuf_iterator<char>()};
  return parse_scenario(text);
}

json scenario_to_json(const Scenario& sc) {
  const SimState& st = sc.initial;
  json out;
  out["id"] = sc.id;
  out["duration_s"] = sc.duration_s;
  out["dt"] = sc.dt;
  out["seed"] = st.rng_seed;
  out["noise_std"] = st.noise_std;

  json obstacles = json::array();
  for (const auto& o : st.world.obstacles) {
    if (const auto* c = std::get_if<Circle>(&o)) {
      obstacles.push_back({{"type", "circle"}, {"center", vec2_json(c->center)},
                           {"radius", c->radius}});
    } else {
      const auto& s = std::get<Segment>(o);
      obstacles.push_back(
          {{"type", "segment"}, {"p1", vec2_json(s.p1)}, {"p2", vec2_json(s.p2)}});
    }
  }
  json sensors = json::array();
  for (const auto& s : st.world.sensors) {
    sensors.push_back({{"kind", s.kind == SensorKind::Laser ? "Laser" : "Sonar"},
                       {"mount_bearing", s.mount_bearing},
                       {"fov", s.fov},
                       {"ray_count", s.ray_count},
                       {"max_range", s.max_range}});
  }
  out["world"] = {{"obstacles", obstacles}, {"sensors", sensors}};

  json joints = json::array();
  for (const auto& j : st.pitch_chain.joints()) {
    const auto& s = j.spec;
    joints.push_back({{"name", s.name},
                      {"axis", axis_name(s.axis)},
                      {"link_length", s.link_length},
                      {"link_mass", s.link_mass},
                      {"com_offset", s.com_offset},
                      {"stiffness", s.stiffness},
                      {"coulomb_friction", s.coulomb_friction},
                      {"viscous_friction", s.viscous_friction},
                      {"angle_min", s.angle_min},
                      {"angle_max", s.angle_max},
                      {"theta_c", j.state.theta_c}});
  }
  out["chain"] = {{"gravity", st.pitch_chain.gravity()}, {"joints", joints}};

  const auto& e = st.estimator;
  out["estimator"] = {{"deadband", e.deadband},
                      {"gain", e.gain},
                      {"rotation_gain", e.rotation_gain},
                      {"pitch_joint", e.pitch_joint},
                      {"roll_joint", e.roll_joint},
                      {"pitch_sign", e.pitch_sign},
                      {"roll_sign", e.roll_sign},
                      {"smoothing_alpha", e.smoothing_alpha}};
  const auto& c = st.control;
  out["control"] = {
      {"loop", to_string(c.loop)},
      {"locked", c.locked},
      {"side_motion", to_string(c.side_motion)},
      {"backward_disabled", c.backward_disabled},
      {"hard_stop", c.hard_stop},
      {"lock_gesture", c.lock_gesture == LockGesture::Toggle ? "Toggle" : "PressAndHold"},
      {"hold_duration", c.hold_duration}};
  const auto& p = st.compliance;
  out["compliance"] = {{"lower_A", p.lower_A}, {"upper_K", p.upper_K},
                       {"C", p.C},             {"v", p.v},
                       {"M", p.M},             {"B", p.B},
                       {"blend_obstacles", st.blend_obstacles}};
  out["limits"] = {{"v_max", st.limits.v_max},
                   {"a_max", st.limits.a_max},
                   {"omega_max", st.limits.omega_max}};
  out["initial_pose"] = {{"x", st.pose.x}, {"y", st.pose.y}, {"heading", st.pose.heading}};
  out["initial_twist"] = {{"vx", st.twist.vx}, {"vy", st.twist.vy}, {"omega", st.twist.omega}};

  json pushes = json::array();
  for (const auto& push : sc.pushes) {
    pushes.push_back({{"force", vec2_json(push.force)},
                      {"link_index", push.link_index},
                      {"application_distance", push.application_distance},
                      {"start", push.start},
                      {"end", push.end}});
  }
  out["pushes"] = pushes;
  json touches = json::array();
  for (const auto& t : sc.touches) {
    touches.push_back(
        {{"sensor", t.sensor == TouchSensor::LeftHand ? "LeftHand" : "RightHand"},
         {"kind", t.kind == TouchKind::Press ? "Press" : "Release"},
         {"time", t.time}});
  }
  out["touches"] = touches;
  json commands = json::array();
  for (const auto& cmd : sc.commands) {
    json j{{"time", cmd.time}};
    if (cmd.lock) j["lock"] = *cmd.lock;
    if (cmd.loop) j["loop"] = to_string(*cmd.loop);
    if (cmd.side_motion) j["side_motion"] = to_string(*cmd.side_motion);
    if (cmd.backward_disabled) j["backward_disabled"] = *cmd.backward_disabled;
    commands.push_back(j);
  }
  out["commands"] = commands;
  return out;
}

RunResult run_scenario(const Scenario& sc) {
  RunResult result;
  SimState state = sc.initial;

  // Touches and commands in time order; ties keep file order, touches first.
  struct Event {
    double time;
    const TouchEvent* touch;
    const ControlCommand* command;
  };
  std::vector<Event> events;
  for (const auto& t : sc.touches) events.push_back({t.time, &t, nullptr});
  for (const auto& c : sc.commands) events.push_back({c.time, nullptr, &c});
  std::stable_sort(events.begin(), events.end(),
                   [](const Event& a, const Event& b) { return a.time < b.time; });
  std::size_t next_event = 0;

  const std::size_t steps = sc.step_count();
  result.records.reserve(steps);
  for (std::size_t k = 0; k < steps; ++k) {
    while (next_event < events.size() && events[next_event].time <= state.clock + 1e-9) {
      const Event& ev = events[next_event++];
      if (ev.touch) state.control = handle_touch(*ev.touch, state.control);
      if (ev.command) apply_command(*ev.command, state.control);
    }
    StepResult r = step(state, sc.pushes, sc.dt);
    result.records.push_back(r.record);
    state = std::move(r.state);
    if (r.collision) {
      result.collision = r.collision;
      break;
    }
  }
  result.summary = summarize(sc.id, sc.initial, result.records, sc.dt);
  result.summary.collision = result.collision.has_value();
  return result;
}

RunSummary summarize(std::string_view id, const SimState& initial,
                     std::span<const StepRecord> records, double dt) {
  RunSummary s;
  s.scenario_id = std::string(id);
  s.steps = records.size();
  s.final_pose = records.empty() ? initial.pose : records.back().pose;
  if (const auto n = nearest_obstacle(initial.world, initial.pose)) {
    s.min_obstacle_distance = n->distance;
  }
  BodyTwist prev = initial.twist;
  for (const auto& r : records) {
    s.max_speed = std::max(s.max_speed, r.twist.planar_speed());
    const double accel = std::hypot(r.twist.vx - prev.vx, r.twist.vy - prev.vy) / dt;
    s.max_accel = std::max(s.max_accel, accel);
    prev = r.twist;
    if (r.nearest_d) {
      s.min_obstacle_distance = std::min(s.min_obstacle_distance.value_or(*r.nearest_d),
                                         *r.nearest_d);
    }
  }
  return s;
}

json summary_to_json(const RunSummary& s) {
  json out;
  out["scenario"] = s.scenario_id;
  out["steps"] = s.steps;
  out["min_obstacle_distance"] =
      s.min_obstacle_distance ? json(*s.min_obstacle_distance) : json(nullptr);
  out["max_speed"] = s.max_speed;
  out["max_accel"] = s.max_accel;
  out["collision"] = s.collision;
  out["final_pose"] = {{"x", s.final_pose.x},
                       {"y", s.final_pose.y},
                       {"heading", s.final_pose.heading}};
  return out;
}

const char* const kTrajectoryHeader =
    "t,x,y,heading,vx,vy,omega,tau_ext_pitch,tau_ext_roll,r_c,nearest_d,locked,mode";

std::string format_trajectory_row(const StepRecord& r) {
  return fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{}", format_number(r.t),
                     format_number(r.pose.x), format_number(r.pose.y),
                     format_number(r.pose.heading), format_number(r.twist.vx),
                     format_number(r.twist.vy), format_number(r.twist.omega),
                     format_number(r.estimate.tau_ext_pitch),
                     format_number(r.estimate.tau_ext_roll), format_number(r.r_c),
                     r.nearest_d ? format_number(*r.nearest_d) : std::string(),
                     r.locked ? 1 : 0, to_string(r.loop));
}

void write_trajectory_csv(std::ostream& out, std::span<const StepRecord> records) {
  out << kTrajectoryHeader << '\n';
  for (const auto& r : records) out << format_trajectory_row(r) << '\n';
}

std::string trajectory_csv(std::span<const StepRecord> records) {
  std::ostringstream out;
  write_trajectory_csv(out, records);
  return out.str();
}

bool is_sweep_parameter(std::string_view name) {
  return name == "B" || name == "deadband" || name == "gain" || name == "v_max";
}

Scenario with_parameter(Scenario sc, std::string_view name, double value) {
  SimState& st = sc.initial;
  if (name == "B") {
    st.compliance.B = value;
  } else if (name == "deadband") {
    st.estimator.deadband = value;
  } else if (name == "gain") {
    st.estimator.gain = value;
  } else if (name == "v_max") {
    st.limits.v_max = value;
  } else {
    throw std::invalid_argument("unknown sweep parameter '" + std::string(name) +
                                "' (expected B, deadband, gain or v_max)");
  }
  try {
    st.validate();
  } catch (const ConfigError& e) {
    throw std::invalid_argument(fmt::format("{} = {}: {}", name, value, e.what()));
  }
  return sc;
}

std::vector<SweepEntry> sweep(const Scenario& scenario, std::string_view name,
                              std::span<const double> values) {
  if (!is_sweep_parameter(name)) {
    throw std::invalid_argument("unknown sweep parameter '" + std::string(name) +
                                "' (expected B, deadband, gain or v_max)");
  }
  if (values.empty()) throw std::invalid_argument("sweep needs at least one value");
  std::vector<SweepEntry> out;
  out.reserve(values.size());
  for (double v : values) {
    out.push_back({v, run_scenario(with_parameter(scenario, name, v))});
  }
  return out;
}

}  // namespace companion
