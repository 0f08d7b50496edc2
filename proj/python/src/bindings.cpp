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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "companion/base.hpp"
#include "companion/compliance.hpp"
#include "companion/control.hpp"
#include "companion/errors.hpp"
#include "companion/intention.hpp"
#include "companion/kinematics.hpp"
#include "companion/scenario.hpp"

namespace py = pybind11;
using namespace companion;

namespace {

// Scenario summaries and files travel as JSON text; the Python layer parses
// them.
struct PyRun {
  std::string summary_json;
  std::string csv;
  std::size_t steps;
  bool collision;
};

PyRun to_py(const RunResult& r) {
  return {summary_to_json(r.summary).dump(), trajectory_csv(r.records), r.records.size(),
          r.summary.collision};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Walk-companion simulator core";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<ScenarioError>(m, "ScenarioError", PyExc_ValueError);

  py::class_<BodyTwist>(m, "BodyTwist")
      .def(py::init<double, double, double>(), py::arg("vx") = 0.0, py::arg("vy") = 0.0,
           py::arg("omega") = 0.0)
      .def_readwrite("vx", &BodyTwist::vx)
      .def_readwrite("vy", &BodyTwist::vy)
      .def_readwrite("omega", &BodyTwist::omega)
      .def("planar_speed", &BodyTwist::planar_speed)
      .def("__repr__", [](const BodyTwist& t) {
        return "BodyTwist(" + std::to_string(t.vx) + ", " + std::to_string(t.vy) + ", " +
               std::to_string(t.omega) + ")";
      });

  py::class_<Pose>(m, "Pose")
      .def(py::init<double, double, double>(), py::arg("x") = 0.0, py::arg("y") = 0.0,
           py::arg("heading") = 0.0)
      .def_readwrite("x", &Pose::x)
      .def_readwrite("y", &Pose::y)
      .def_readwrite("heading", &Pose::heading);

  py::class_<WheelLayout>(m, "WheelLayout")
      .def(py::init<>())
      .def(py::init<std::array<double, 3>, double, double>(), py::arg("mount_bearings"),
           py::arg("base_radius"), py::arg("wheel_radius"))
      .def_property_readonly("mount_bearings", &WheelLayout::mount_bearings)
      .def_property_readonly("base_radius", &WheelLayout::base_radius)
      .def_property_readonly("wheel_radius", &WheelLayout::wheel_radius);

  m.def("inverse_kinematics", &inverse_kinematics, py::arg("twist"),
        py::arg("layout") = WheelLayout{});
  m.def("forward_kinematics", &forward_kinematics, py::arg("wheel_speeds"),
        py::arg("layout") = WheelLayout{});

  py::class_<MotionLimits>(m, "MotionLimits")
      .def(py::init<>())
      .def_readwrite("v_max", &MotionLimits::v_max)
      .def_readwrite("a_max", &MotionLimits::a_max)
      .def_readwrite("omega_max", &MotionLimits::omega_max);
  m.def("limit", &limit, py::arg("target"), py::arg("previous"), py::arg("dt"),
        py::arg("limits") = MotionLimits{});
  m.def("integrate", &integrate, py::arg("pose"), py::arg("twist"), py::arg("dt"));

  py::class_<ComplianceParams>(m, "ComplianceParams")
      .def(py::init<>())
      .def_readwrite("lower_A", &ComplianceParams::lower_A)
      .def_readwrite("upper_K", &ComplianceParams::upper_K)
      .def_readwrite("C", &ComplianceParams::C)
      .def_readwrite("v", &ComplianceParams::v)
      .def_readwrite("M", &ComplianceParams::M)
      .def_readwrite("B", &ComplianceParams::B);
  m.def("generalized_logistic", &generalized_logistic, py::arg("d"),
        py::arg("params") = ComplianceParams{});
  m.def("compliance", &compliance, py::arg("d"), py::arg("B") = 4.0);

  py::enum_<JointAxis>(m, "JointAxis")
      .value("Pitch", JointAxis::Pitch)
      .value("Roll", JointAxis::Roll);

  py::class_<KinematicChain>(m, "KinematicChain")
      .def(py::init([](JointAxis plane) { return default_chain(plane); }),
           py::arg("plane") = JointAxis::Pitch, "The built-in three-joint humanoid chain.")
      .def("__len__", &KinematicChain::size)
      .def_property_readonly("joint_names",
                             [](const KinematicChain& c) {
                               std::vector<std::string> out;
                               for (const auto& j : c.joints()) out.push_back(j.spec.name);
                               return out;
                             })
      .def("commanded", [](const KinematicChain& c) {
        std::vector<double> out;
        for (const auto& j : c.joints()) out.push_back(j.state.theta_c);
        return out;
      })
      .def("set_commanded", [](KinematicChain& c, const std::vector<double>& q) {
        c.set_commanded(q);
      });

  m.def("static_hold_torques", &static_hold_torques, py::arg("chain"));
  m.def(
      "propagate_contact_force",
      [](const KinematicChain& chain, std::size_t link, double distance, double fh,
         double fz) {
        return propagate_contact_force(chain, ContactForce{link, distance, {fh, fz}});
      },
      py::arg("chain"), py::arg("link_index"), py::arg("application_distance"),
      py::arg("fh"), py::arg("fz"),
      "Joint torques (J^T F) from a planar force on one link.");
  m.def(
      "estimate_external_torques",
      [](const KinematicChain& chain, std::size_t link, double distance, double fh,
         double fz, double noise_std, std::uint64_t seed) {
        const auto states = simulate_sensing(
            chain, ContactForce{link, distance, {fh, fz}}, noise_std, seed);
        std::vector<double> out;
        for (const auto& s : states) out.push_back(estimate_external_torque(s));
        return out;
      },
      py::arg("chain"), py::arg("link_index"), py::arg("application_distance"),
      py::arg("fh"), py::arg("fz"), py::arg("noise_std") = 0.0, py::arg("seed") = 0,
      "Simulates the joint sensors under a push and estimates tau_ext per joint.");

  py::class_<PyRun>(m, "RunOutput")
      .def_readonly("summary_json", &PyRun::summary_json)
      .def_readonly("csv", &PyRun::csv)
      .def_readonly("steps", &PyRun::steps)
      .def_readonly("collision", &PyRun::collision);

  m.def(
      "run_scenario_text",
      [](const std::string& text) {
        const Scenario sc = parse_scenario(text);
        py::gil_scoped_release release;
        return to_py(run_scenario(sc));
      },
      py::arg("text"));
  m.def(
      "sweep_text",
      [](const std::string& text, const std::string& param,
         const std::vector<double>& values) {
        const Scenario sc = parse_scenario(text);
        std::vector<SweepEntry> entries;
        {
          py::gil_scoped_release release;
          entries = sweep(sc, param, values);
        }
        std::vector<std::pair<double, PyRun>> out;
        for (const auto& e : entries) out.emplace_back(e.value, to_py(e.result));
        return out;
      },
      py::arg("text"), py::arg("param"), py::arg("values"));
  m.def(
      "normalize_scenario_text",
      [](const std::string& text) { return scenario_to_json(parse_scenario(text)).dump(); },
      py::arg("text"), "Parses, validates and re-serializes a scenario with defaults filled.");
}
