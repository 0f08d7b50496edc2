# Copyright 2026 The Walk Companion Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Python bindings for the walk-companion simulator."""

import json
import os

from ._core import (  # noqa: F401
    BodyTwist,
    ComplianceParams,
    ConfigError,
    JointAxis,
    KinematicChain,
    MotionLimits,
    Pose,
    ScenarioError,
    WheelLayout,
    compliance,
    estimate_external_torques,
    forward_kinematics,
    generalized_logistic,
    integrate,
    inverse_kinematics,
    limit,
    propagate_contact_force,
    static_hold_torques,
)
from . import _core


def _text(scenario):
    if isinstance(scenario, dict):
        return json.dumps(scenario)
    if isinstance(scenario, (str, os.PathLike)) and os.path.exists(scenario):
        with open(scenario, encoding="utf-8") as f:
            return f.read()
    return str(scenario)


class RunResult:
    def __init__(self, out):
        self.summary = json.loads(out.summary_json)
        self.csv = out.csv
        self.steps = out.steps
        self.collision = out.collision

    def __repr__(self):
        return f"RunResult(steps={self.steps}, collision={self.collision})"


def run_scenario(scenario):
    """Runs a scenario given as a dict, JSON text or file path."""
    return RunResult(_core.run_scenario_text(_text(scenario)))


def sweep(scenario, param, values):
    """One run per value of param (B, deadband, gain or v_max)."""
    return [(v, RunResult(out)) for v, out in _core.sweep_text(_text(scenario), param, list(values))]


def load_scenario(scenario):
    """The scenario as a dict with every default filled in."""
    return json.loads(_core.normalize_scenario_text(_text(scenario)))
