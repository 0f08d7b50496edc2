#!/usr/bin/env python3
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

"""Recompute run summary metrics from a trajectory CSV.

Works from the CSV alone, so it checks the in-process summary independently.
The step before the first row is taken to be at rest unless --initial-vx/vy
say otherwise.
"""

import argparse
import csv
import json
import math
import sys


def summarize(path, dt=None, initial_vx=0.0, initial_vy=0.0):
    with open(path, newline="") as f:
        rows = list(csv.DictReader(f))
    out = {"steps": len(rows), "max_speed": 0.0, "max_accel": 0.0,
           "min_obstacle_distance": None, "final_pose": None}
    if not rows:
        return out
    if dt is None:
        dt = float(rows[0]["t"])
    pvx, pvy = initial_vx, initial_vy
    for row in rows:
        vx, vy = float(row["vx"]), float(row["vy"])
        out["max_speed"] = max(out["max_speed"], math.hypot(vx, vy))
        out["max_accel"] = max(out["max_accel"], math.hypot(vx - pvx, vy - pvy) / dt)
        pvx, pvy = vx, vy
        if row["nearest_d"]:
            d = float(row["nearest_d"])
            m = out["min_obstacle_distance"]
            out["min_obstacle_distance"] = d if m is None else min(m, d)
    last = rows[-1]
    out["final_pose"] = {k: float(last[k]) for k in ("x", "y", "heading")}
    return out


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("csv", help="trajectory CSV written by 'companion run'")
    parser.add_argument("--dt", type=float, help="step length in seconds (default: first t)")
    parser.add_argument("--initial-vx", type=float, default=0.0)
    parser.add_argument("--initial-vy", type=float, default=0.0)
    args = parser.parse_args(argv)
    json.dump(summarize(args.csv, args.dt, args.initial_vx, args.initial_vy), sys.stdout)
    sys.stdout.write("\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
