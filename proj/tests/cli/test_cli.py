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

import json
import os
import pathlib
import signal
import socket
import subprocess
import sys
import time

import pytest

ROOT = pathlib.Path(os.environ.get("COMPANION_ROOT", pathlib.Path(__file__).parents[2]))
BIN = os.environ.get("COMPANION_BIN", str(ROOT / "build" / "tools" / "companion"))
SCENARIOS = ROOT / "scenarios"
sys.path.insert(0, str(ROOT / "tools"))

import summarize_csv  # noqa: E402

# Six significant digits: each printed value is within 5e-6 of the stored one,
# relative.
QUANT = 5e-6


def run(*args, **kw):
    return subprocess.run([BIN, *map(str, args)], capture_output=True, text=True,
                          timeout=120, **kw)


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return p


def test_run_corridor(tmp_path):
    out = tmp_path / "corridor.csv"
    r = run("run", SCENARIOS / "corridor.json", "--out", out)
    assert r.returncode == 0, r.stderr
    summary = json.loads(r.stdout)
    assert summary["scenario"] == "corridor"
    assert summary["max_speed"] <= 0.35
    assert not summary["collision"]
    header = out.read_text().splitlines()[0]
    assert header == ("t,x,y,heading,vx,vy,omega,tau_ext_pitch,tau_ext_roll,r_c,"
                      "nearest_d,locked,mode")


def test_zero_duration(tmp_path):
    p = write(tmp_path, "zero.json", {"id": "zero", "duration_s": 0,
                                      "initial_pose": {"x": 1.5, "y": -2, "heading": 0.5}})
    r = run("run", p)
    assert r.returncode == 0, r.stderr
    s = json.loads(r.stdout)
    assert s["steps"] == 0
    assert s["final_pose"] == {"x": 1.5, "y": -2.0, "heading": 0.5}


def test_malformed_json_reports_position(tmp_path):
    p = write(tmp_path, "bad.json", '{\n  "duration_s": 1,\n  "dt": oops\n}\n')
    r = run("run", p)
    assert r.returncode == 2
    assert "line 3" in r.stderr


def test_validation_error_names_field(tmp_path):
    p = write(tmp_path, "bad.json", {"duration_s": 1, "limits": {"v_mx": 0.3}})
    r = run("run", p)
    assert r.returncode == 2
    assert "limits.v_mx" in r.stderr


def test_collision_exit_status(tmp_path):
    p = write(tmp_path, "crash.json", {
        "duration_s": 20, "control": {"loop": "NonAssisted"},
        "world": {"obstacles": [{"type": "segment", "p1": [1, -1], "p2": [1, 1]}]},
        "pushes": [{"force": [10, 0], "start": 0, "end": 20}]})
    r = run("run", p)
    assert r.returncode == 1
    assert json.loads(r.stdout)["collision"] is True


def test_runs_are_byte_identical(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for out in (a, b):
        assert run("run", SCENARIOS / "obstacle_field.json", "--out", out).returncode == 0
    assert a.read_bytes() == b.read_bytes()


@pytest.mark.parametrize("name", sorted(p.stem for p in SCENARIOS.glob("*.json")))
def test_independent_summary(tmp_path, name):
    out = tmp_path / f"{name}.csv"
    r = run("run", SCENARIOS / f"{name}.json", "--out", out)
    assert r.returncode == 0, r.stderr
    s = json.loads(r.stdout)
    scenario = json.loads((SCENARIOS / f"{name}.json").read_text())
    dt = scenario.get("dt", 0.02)
    mine = summarize_csv.summarize(out, dt)
    assert mine["steps"] == s["steps"]
    # Bounds from print rounding, not a fudge: speed error is at most QUANT of
    # the speed; an accel step mixes two rows.
    assert abs(mine["max_speed"] - s["max_speed"]) <= QUANT * s["max_speed"] + 1e-12
    assert abs(mine["max_accel"] - s["max_accel"]) <= 2 * QUANT * 0.35 / dt + 1e-12
    for k in ("x", "y", "heading"):
        assert abs(mine["final_pose"][k] - s["final_pose"][k]) <=             QUANT * abs(s["final_pose"][k]) + 1e-12


def test_sweep_monotone_in_b(tmp_path):
    r = run("sweep", SCENARIOS / "wall_approach.json", "--param", "B",
            "--values", "1,2,4,8", "--out", tmp_path)
    assert r.returncode == 0, r.stderr
    lines = [json.loads(line) for line in r.stdout.splitlines()]
    assert [x["value"] for x in lines] == [1, 2, 4, 8]
    d = [x["min_obstacle_distance"] for x in lines]
    assert all(b >= a for a, b in zip(d, d[1:]))
    assert all(x >= 0.25 for x in d)
    table = (tmp_path / "sweep.csv").read_text().splitlines()
    assert table[0].startswith("param,value,steps,min_obstacle_distance")
    assert len(table) == 5
    for v in (1, 2, 4, 8):
        assert (tmp_path / f"B_{v}.csv").exists()


def test_single_value_sweep_equals_run(tmp_path):
    r = run("sweep", SCENARIOS / "wall_approach.json", "--param", "B",
            "--values", "4", "--out", tmp_path / "sw")
    assert r.returncode == 0, r.stderr
    assert run("run", SCENARIOS / "wall_approach.json", "--out",
               tmp_path / "run.csv").returncode == 0
    assert (tmp_path / "sw" / "B_4.csv").read_bytes() == (tmp_path / "run.csv").read_bytes()


@pytest.mark.parametrize("args", [
    ["--param", "mass", "--values", "1,2"],
    ["--param", "B", "--values", ""],
    ["--param", "B"],
])
def test_sweep_usage_errors(tmp_path, args):
    r = run("sweep", SCENARIOS / "wall_approach.json", *args, "--out", tmp_path)
    assert r.returncode == 2


def start_server(tmp_path, port=0):
    proc = subprocess.Popen(
        [BIN, "serve", str(SCENARIOS / "obstacle_field.json"), "--port", str(port),
         "--out", str(tmp_path / "session.csv"), "--log", str(tmp_path / "log.json")],
        stdout=subprocess.PIPE, stderr=subprocess.PIPE, text=True)
    line = proc.stdout.readline()
    return proc, line


def test_serve_busy_port(tmp_path):
    with socket.socket() as s:
        s.bind(("127.0.0.1", 0))
        s.listen()
        proc, _ = start_server(tmp_path, s.getsockname()[1])
        assert proc.wait(timeout=10) == 2
        assert "cannot listen" in proc.stderr.read()


def test_serve_session_replays(tmp_path):
    ws = pytest.importorskip("websockets.sync.client")
    proc, line = start_server(tmp_path)
    try:
        assert line.startswith("listening on ws://")
        url = line.split()[-1]
        started = time.monotonic()
        with ws.connect(url) as conn:
            hello = json.loads(conn.recv())
            assert hello == {"v": 1, "type": "hello", "role": "controller"}
            state = json.loads(conn.recv())
            assert state["type"] == "state"
            assert time.monotonic() - started < 1.0
            conn.send(json.dumps({"v": 1, "type": "push", "fx": 10, "fy": 0}) + "\n")
            for _ in range(20):
                state = json.loads(conn.recv())
            conn.send(json.dumps({"v": 1, "type": "mode", "side_motion": "LateralTranslation"}))
            conn.send(json.dumps({"v": 1, "type": "push", "fx": 6, "fy": -8}))
            for _ in range(20):
                state = json.loads(conn.recv())
            assert state["twist"]["vx"] > 0
    finally:
        proc.send_signal(signal.SIGINT)
        assert proc.wait(timeout=10) == 0
    session = (tmp_path / "session.csv").read_bytes()
    assert session.count(b"\n") > 40
    r = run("run", tmp_path / "log.json", "--out", tmp_path / "replay.csv")
    assert r.returncode == 0, r.stderr
    assert (tmp_path / "replay.csv").read_bytes() == session
