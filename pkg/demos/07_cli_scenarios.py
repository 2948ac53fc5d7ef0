"""Driving the toolkit through the casq command line.

Scenario files are JSON with unit-suffixed keys; the CLI runs them,
sweeps parameters (in parallel, deterministically), and emits CSV, JSON,
or a minimal SVG plot. This script shells out to `python3 -m casq` the
same way a batch job would.

Run:  python3 demos/07_cli_scenarios.py
"""

import json
import subprocess
import sys
import tempfile
from importlib.resources import files
from pathlib import Path


def casq(*args):
    proc = subprocess.run(
        [sys.executable, "-m", "casq", *args], capture_output=True, text=True
    )
    if proc.returncode != 0:
        raise SystemExit(f"casq {' '.join(args)} failed:\n{proc.stderr}")
    return proc.stdout


bundled = files("casq.data").joinpath("scenarios/sagnac_straightline.json")
print("# bundled scenario:")
print(bundled.read_text())

print("# casq run (JSON report):")
print(casq("run", str(bundled)))

with tempfile.TemporaryDirectory() as tmp:
    # write a scenario of our own: the same geometry, swept over y
    scenario = json.loads(bundled.read_text())
    path = Path(tmp) / "scan.json"
    path.write_text(json.dumps(scenario, indent=2))

    out = Path(tmp) / "scan.csv"
    casq(
        "sweep", str(path), "--param", "y_m",
        "--from", "1e-7", "--to", "1e-6", "--points", "7", "--log",
        "--jobs", "2", "--out", str(out),
    )
    print("# casq sweep over y_m (log-spaced, 2 workers):")
    print(out.read_text())

    svg = Path(tmp) / "scan.svg"
    casq(
        "sweep", str(path), "--param", "y_m",
        "--from", "1e-7", "--to", "1e-6", "--points", "7", "--log",
        "--format", "svg-plotdata", "--out", str(svg),
    )
    print(f"# svg plot written ({svg.stat().st_size} bytes), first line:")
    print(svg.read_text().splitlines()[1])

print("# species database:")
print(casq("species", "show", "two-level-demo"))
