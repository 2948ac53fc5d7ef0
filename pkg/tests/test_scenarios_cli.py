"""Scenario parsing, execution, sweeps, emission, and CLI exit codes."""

import json
import math
import subprocess
import sys
import xml.etree.ElementTree as ET
from importlib.resources import files

import pytest

from casq.errors import BadParameterPath, ParseError, UnitMismatch, UnknownSpecies
from casq.sagnac import SpinningParticle, ell_omega
from casq.scenarios import (
    emit,
    parse_scenario_dict,
    run_scenario,
    scenario_to_dict,
    sweep,
    to_canonical_json,
)
from casq.species import default_species_db

DB = default_species_db()

PARTICLE_JSON = {
    "alpha0_F_m2": 1.0e-32,
    "omega_s_rad_per_s": 8.0e15,
    "omega_rad_per_s": [0.0, 0.0, 1.0e5],
}


def minimal_quasi_static():
    return {
        "kind": "QuasiStatic",
        "species": "two-level-demo",
        "path": {"kind": "linear", "h_m": 1e-6, "v_m_per_s": 1.0},
        "window": {"t_start_s": 0.0, "t_end_s": 1e-7},
    }


def straightline_scenario(y):
    return {
        "kind": "SagnacStraightLine",
        "species": "two-level-demo",
        "particle": dict(PARTICLE_JSON),
        "y_m": y,
    }


def test_parse_minimal_fills_defaults():
    sc = parse_scenario_dict(minimal_quasi_static(), DB)
    assert sc.kind == "QuasiStatic"
    assert sc.species.name == "two-level-demo"
    assert sc.z_min == 1e-9
    assert sc.quadrature is None


def _one_of_each_kind():
    harmonic = {"kind": "harmonic", "h_m": 1e-6, "amplitude_m": 1e-7,
                "omega_cm_rad_per_s": 6.283185307179586e9}
    window = {"t_start_s": 0.0, "t_end_s": 2.5e-10}
    line3d = {"kind": "straight_line", "r0_m": [0.0, 3e-7, 0.0],
              "v_m_per_s": [100.0, 0.0, 0.0]}
    osc = {"r_max_m": 1e-7, "omega_cm_rad_per_s": 628318.5307179586}
    return [
        minimal_quasi_static(),
        {"kind": "MotionalMirror", "species": "two-level-demo",
         "path": harmonic, "window": window},
        {"kind": "Nonlocal", "species": "two-level-demo",
         "paths": [harmonic, {"kind": "constant", "h_m": 2e-6}], "window": window},
        {"kind": "TotalMirror", "species": "two-level-demo",
         "paths": [harmonic, {"kind": "constant", "h_m": 2e-6}], "window": window},
        {"kind": "Sagnac", "species": "two-level-demo",
         "particle": dict(PARTICLE_JSON), "trajectory": line3d,
         "window": {"improper": True}},
        straightline_scenario(3e-7),
        {"kind": "SagnacSymmetric", "species": "two-level-demo",
         "particle": dict(PARTICLE_JSON), "y1_m": 3e-7},
        {"kind": "DceClosed", "species": "two-level-demo", "oscillation": dict(osc)},
        {"kind": "DceNumeric", "species": "two-level-demo", "oscillation": dict(osc),
         "n_spectrum": 5},
    ]


@pytest.mark.parametrize("data", _one_of_each_kind(), ids=lambda d: d["kind"])
def test_parse_serialize_round_trip(data):
    sc = parse_scenario_dict(data, DB)
    canon = scenario_to_dict(sc)
    sc2 = parse_scenario_dict(canon, DB)
    assert scenario_to_dict(sc2) == canon


def test_missing_omega_names_key():
    bad = {
        "kind": "Sagnac",
        "species": "two-level-demo",
        "particle": {"alpha0_F_m2": 1e-32, "omega_s_rad_per_s": 8e15},
        "trajectory": {"kind": "straight_line", "r0_m": [0, 3e-7, 0],
                       "v_m_per_s": [100, 0, 0]},
        "window": {"improper": True},
    }
    with pytest.raises(ParseError) as err:
        parse_scenario_dict(bad, DB)
    assert "omega_rad_per_s" in str(err.value)


def test_unknown_species():
    data = minimal_quasi_static()
    data["species"] = "unobtainium"
    with pytest.raises(UnknownSpecies):
        parse_scenario_dict(data, DB)


def test_wrong_unit_suffix_flagged():
    data = straightline_scenario(3e-7)
    data["y_um"] = data.pop("y_m")
    with pytest.raises(UnitMismatch) as err:
        parse_scenario_dict(data, DB)
    assert "y_m" in str(err.value)


def test_run_straightline_at_ell():
    species = next(s for s in DB if s.name == "two-level-demo")
    particle = SpinningParticle(1e-32, 8e15, (0.0, 0.0, 1e5))
    ell = ell_omega(species, particle)
    sc = parse_scenario_dict(straightline_scenario(ell), DB)
    report = run_scenario(sc)
    assert report.value == pytest.approx(15.0 * math.pi / 16.0, rel=1e-12)
    assert report.operation == "sagnac.sagnac_phase_straightline"


def test_run_identical_paths_nonlocal_zero():
    data = {
        "kind": "Nonlocal",
        "species": "two-level-demo",
        "paths": [
            {"kind": "harmonic", "h_m": 1e-6, "amplitude_m": 1e-7,
             "omega_cm_rad_per_s": 62831.853071795864},
            {"kind": "harmonic", "h_m": 1e-6, "amplitude_m": 1e-7,
             "omega_cm_rad_per_s": 62831.853071795864},
        ],
        "window": {"t_start_s": 0.0, "t_end_s": 1e-4},
        "quadrature": {"rel_tol": 1e-10, "abs_tol": 1e-20},
    }
    report = run_scenario(parse_scenario_dict(data, DB))
    assert abs(report.value) < 1e-18


def test_run_deterministic():
    sc = parse_scenario_dict(minimal_quasi_static(), DB)
    r1 = run_scenario(sc)
    r2 = run_scenario(sc)
    assert r1.to_dict() == r2.to_dict()


# -- sweep -----------------------------------------------------------------------

def test_sweep_sixth_power_law():
    species = next(s for s in DB if s.name == "two-level-demo")
    particle = SpinningParticle(1e-32, 8e15, (0.0, 0.0, 1e5))
    ell = ell_omega(species, particle)
    rows = sweep(straightline_scenario(ell), "y_m", [ell, 2.0 * ell])
    assert [r.param_value for r in rows] == [ell, 2.0 * ell]
    assert rows[0].report.value == pytest.approx(64.0 * rows[1].report.value, rel=1e-11)


def test_sweep_rows_sorted_and_errors_recorded():
    rows = sweep(straightline_scenario(3e-7), "y_m", [6e-7, 0.0, 3e-7])
    assert [r.param_value for r in rows] == [0.0, 3e-7, 6e-7]
    assert rows[0].report is None and "ZeroImpactParameter" in rows[0].error
    assert rows[1].report is not None and rows[2].report is not None


def test_sweep_parallel_matches_serial():
    values = [3e-7, 4e-7, 5e-7, 6e-7]
    serial = sweep(straightline_scenario(3e-7), "y_m", values, jobs=1)
    parallel = sweep(straightline_scenario(3e-7), "y_m", values, jobs=4)
    for a, b in zip(serial, parallel):
        assert a.param_value == b.param_value
        assert a.report.to_dict() == b.report.to_dict()


def test_sweep_bad_path():
    with pytest.raises(BadParameterPath):
        sweep(straightline_scenario(3e-7), "nope.deeper", [1.0])
    with pytest.raises(BadParameterPath):
        sweep(straightline_scenario(3e-7), "species", [1.0])


def test_sweep_nested_path():
    rows = sweep(
        straightline_scenario(3e-7), "particle.omega_rad_per_s.2", [1e5, 2e5]
    )
    assert rows[1].report.value == pytest.approx(2.0 * rows[0].report.value, rel=1e-11)


# -- emission --------------------------------------------------------------------

def test_emit_csv_shape(tmp_path):
    report = run_scenario(parse_scenario_dict(minimal_quasi_static(), DB))
    text = emit(report, "csv", str(tmp_path / "out.csv"))
    lines = text.strip().split("\n")
    assert len(lines) == 2
    assert lines[0].startswith("scenario_kind,species,param_name,param_value")
    assert (tmp_path / "out.csv").read_text() == text


def test_emit_json_round_trip():
    report = run_scenario(parse_scenario_dict(minimal_quasi_static(), DB))
    text = emit(report, "json")
    assert json.loads(text) == report.to_dict()


def test_emit_svg_wellformed(tmp_path):
    rows = sweep(straightline_scenario(3e-7), "y_m", [3e-7, 4e-7, 5e-7])
    text = emit(rows, "svg-plotdata", str(tmp_path / "plot.svg"))
    root = ET.fromstring(text)
    polylines = [el for el in root.iter() if el.tag.endswith("polyline")]
    assert len(polylines) == 1
    assert polylines[0].get("points")


def test_canonical_json_17_digits():
    text = to_canonical_json({"x": 0.1})
    assert "0.10000000000000001" in text


# -- CLI subprocess --------------------------------------------------------------

def _casq(*args, cwd=None):
    return subprocess.run(
        [sys.executable, "-m", "casq", *args],
        capture_output=True, text=True, cwd=cwd,
    )


def _scenario_path(name):
    return str(files("casq.data").joinpath(f"scenarios/{name}"))


def test_cli_run_exit_zero_and_stdout():
    proc = _casq("run", _scenario_path("quasi_static_linear.json"))
    assert proc.returncode == 0
    payload = json.loads(proc.stdout)
    assert payload["scenario_kind"] == "QuasiStatic"
    assert payload["metadata"]["constants_hash"]


def test_cli_parse_error_exit_2(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"kind": "QuasiStatic"')
    proc = _casq("run", str(bad))
    assert proc.returncode == 2
    assert "error" in proc.stderr


def test_cli_validation_error_exit_2(tmp_path):
    data = minimal_quasi_static()
    data["species"] = "unobtainium"
    p = tmp_path / "s.json"
    p.write_text(json.dumps(data))
    assert _casq("run", str(p)).returncode == 2


def test_cli_nonconvergent_exit_3(tmp_path):
    data = {
        "kind": "Sagnac",
        "species": "two-level-demo",
        "particle": dict(PARTICLE_JSON),
        "trajectory": {"kind": "straight_line", "r0_m": [0, 3e-7, 0],
                       "v_m_per_s": [100, 0, 0]},
        "window": {"improper": True},
        "quadrature": {"rel_tol": 1e-14, "max_subdivisions": 1},
    }
    p = tmp_path / "s.json"
    p.write_text(json.dumps(data))
    proc = _casq("run", str(p))
    assert proc.returncode == 3


def test_cli_io_error_exit_4(tmp_path):
    p = tmp_path / "s.json"
    p.write_text(json.dumps(minimal_quasi_static()))
    proc = _casq("run", str(p), "--out", str(tmp_path / "no-such-dir" / "x.csv"))
    assert proc.returncode == 4


def test_cli_species_listing():
    proc = _casq("species", "list")
    assert proc.returncode == 0
    assert "two-level-demo" in proc.stdout
    proc = _casq("species", "show", "two-level-demo")
    assert proc.returncode == 0
    assert "alpha_static_F_m2" in proc.stdout


def test_cli_species_db_flag(tmp_path):
    db = tmp_path / "db.json"
    db.write_text(json.dumps({
        "species": [{"name": "custom",
                     "transitions": [{"omega_eg_rad_per_s": 1e15, "d2_C2m2": 1e-60}]}]
    }))
    proc = _casq("--species-db", str(db), "species", "list")
    assert proc.returncode == 0
    assert proc.stdout.strip().startswith("custom")


def test_cli_sweep_bad_values_exit_2():
    proc = _casq("sweep", _scenario_path("sagnac_straightline.json"),
                 "--param", "y_m", "--values", "1e-7,oops")
    assert proc.returncode == 2
    proc = _casq("sweep", _scenario_path("sagnac_straightline.json"),
                 "--param", "y_m", "--from", "1e-7", "--to", "1e-6",
                 "--points", "many")
    assert proc.returncode == 2


def test_cli_json_byte_identical(tmp_path):
    outs = []
    for i in range(2):
        out = tmp_path / f"r{i}.json"
        proc = _casq("run", _scenario_path("dce_numeric.json"),
                     "--format", "json", "--out", str(out))
        assert proc.returncode == 0, proc.stderr
        payload = json.loads(out.read_text())
        assert "series" in payload  # spectrum samples ride along in JSON
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]


def test_cli_sweep_log_spacing(tmp_path):
    out = tmp_path / "sweep.csv"
    proc = _casq(
        "sweep", _scenario_path("sagnac_straightline.json"),
        "--param", "y_m", "--from", "1e-9", "--to", "1e-7", "--points", "3",
        "--log", "--out", str(out),
    )
    assert proc.returncode == 0
    lines = out.read_text().strip().split("\n")[1:]
    values = [float(line.split(",")[3]) for line in lines]
    assert values == pytest.approx([1e-9, 1e-8, 1e-7], rel=1e-12)
