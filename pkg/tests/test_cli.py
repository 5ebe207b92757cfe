"""Command line interface: config parsing, artifacts, exit codes."""

import json
import subprocess
import sys

import numpy as np
import pytest

from sqgfronts.cli import SUITES, UsageError, _fmt, load_config, main, run_suite, write_csv

PERIODIC_CFG = {
    "grid": {"n": 256, "length": 4 * np.pi, "x_min": -2 * np.pi, "periodic": True},
    "initial": {"family": "gaussian", "params": {"amplitude": 0.1, "width": 0.5, "center": 0.0}},
    "t_end": 0.05,
    "output_stride": 20,
}

LINE_CFG = {
    "grid": {"n": 600, "length": 60.0, "x_min": -30.0},
    "initial": {"family": "gaussian", "params": {"amplitude": 0.5, "width": 2.0, "center": 0.0}},
    "t_end": 0.01,
    "dt": 0.005,
}


def _write_cfg(tmp_path, payload, name="cfg.json"):
    p = tmp_path / name
    p.write_text(json.dumps(payload))
    return str(p)


def test_load_config_roundtrip(tmp_path):
    cfg, raw = load_config(_write_cfg(tmp_path, LINE_CFG))
    assert cfg.backend == "line_quadrature"
    assert cfg.grid.n == 600 and not cfg.grid.periodic
    assert cfg.dt == 0.005
    assert cfg.output_stride == 1
    assert raw["t_end"] == 0.01

    cfg2, _ = load_config(_write_cfg(tmp_path, PERIODIC_CFG, "p.json"))
    assert cfg2.backend == "periodic_spectral"
    assert cfg2.dt is None and cfg2.output_stride == 20


def test_load_config_overrides(tmp_path):
    path = _write_cfg(tmp_path, LINE_CFG)
    cfg, _ = load_config(path, n_override=1200, dt_override=0.001)
    assert cfg.grid.n == 1200
    assert cfg.dt == 0.001


@pytest.mark.parametrize(
    "mutate",
    [
        lambda c: c.pop("grid"),
        lambda c: c["grid"].update(n=255),
        lambda c: c["grid"].update(n=True),
        lambda c: c["grid"].update(length=-5.0),
        lambda c: c.pop("initial"),
        lambda c: c["initial"].update(family="sawtooth"),
        lambda c: c["initial"]["params"].pop("width"),
        lambda c: c.update(backend="crank_nicolson"),
        lambda c: c.update(kernel={"hh": 1.0}),
        lambda c: c.update(kernel={"h": -2.0}),
        lambda c: c.update(t_end=0.0),
        lambda c: c.update(backend="periodic"),  # line grid + periodic backend
    ],
)
def test_load_config_rejects(tmp_path, mutate):
    payload = json.loads(json.dumps(LINE_CFG))
    mutate(payload)
    with pytest.raises(UsageError):
        load_config(_write_cfg(tmp_path, payload))


def test_load_config_bad_file(tmp_path):
    with pytest.raises(UsageError):
        load_config(str(tmp_path / "missing.json"))
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(UsageError):
        load_config(str(bad))


def test_param_errors_name_the_family(tmp_path):
    payload = json.loads(json.dumps(LINE_CFG))
    payload["initial"]["params"].pop("width")
    with pytest.raises(UsageError) as ei:
        load_config(_write_cfg(tmp_path, payload))
    assert "gaussian" in str(ei.value)
    assert "_gaussian" not in str(ei.value)


def test_fmt_floats():
    assert _fmt(0.1) == "0.1"
    assert _fmt(np.float64(0.25)) == "0.25"  # numpy scalars must not leak their repr
    assert _fmt(3) == "3"


def test_write_csv_deterministic(tmp_path):
    rows = [(0.1, np.float64(2.5)), (1.0 / 3.0, -1e-17)]
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    write_csv(a, ["p", "q"], rows)
    write_csv(b, ["p", "q"], list(rows))
    assert a.read_bytes() == b.read_bytes()
    assert a.read_text().splitlines()[0] == "p,q"
    assert "np.float64" not in a.read_text()


def test_run_suite_unknown():
    with pytest.raises(UsageError):
        run_suite("spectra", None, None, 1.0)
    assert SUITES == ("identities", "equivalence", "farfield", "qg", "symmetry")


def test_verify_qg_passes(capsys):
    assert main(["verify", "--suite", "qg"]) == 0
    out = capsys.readouterr().out
    assert "all checks passed" in out


def test_verify_unknown_suite():
    assert main(["verify", "--suite", "spectra"]) == 2


def test_verify_impossible_tolerance(tmp_path):
    code = main(["verify", "--suite", "qg", "--tolerance-scale", "1e-12",
                 "--out", str(tmp_path / "v")])
    assert code == 1
    manifest = json.loads((tmp_path / "v" / "manifest.json").read_text())
    assert manifest["passed"] is False
    assert any(not c["passed"] for c in manifest["checks"])


def test_simulate_writes_artifacts(tmp_path):
    cfg = _write_cfg(tmp_path, PERIODIC_CFG)
    out1, out2 = tmp_path / "r1", tmp_path / "r2"
    assert main(["simulate", "--config", cfg, "--out", str(out1)]) == 0
    assert main(["simulate", "--config", cfg, "--out", str(out2)]) == 0
    manifest = json.loads((out1 / "manifest.json").read_text())
    assert manifest["aborted"] is False
    assert manifest["snapshots"]
    for d in manifest["diagnostics"]:
        assert set(d) >= {"t", "mean", "l2", "max_slope"}
    # identical inputs, byte-identical snapshot bodies
    for name in manifest["snapshots"]:
        assert (out1 / name).read_bytes() == (out2 / name).read_bytes()


def test_simulate_abort_exit_code(tmp_path):
    steep = json.loads(json.dumps(PERIODIC_CFG))
    steep["initial"]["params"] = {"amplitude": 30.0, "width": 0.2, "center": 0.0}
    steep["t_end"] = 0.01
    cfg = _write_cfg(tmp_path, steep, "steep.json")
    code = main(["simulate", "--config", cfg, "--out", str(tmp_path / "ab")])
    assert code == 1
    manifest = json.loads((tmp_path / "ab" / "manifest.json").read_text())
    assert manifest["aborted"] is True


def test_simulate_missing_config(tmp_path):
    assert main(["simulate", "--config", str(tmp_path / "nope.json")]) == 2


def test_dispersion_small_run(tmp_path):
    out = tmp_path / "disp"
    code = main(["dispersion", "--n", "128", "--xi", "1,2", "--out", str(out)])
    assert code == 0
    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["passed"] is True
    body = (out / "dispersion.csv").read_text().splitlines()
    assert body[0] == "xi,omega_predicted,omega_measured,speed_predicted,speed_measured,rel_error"
    assert len(body) == 3


@pytest.mark.parametrize(
    "argv",
    [
        ["dispersion", "--n", "128", "--xi", "0"],
        ["dispersion", "--n", "64", "--xi", "40"],  # unresolved mode
        ["dispersion", "--n", "128", "--xi", "1.5"],
        ["dispersion", "--n", "128", "--amplitude", "0.1"],
        ["dispersion", "--n", "128", "--xi", ""],
    ],
)
def test_dispersion_rejects(argv, tmp_path):
    assert main(argv + ["--out", str(tmp_path / "d")]) == 2


def test_velocity_map(tmp_path):
    cfg = _write_cfg(tmp_path, LINE_CFG)
    out = tmp_path / "vm"
    code = main(["velocity-map", "--config", cfg, "--probe-x", "0.0,3.0",
                 "--probe-y=-100.0,100.0", "--out", str(out)])
    assert code == 0
    lines = (out / "velocity_map.csv").read_text().splitlines()
    assert lines[0] == "x,y,u,v,u_minus_2log_abs_y"
    assert len(lines) == 5


def test_velocity_map_needs_line_backend(tmp_path):
    cfg = _write_cfg(tmp_path, PERIODIC_CFG)
    assert main(["velocity-map", "--config", cfg, "--out", str(tmp_path / "vm")]) == 2


def test_velocity_map_probe_on_front(tmp_path):
    cfg = _write_cfg(tmp_path, LINE_CFG)
    code = main(["velocity-map", "--config", cfg, "--probe-x", "0.0",
                 "--probe-y", "0.5", "--out", str(tmp_path / "vm")])
    assert code == 2  # singular probe reported as a usage error


def test_symmetry_identity(tmp_path):
    out = tmp_path / "sym"
    code = main(["symmetry", "--k", "1.0", "--n", "64", "--t-end", "0.1",
                 "--out", str(out)])
    assert code == 0
    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["passed"] is True


def test_symmetry_bad_k():
    assert main(["symmetry", "--k", "-2.0", "--n", "64"]) == 2


def test_console_script_version():
    res = subprocess.run([sys.executable, "-m", "sqgfronts.cli", "--version"],
                         capture_output=True, text=True)
    assert res.returncode == 0
