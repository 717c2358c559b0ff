import hashlib
import json
from pathlib import Path

import numpy as np
import pytest

from relwave.cli import main as cli_main
from relwave.scenarios import (Scenario, ScenarioError, builtin_scenarios,
                               list_scenarios, load_config, resolve_scenario,
                               run)

TINY = Scenario(
    name="tiny", family="gauss-free",
    cases=({"sigma0": 3.0, "gamma0": 1.0},),
    t_list=(0.0, 2.0), x_min=-18.0, x_max=18.0, x_count=301,
    outputs=("density", "metrics"),
)


def test_catalog_has_nine_entries():
    cat = builtin_scenarios()
    assert len(cat) == 9
    assert sorted(cat) == [f"fig{i}" for i in range(1, 10)]
    for name, desc in list_scenarios():
        assert name.startswith("fig") and desc


def test_unknown_scenario_lists_catalog():
    with pytest.raises(ScenarioError, match="fig1"):
        resolve_scenario("fig99")


def test_alias_restricts_outputs():
    scn = resolve_scenario("fig7-lowerleft")
    assert scn.outputs == ("spectrum",)
    assert scn.family == "uniform-field"


def test_scenario_validation():
    base = dict(name="x", family="gauss-free",
                cases=({"sigma0": 1.0, "gamma0": 1.0},), t_list=(0.0,))
    with pytest.raises(ScenarioError):
        Scenario(**{**base, "t_list": ()})
    with pytest.raises(ScenarioError):
        Scenario(**{**base, "x_count": 32})
    with pytest.raises(ScenarioError):
        Scenario(**{**base, "family": "warp"})
    with pytest.raises(ScenarioError):
        Scenario(**{**base, "outputs": ("holograms",)})
    with pytest.raises(ScenarioError):
        Scenario(**{**base, "normalization": "unit-vibes"})
    with pytest.raises(ScenarioError):
        Scenario(**{**base, "cases": ()})


def test_run_writes_outputs_and_manifest(tmp_path):
    manifest = run(TINY, out_dir=tmp_path)
    assert len(manifest.outputs) == 2
    for fname, digest in manifest.outputs.items():
        data = (tmp_path / fname).read_bytes()
        assert hashlib.sha256(data).hexdigest() == digest
    density = (tmp_path / "tiny_density_sigma3_gamma1.csv").read_text().splitlines()
    assert density[0] == "t,x,rho,re_psi,im_psi"
    assert len(density) == 1 + 2 * TINY.x_count
    metrics = (tmp_path / "tiny_metrics_sigma3_gamma1.csv").read_text().splitlines()
    assert metrics[0] == "t,G_psi,sigma_psi,G_rho,sigma_rho,imag_residual"
    man = json.loads((tmp_path / "tiny_manifest.json").read_text())
    assert man["tool_version"]
    assert man["scenario"]["name"] == "tiny"


def test_run_deterministic(tmp_path):
    m1 = run(TINY, out_dir=tmp_path / "a")
    m2 = run(TINY, out_dir=tmp_path / "b")
    for fname in m1.outputs:
        assert m1.outputs[fname] == m2.outputs[fname]
        assert (tmp_path / "a" / fname).read_bytes() == (tmp_path / "b" / fname).read_bytes()


def test_run_threads_match_serial(tmp_path):
    m1 = run(TINY, out_dir=tmp_path / "s", threads=1)
    m2 = run(TINY, out_dir=tmp_path / "p", threads=2)
    assert m1.outputs == m2.outputs


def test_unit_charge_normalization(tmp_path):
    scn = Scenario(name="n", family="gauss-free",
                   cases=({"sigma0": 3.0, "gamma0": 1.0},),
                   t_list=(0.0,), x_min=-20.0, x_max=20.0, x_count=401,
                   outputs=("density",), normalization="unit-charge")
    run(scn, out_dir=tmp_path)
    rows = np.loadtxt(tmp_path / "n_density_sigma3_gamma1.csv",
                      delimiter=",", skiprows=1)
    total = np.trapezoid(rows[:, 2], rows[:, 1])
    assert abs(total - 1.0) < 1e-9


CONFIG_TEXT = """
[mini]
family = gauss-free
cases = sigma0=3, gamma0=1
t_list = 0, 2
x_min = -18
x_max = 18
x_count = 301
outputs = widths
"""


def test_load_config_roundtrip(tmp_path):
    cfg = tmp_path / "scen.ini"
    cfg.write_text(CONFIG_TEXT)
    scenarios = load_config(cfg)
    assert len(scenarios) == 1
    scn = scenarios[0]
    assert scn.name == "mini" and scn.x_count == 301
    manifest = run(scn, out_dir=tmp_path)
    widths = (tmp_path / "mini_widths_sigma3_gamma1.csv").read_text().splitlines()
    assert widths[0] == "t,sigma_rho,sigma_psi"
    assert len(widths) == 3


def test_load_config_unknown_key(tmp_path):
    cfg = tmp_path / "bad.ini"
    cfg.write_text("[s]\nfamily = gauss-free\ncases = sigma0=1, gamma0=1\n"
                   "t_list = 0\nwarp_factor = 9\n")
    with pytest.raises(ScenarioError, match=r"\[s\].*warp_factor"):
        load_config(cfg)


def test_load_config_missing_file(tmp_path):
    with pytest.raises(ScenarioError, match="not found"):
        load_config(tmp_path / "nope.ini")


def test_cli_list_and_exit_codes(tmp_path, capsys):
    assert cli_main(["list"]) == 0
    out = capsys.readouterr().out
    assert "fig1" in out and "fig9" in out

    assert cli_main(["run", "--scenario", "does-not-exist"]) == 1
    assert cli_main(["run"]) == 1

    cfg = tmp_path / "scen.ini"
    cfg.write_text(CONFIG_TEXT)
    code = cli_main(["run", "--config", str(cfg), "--out-dir", str(tmp_path / "o")])
    assert code == 0
    assert (tmp_path / "o" / "mini_widths_sigma3_gamma1.csv").exists()

    assert cli_main(["run", "--config", str(cfg), "--scenario", "absent"]) == 1


def test_fig7_lowerleft_spectra_peak_normalized(tmp_path):
    scn = resolve_scenario("fig7-lowerleft")
    manifest = run(scn, out_dir=tmp_path)
    assert len(manifest.outputs) == 3
    fname = "fig7-lowerleft_spectrum_sigma0.3_gamma1_F0.1.csv"
    rows = np.loadtxt(tmp_path / fname, delimiter=",", skiprows=1)
    at_t0 = rows[rows[:, 0] == 0.0]
    assert abs(at_t0[:, 2].max() - 1.0) < 1e-12
