import csv
import io
import json
import subprocess

import numpy as np
import pytest

from irs_netgeo import cli
from irs_netgeo.cli import EXIT_CODES, PRESETS, ExperimentConfig, main, parse_theta_db
from irs_netgeo.errors import (ConfigError, DomainError, GeometryInfeasible,
                               InsufficientTailMass, NonConvergence, RejectionBudgetExceeded,
                               SingularMatrix, WindowTooSmall)


def read_csv(path):
    with open(path) as fh:
        rows = list(csv.DictReader(fh))
    return {k: np.array([float(r[k]) for r in rows]) for k in rows[0]}


def test_theta_grid_parsing():
    assert parse_theta_db("-10:20:10") == [-10.0, 0.0, 10.0, 20.0]
    assert parse_theta_db("0:1:0.25") == [0.0, 0.25, 0.5, 0.75, 1.0]
    assert parse_theta_db("1, 2.5,7") == [1.0, 2.5, 7.0]
    with pytest.raises(ConfigError):
        parse_theta_db("a:b:c")
    with pytest.raises(ConfigError):
        parse_theta_db("0:10:0")


def test_empty_theta_grid_is_config_error(capsys):
    assert main(["sir-ccdf", "--theta-db="]) == EXIT_CODES["config"] == 2
    err = json.loads(capsys.readouterr().err)
    assert err["error"] == "config" and "theta" in err["message"]


def test_unknown_preset_and_missing_preset(capsys):
    assert main(["reproduce", "fig99"]) == 2
    assert main(["reproduce"]) == 2


def test_config_validation():
    with pytest.raises(ConfigError):
        ExperimentConfig(routes=["magic"])
    with pytest.raises(ConfigError):
        ExperimentConfig(mu=0.1)
    with pytest.raises(ConfigError):
        ExperimentConfig(n_elements=[2.5])


@pytest.mark.parametrize("exc,code", [
    (NonConvergence("x"), 3), (InsufficientTailMass("x", achieved_depth=0.1), 4),
    (GeometryInfeasible("x"), 5), (DomainError("x"), 6), (WindowTooSmall("x"), 7),
    (RejectionBudgetExceeded("x"), 8), (SingularMatrix("x"), 9)])
def test_error_categories_map_to_exit_codes(monkeypatch, capsys, exc, code):
    def boom(cfg):
        raise exc
    monkeypatch.setattr(cli, "run", boom)
    assert main(["sir-ccdf"]) == code
    assert json.loads(capsys.readouterr().err)["error"] == exc.category


def test_sir_ccdf_output_and_sidecar(tmp_path):
    out = tmp_path / "ccdf.csv"
    argv = ["sir-ccdf", "--theta-db=-10:20:5", "--n-elements", "0,10", "--samples", "4000",
            "--mode", "distance", "--routes", "mc,exp,erlang-m", "--seed", "3",
            "--out", str(out)]
    assert main(argv) == 0
    cols = read_csv(out)
    assert list(cols["theta_db"]) == [-10.0, -5.0, 0.0, 5.0, 10.0, 15.0, 20.0]
    for name in ("ccdf_mc_N0", "ccdf_exp_N0", "ccdf_noirs_N0", "ccdf_mc_N10",
                 "ccdf_exp_N10", "ccdf_erl_m_N10"):
        assert np.all(np.diff(cols[name]) <= 1e-12)
    assert np.max(np.abs(cols["ccdf_erl_m_N10"] - cols["ccdf_mc_N10"])) < 0.08
    meta = json.loads((tmp_path / "ccdf.json").read_text())
    prov = meta["provenance"]
    assert prov["seed"] == 3 and len(prov["config_hash"]) == 16
    assert {"git_describe", "timestamp", "version"} <= set(prov)
    assert meta["config"]["n_samples"] == 4000
    first = out.read_bytes()
    assert main(argv) == 0
    assert out.read_bytes() == first


def test_config_file_with_flag_override(tmp_path):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"n-elements": [10], "delta": [1e-3, 0.1], "samples": 2000,
                               "model": "fixed", "seed": 5}))
    out = tmp_path / "g.csv"
    assert main(["g-cdf", "--config", str(cfg), "--samples", "3000", "--out", str(out)]) == 0
    meta = json.loads((tmp_path / "g.json").read_text())
    assert meta["config"]["n_samples"] == 3000
    cols = read_csv(out)
    assert "cdf_mc_N10_d0.001" in cols and "cdf_erlang6_N10_d0.1" in cols
    assert "cdf_gamma_refined_N10_d0.001" in cols
    assert np.max(np.abs(cols["cdf_mc_N10_d0.1"] - cols["cdf_erlang6_N10_d0.1"])) < 0.1


def test_bad_config_file(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("[1, 2]")
    assert main(["g-cdf", "--config", str(bad)]) == 2
    bad.write_text(json.dumps({"warp": 9}))
    assert main(["g-cdf", "--config", str(bad)]) == 2


def test_delta_stats_to_stdout(capsys):
    assert main(["delta-stats", "--samples", "20000", "--seed", "2"]) == 0
    cols = {k: np.array([float(r[k]) for r in rows])
            for rows in [list(csv.DictReader(io.StringIO(capsys.readouterr().out)))]
            for k in rows[0]}
    assert np.max(np.abs(cols["cdf_mc"] - cols["cdf_analytic"])) < 0.02
    assert np.all(cols["pdf_analytic"] >= 0)


def test_throughput_scenario_reports_gains(tmp_path):
    out = tmp_path / "t.csv"
    assert main(["throughput", "--n-elements", "0,10", "--routes", "erlang-m",
                 "--theta-db=-10:25:1", "--out", str(out)]) == 0
    meta = json.loads((tmp_path / "t.json").read_text())
    gains = meta["results"]["optimum"]["gain_vs_no_irs"]
    assert gains["tput_erl_m_N10"] > 0


def test_reproduce_fig10(tmp_path):
    out = tmp_path / "fig10.csv"
    assert main(["reproduce", "fig10", "--out", str(out)]) == 0
    cols = read_csv(out)
    assert len(cols["delta"]) == 33
    # more elements or a larger triangle parameter never hurt
    assert np.all(cols["tput_erl_N100"] >= cols["tput_erl_N10"] - 1e-12)
    assert np.all(np.diff(cols["tput_erl_N100"]) >= -1e-12)


def test_every_preset_names_known_scenarios():
    known = set(cli._RUNNERS) | {"vs-n", "vs-delta"}
    assert set(PRESETS) >= {f"fig{i}" for i in range(2, 14)}
    for parts in PRESETS.values():
        for part in parts:
            assert part["scenario"] in known


@pytest.mark.slow
@pytest.mark.xfail(strict=True, reason="Erlang-m departs from simulation by about 0.05 for "
                                       "N = 100 at l0 = 20")
def test_reproduce_fig8_mc_matches_erlang_m(tmp_path):
    out = tmp_path / "fig8.csv"
    assert main(["reproduce", "fig8", "--out", str(out)]) == 0
    cols = read_csv(out)
    for n in (10, 100):
        gap = np.abs(cols[f"ccdf_mc_N{n}_l0_20"] - cols[f"ccdf_erl_m_N{n}_l0_20"])
        assert np.max(gap) <= 0.02


def test_console_script_installed():
    done = subprocess.run(["irs-netgeo", "--help"], capture_output=True, text=True)
    assert done.returncode == 0 and "reproduce" in done.stdout
