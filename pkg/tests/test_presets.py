"""Shipped preset configs and the documented small-scale worked examples."""

import json
from pathlib import Path

import pytest

import torusecho as te
from torusecho import cli

CONFIG_DIR = Path(__file__).resolve().parents[1] / "configs"

PRESETS = {
    "figure1_desk.json": ("gdm", 4, 12),
    "figure2_desk.json": ("dc", 5, 8),
    "figure3_desk.json": ("ldm", 4, 8),
}


@pytest.mark.parametrize("name", sorted(PRESETS))
def test_preset_parses_and_builds_expected_grid(name):
    model, n_eps, n_soh = PRESETS[name]
    settings = dict(cli.DEFAULTS)
    settings.update(cli.load_config(CONFIG_DIR / name))
    assert settings["model"] == model
    assert settings["N"] == 200
    assert len(settings["epsilons"]) == n_eps
    assert len(settings["sigma_over_hbars"]) == n_soh
    assert settings["epsilons"][0] == 0.0  # perturbation-only reference row

    base = cli.echo_config_from({**settings, "epsilon": 0.0, "k_prime": None,
                                 "sigma_over_hbar": 0.0})
    grid = te.build_grid(base, settings["epsilons"], settings["sigma_over_hbars"])
    assert len(grid) == n_eps * n_soh
    assert all(cfg.model == model and cfg.N == 200 for cfg in grid)
    # every cell key distinct -> no silent dedup inside a preset
    assert len({te.cell_key(cfg) for cfg in grid}) == len(grid)


def test_preset_files_are_valid_json_objects():
    for name in PRESETS:
        data = json.loads((CONFIG_DIR / name).read_text())
        assert isinstance(data, dict)
        assert set(data) <= set(cli.DEFAULTS)


def test_minimal_echo_run_emits_one_row_per_step_per_kind(tmp_path):
    rc = cli.main(["echo", "--N", "64", "--model", "gdm", "--epsilon", "0.01",
                   "--sigma-over-hbar", "0.5", "--t-max", "30", "--n-s", "4",
                   "--seed", "1", "--kind", "be", "--kind", "purity",
                   "--out-dir", str(tmp_path)])
    assert rc == 0
    lines = (tmp_path / "echo.csv").read_text().splitlines()
    assert lines[0] == "t,value,stderr,kind"
    be_rows = [l for l in lines[1:] if l.endswith(",be")]
    purity_rows = [l for l in lines[1:] if l.endswith(",purity")]
    assert len(be_rows) == 31  # t = 0..30 inclusive
    assert len(purity_rows) == 31
    assert len(lines) == 1 + 62


def test_small_sweep_grid_fits_cleanly():
    base = te.EchoConfig(model="gdm", N=200, k=0.001, k_prime=0.001,
                         epsilon=0.0, t_max=40, n_s=4, seed=1)
    grid = te.build_grid(base, epsilons=[0.0, 0.005], sigma_over_hbars=[0.1, 1.0])
    res = te.run_sweep(grid)
    assert res.n_failed == 0
    # 4 input cells plus one purity marginal (the epsilon=0 marginals
    # coincide with input rows and are deduplicated)
    assert len(res.rows) == 5
    assert all(row.r_squared > 0.8 for row in res.rows)