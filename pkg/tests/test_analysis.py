"""Tests for decay-rate fitting, sweeps, and plateau detection.

Fit oracles are synthetic series with known rates (clean exponentials,
floored exponentials, constants, multiplicative noise), so every fitted
number has an independent ground truth.
"""

import dataclasses
from dataclasses import replace

import numpy as np
import pytest

import torusecho as te


def synthetic_series(gamma, floor=0.0, t_max=40, noise=0.0, seed=0):
    t = np.arange(t_max + 1)
    clean = (1.0 - floor) * np.exp(-gamma * t) + floor
    if noise:
        rng = np.random.default_rng(seed)
        clean = (1.0 - floor) * np.exp(-gamma * t) * np.exp(noise * rng.normal(size=t.size)) + floor
    return t, clean


def test_fit_clean_exponential():
    t, v = synthetic_series(0.5)
    fit = te.fit_decay_curve(t, v)
    assert fit.method == "window"
    assert fit.gamma == pytest.approx(0.5, abs=1e-6)
    assert fit.r_squared > 0.9999
    assert fit.window[0] < fit.window[1]


def test_fit_floored_exponential_with_hint():
    # the window's last points graze the floor, biasing the slope slightly low
    t, v = synthetic_series(0.3, floor=1.0 / 800)
    fit = te.fit_decay_curve(t, v, floor_hint=1.0 / 800)
    assert fit.gamma == pytest.approx(0.3, rel=0.04)
    assert fit.gamma < 0.3
    assert fit.r_squared > 0.99


def test_fit_constant_series():
    t = np.arange(41)
    fit = te.fit_decay_curve(t, np.full(41, 0.25))
    assert fit.method == "flat"
    assert fit.gamma == pytest.approx(0.0, abs=1e-10)


def test_fit_fast_decay_uses_floor_model():
    # the series is at the floor by t=4, too fast for the log-linear window
    t, v = synthetic_series(2.0, floor=1.0 / 200)
    fit = te.fit_decay_curve(t, v, floor_hint=1.0 / 200)
    assert fit.method == "floor"
    assert fit.gamma == pytest.approx(2.0, rel=0.02)


def test_fit_rejects_immediate_saturation():
    t, v = synthetic_series(5.0, floor=1.0 / 200)
    with pytest.raises(te.UnfittableSeriesError) as err:
        te.fit_decay_curve(t, v, floor_hint=1.0 / 200)
    assert err.value.window[0] >= 1


def test_fit_noise_robustness():
    # 10 percent multiplicative noise moves the fitted rate by < 10 percent,
    # provided the series is long enough to decay through its range
    for gamma in (0.05, 0.3, 1.0, 2.0):
        t_max = int(max(40, 10.0 / gamma))
        t, v = synthetic_series(gamma, floor=1.0 / 800, noise=0.1, seed=11, t_max=t_max)
        fit = te.fit_decay_curve(t, v, floor_hint=1.0 / 800)
        assert fit.gamma == pytest.approx(gamma, rel=0.1)


def test_fit_decay_rate_uses_dimension_floor():
    cfg = te.EchoConfig(model="dc", N=64, k=0.001, k_prime=0.001,
                        epsilon=0.2, t_max=30, n_s=2, seed=1)
    fit = te.fit_decay_rate(te.purity_series(cfg))
    # exact asymptotic rate is -2 ln(1 - eps); the windowed fit sits between
    # the small-eps law 2 eps and the exact value
    assert 0.9 * 2 * 0.2 < fit.gamma < 1.05 * (-2 * np.log(0.8))


def test_decay_fit_validation():
    with pytest.raises(ValueError):
        te.DecayFit(gamma=-0.1, window=(2, 10), r_squared=0.9,
                    floor_estimate=0.0, method="window")
    with pytest.raises(ValueError):
        te.DecayFit(gamma=0.5, window=(10, 2), r_squared=0.9,
                    floor_estimate=0.0, method="window")


def test_sum_law_residual_is_raw_difference():
    assert te.sum_law_residual(1.0, 0.4, 0.5) == pytest.approx(0.1, abs=1e-15)
    assert te.sum_law_residual(0.9, 0.4, 0.5) == pytest.approx(0.0, abs=1e-15)


def test_dc_rate_monotone_in_coupling():
    gammas = []
    for eps in (0.02, 0.05, 0.1, 0.2, 0.3):
        cfg = te.EchoConfig(model="dc", N=64, k=0.001, k_prime=0.001,
                            epsilon=eps, t_max=30, n_s=2, seed=1)
        gammas.append(te.fit_decay_rate(te.purity_series(cfg)).gamma)
    assert np.all(np.diff(gammas) > 0)


def test_sweep_columns_match_row_fields():
    assert tuple(f.name for f in dataclasses.fields(te.SweepRow)) == te.SWEEP_COLUMNS


def test_cell_key_distinguishes_configs():
    cfg = te.EchoConfig(model="gdm", N=64, k=0.001, k_prime=0.002,
                        epsilon=0.05, t_max=10, n_s=2, seed=3)
    assert te.cell_key(cfg) == te.cell_key(replace(cfg))
    for change in (dict(model="dc"), dict(N=32), dict(epsilon=0.06),
                   dict(k_prime=0.003), dict(seed=4), dict(n_s=3), dict(t_max=11)):
        assert te.cell_key(replace(cfg, **change)) != te.cell_key(cfg)


def test_build_grid_product_and_kprime():
    base = te.EchoConfig(model="gdm", N=400, k=0.001, k_prime=0.001,
                         epsilon=0.0, t_max=10, n_s=2, seed=0)
    grid = te.build_grid(base, epsilons=[0.003, 0.01], sigma_over_hbars=[0.5, 1.0])
    assert len(grid) == 4
    assert [c.epsilon for c in grid] == [0.003, 0.003, 0.01, 0.01]
    for cfg, soh in zip(grid, [0.5, 1.0, 0.5, 1.0]):
        assert cfg.k_prime == pytest.approx(0.001 + soh / (2 * np.pi * 400), rel=1e-14)
        assert cfg.sigma_over_hbar == pytest.approx(soh, rel=1e-12)


def sweep_grid():
    base = te.EchoConfig(model="gdm", N=64, k=0.001, k_prime=0.001,
                         epsilon=0.0, t_max=25, n_s=2, seed=3)
    return te.build_grid(base, epsilons=[0.02, 0.05], sigma_over_hbars=[0.4, 1.0])


def test_run_sweep_rows_and_marginals():
    grid = sweep_grid()
    res = te.run_sweep(grid)
    # 4 interior rows in input order, then 4 marginal rows (2 eps=0, 2 sigma=0)
    assert len(res.rows) == 8
    assert res.n_failed == 0
    interior = res.rows[:4]
    marginal = res.rows[4:]
    assert all(r.epsilon > 0 and r.sigma > 0 for r in interior)
    assert all(r.epsilon == 0 or r.sigma == 0 for r in marginal)
    by_key = {(r.epsilon, round(r.sigma_over_hbar, 12)): r for r in res.rows}
    for row in interior:
        le_row = by_key[(0.0, round(row.sigma_over_hbar, 12))]
        pu_row = by_key[(row.epsilon, 0.0)]
        assert row.gamma_sigma == le_row.gamma
        assert row.gamma_epsilon == pu_row.gamma
        assert le_row.gamma_sigma == le_row.gamma and le_row.gamma_epsilon == 0.0
        assert pu_row.gamma_epsilon == pu_row.gamma and pu_row.gamma_sigma == 0.0
        assert row.r_squared > 0.8


def test_run_sweep_deterministic_across_workers():
    grid = sweep_grid()
    r1 = te.run_sweep(grid, workers=1)
    r2 = te.run_sweep(grid, workers=4)
    assert r1.rows == r2.rows


def test_run_sweep_deduplicates_cells():
    grid = sweep_grid()
    res = te.run_sweep(grid + [replace(grid[0])])
    assert len(res.rows) == 9
    assert res.rows[4] == res.rows[0]  # duplicate input row repeats exactly
    assert len(res.cells) == 8


def test_run_sweep_empty_grid():
    res = te.run_sweep([])
    assert res.rows == [] and res.outcomes == {} and res.n_failed == 0


def test_run_sweep_reuses_prior_outcomes():
    grid = sweep_grid()
    key = te.cell_key(grid[0])
    sentinel = te.CellOutcome("ok", 9.99, 1.0, (2, 5), 0.0, "window")
    res = te.run_sweep(grid, reuse={key: sentinel})
    assert res.rows[0].gamma == 9.99
    assert res.outcomes[key] is sentinel


def test_run_sweep_survives_unfittable_cell():
    # saturates within two steps: honest failure, recorded but not fatal
    cfg = te.EchoConfig(model="ldm", N=64, k=0.001, k_prime=0.001,
                        epsilon=0.5, t_max=6, n_s=1, seed=0)
    res = te.run_sweep([cfg])
    assert res.n_failed == 1
    assert np.isnan(res.rows[0].gamma)
    out = res.outcomes[te.cell_key(cfg)]
    assert out.status == "unfittable"
    assert out.error != ""


def test_detect_plateau_on_saturating_curve():
    # hockey stick with half the points on the saturated branch
    xs = np.geomspace(0.002, 0.2, 10)
    gammas = np.minimum(60.0 * xs, 1.76) + 0.01 * np.sin(np.arange(10.0))
    report = te.detect_plateau(xs, gammas)
    assert report.plateau
    assert report.level == pytest.approx(1.76, rel=0.05)
    assert report.sse_ratio < 0.35
    assert report.spread < 0.3


def test_detect_plateau_rejects_steady_growth():
    xs = np.geomspace(0.001, 0.1, 10)
    gammas = 0.5 * np.log(xs / xs[0]) + 0.02 * np.cos(np.arange(10.0))
    report = te.detect_plateau(xs, gammas)
    assert not report.plateau


def test_detect_plateau_rejects_power_law_growth():
    xs = np.geomspace(0.01, 1.0, 8)
    report = te.detect_plateau(xs, 2.0 * xs**0.8)
    assert not report.plateau


def test_detect_plateau_needs_six_points():
    with pytest.raises(ValueError):
        te.detect_plateau(np.geomspace(0.01, 0.1, 5), np.ones(5))
    with pytest.raises(ValueError):
        te.detect_plateau(np.array([0.0, 0.1, 0.2, 0.3, 0.4, 0.5]), np.ones(6))


def test_detect_plateau_input_order_invariant():
    xs = np.geomspace(0.002, 0.2, 8)
    gammas = np.minimum(60.0 * xs, 1.5)
    perm = np.random.default_rng(0).permutation(8)
    assert te.detect_plateau(xs, gammas) == te.detect_plateau(xs[perm], gammas[perm])
