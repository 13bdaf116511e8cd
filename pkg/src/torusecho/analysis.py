"""Decay-rate extraction and (epsilon, sigma) sweep orchestration.

The decay rate of an echo or purity series is the negative slope of a
least-squares line through the log of the series.  The fit window is a
fixed rule, not a per-curve choice: skip the first two steps (transient)
and stop at the last step whose value still exceeds five times the floor
estimate.  Series that decay too fast for that window fall back to a
floor-aware exponential fit, and series with no measurable decay are fit
over the whole tail, which yields a rate near zero.  Every reported rate
therefore comes with its window and is reproducible from the rule alone.

A sweep evaluates a grid of (epsilon, sigma) cells plus the marginal cells
(epsilon=0 and sigma=0 companions) needed to assess the additivity of the
two rates.  Cells are keyed by their full parameter content, so duplicate
cells and re-runs give identical numbers regardless of worker scheduling.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np
from scipy.optimize import curve_fit

from .echo import EchoConfig, EchoSeries, series_for

SWEEP_COLUMNS = (
    "model", "N", "a", "b", "k", "epsilon", "sigma", "sigma_over_hbar",
    "gamma", "gamma_sigma", "gamma_epsilon", "r_squared", "n_s", "seed",
)


class UnfittableSeriesError(RuntimeError):
    """No usable fit window: the series decays too fast or is too short."""

    def __init__(self, window, message):
        super().__init__(message)
        self.window = window


@dataclass(frozen=True)
class DecayFit:
    gamma: float
    window: tuple
    r_squared: float
    floor_estimate: float
    method: str

    def __post_init__(self):
        if not np.isfinite(self.gamma) or self.gamma < 0:
            raise ValueError(f"rate must be finite and >= 0, got {self.gamma}")
        if not self.window[0] < self.window[1]:
            raise ValueError(f"bad fit window {self.window}")


def _line_fit(xs, ys):
    """Least-squares line; returns (slope, intercept, r_squared, sse)."""
    slope, intercept = np.polyfit(xs, ys, 1)
    res = ys - (slope * xs + intercept)
    sse = float(res @ res)
    ss_tot = float(np.sum((ys - ys.mean()) ** 2))
    r2 = 1.0 if ss_tot <= 1e-300 else 1.0 - sse / ss_tot
    return float(slope), float(intercept), min(max(r2, 0.0), 1.0), sse


def _floor_fit(times, values, floor_est):
    """Fit ln(A e^{-g t} + c) in log space over [1, first point at the floor].

    Rescue path for rates too fast for the windowed line fit: by the time
    the transient has passed the series is already within a factor of a few
    of the floor, so the floor must be part of the model.
    """
    below = (times >= 1.0) & (values <= 1.2 * floor_est)
    t_sat = float(times[below][0]) if below.any() else float(times[-1])
    sel = (times >= 1.0) & (times <= t_sat) & (values > 0.0)
    window = (1, max(int(t_sat), 2))
    if sel.sum() < 4:
        raise UnfittableSeriesError(
            window, f"only {int(sel.sum())} usable points in t = [1, {int(t_sat)}]; "
            "decay is too fast for this series length")
    ts, logs = times[sel], np.log(values[sel])
    g0 = min(max((logs[0] - logs[-1]) / max(ts[-1] - ts[0], 1.0), 0.05), 50.0)
    c0 = max(floor_est, 1e-12)
    a0 = max(values[sel][0] - c0, 1e-12) * np.exp(g0 * ts[0])

    def model(t, amp, g, c):
        return np.log(amp * np.exp(-g * t) + c)

    try:
        popt, _ = curve_fit(model, ts, logs, p0=(a0, g0, c0), maxfev=20000,
                            bounds=([1e-15, 0.0, 0.0], [1e3, 60.0, 1.0]))
    except Exception as exc:
        raise UnfittableSeriesError(window, f"floor-aware fit failed: {exc}") from exc
    gamma = float(popt[1])
    if not np.isfinite(gamma):
        raise UnfittableSeriesError(window, "floor-aware fit returned a non-finite rate")
    res = logs - model(ts, *popt)
    ss_tot = float(np.sum((logs - logs.mean()) ** 2))
    r2 = 1.0 if ss_tot <= 1e-300 else 1.0 - float(res @ res) / ss_tot
    return DecayFit(gamma, window, min(max(r2, 0.0), 1.0), floor_est, "floor")


def fit_decay_curve(times, values, floor_hint=0.0):
    """Extract an exponential decay rate from a time series.

    floor_hint is a lower bound on the long-time saturation value (1/N for
    purity-like series); the working floor estimate is the larger of the
    hint and the final-quarter mean.
    """
    times = np.asarray(times, dtype=float)
    values = np.asarray(values, dtype=float)
    if len(times) < 6:
        raise ValueError(f"need at least 6 points to fit, got {len(times)}")
    tail = values[-max(1, len(values) // 4):]
    floor_est = max(float(floor_hint), float(tail.mean()))
    thresh = 5.0 * floor_est

    for t_lo, method in ((2.0, "window"), (1.0, "window-early")):
        above = (times >= t_lo) & (values > thresh)
        if not above.any():
            break
        t_hi = float(times[above].max())
        sel = (times >= t_lo) & (times <= t_hi) & (values > 0.0)
        if sel.sum() >= 4:
            slope, _, r2, _ = _line_fit(times[sel], np.log(values[sel]))
            return DecayFit(max(-slope, 0.0), (int(t_lo), int(t_hi)),
                            r2, floor_est, method)

    if values.max() <= thresh:
        # nothing ever clears the floor cutoff: no measurable decay, report
        # the slope of the whole tail (near zero for a genuinely flat series)
        sel = (times >= 2.0) & (values > 0.0)
        if sel.sum() >= 4:
            slope, _, r2, _ = _line_fit(times[sel], np.log(values[sel]))
            return DecayFit(max(-slope, 0.0), (2, int(times[sel].max())),
                            r2, floor_est, "flat")
        raise UnfittableSeriesError((2, int(times[-1])), "too few positive points")

    return _floor_fit(times, values, floor_est)


def fit_decay_rate(series: EchoSeries) -> DecayFit:
    """Decay rate of an ensemble-averaged series; floor hint is 1/N."""
    n = series.meta.get("N")
    return fit_decay_curve(series.times, series.values,
                           floor_hint=0.0 if n is None else 1.0 / n)


def sum_law_residual(gamma, gamma_sigma, gamma_epsilon):
    """gamma - (gamma_sigma + gamma_epsilon); zero when the rates add."""
    return gamma - (gamma_sigma + gamma_epsilon)


@dataclass(frozen=True)
class SweepRow:
    model: str
    N: int
    a: int
    b: int
    k: float
    epsilon: float
    sigma: float
    sigma_over_hbar: float
    gamma: float
    gamma_sigma: float
    gamma_epsilon: float
    r_squared: float
    n_s: int
    seed: int


@dataclass(frozen=True)
class CellOutcome:
    status: str
    gamma: float
    r_squared: float
    window: tuple
    floor_estimate: float
    method: str
    error: str = ""


@dataclass(frozen=True)
class SweepResult:
    rows: list
    outcomes: dict
    cells: dict

    @property
    def n_failed(self):
        return sum(1 for out in self.outcomes.values() if out.status != "ok")


def cell_key(config: EchoConfig) -> str:
    """Canonical content key of a sweep cell; equal configs share results."""
    return "|".join([
        config.model, f"N={config.N}", f"a={config.a}", f"b={config.b}",
        f"k={config.k!r}", f"kp={config.k_prime!r}", f"eps={config.epsilon!r}",
        f"t={config.t_max}", f"ns={config.n_s}", f"seed={config.seed}",
    ])


def _sweep_cell(config: EchoConfig) -> CellOutcome:
    series = series_for(config)
    try:
        fit = fit_decay_rate(series)
    except UnfittableSeriesError as exc:
        return CellOutcome("unfittable", float("nan"), float("nan"),
                           exc.window, float("nan"), "", str(exc))
    return CellOutcome("ok", fit.gamma, fit.r_squared, fit.window,
                       fit.floor_estimate, fit.method)


def build_grid(base: EchoConfig, epsilons, sigma_over_hbars):
    """Product grid of cells over coupling and perturbation values.

    sigma_over_hbar = sigma * 2 pi N sets k' = k + sigma; the base config
    supplies everything else (including the seed, shared by every cell so
    that all cells average over the same initial states).
    """
    configs = []
    for eps in epsilons:
        for soh in sigma_over_hbars:
            sigma = float(soh) / (2.0 * np.pi * base.N)
            configs.append(replace(base, epsilon=float(eps), k_prime=base.k + sigma))
    return configs


def run_sweep(grid, workers=1, reuse=None) -> SweepResult:
    """Evaluate every cell of the grid plus the marginal cells.

    Each interior cell (epsilon > 0 and sigma > 0) pulls in its epsilon=0
    companion (pure perturbation rate) and its sigma=0 companion (pure
    coupling rate); those appear both inside the interior rows, as
    gamma_sigma and gamma_epsilon, and as rows of their own.  Unfittable
    cells yield nan rates and are recorded in the outcomes map without
    aborting the sweep.  reuse maps cell keys to previously computed
    CellOutcome values (resume support); those cells are not recomputed.
    """
    cells: dict = {}
    order: list = []
    for cfg in grid:
        key = cell_key(cfg)
        order.append(key)
        if key not in cells:
            cells[key] = cfg
    extras: list = []
    for cfg in grid:
        if cfg.epsilon > 0.0 and cfg.sigma > 0.0:
            for marg in (replace(cfg, epsilon=0.0), replace(cfg, k_prime=cfg.k)):
                mkey = cell_key(marg)
                if mkey not in cells:
                    cells[mkey] = marg
                    extras.append(mkey)

    outcomes = dict(reuse or {})
    todo = [key for key in cells if key not in outcomes]
    if workers > 1 and len(todo) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for key, out in zip(todo, pool.map(_sweep_cell, [cells[k] for k in todo])):
                outcomes[key] = out
    else:
        for key in todo:
            outcomes[key] = _sweep_cell(cells[key])

    def row_for(cfg):
        out = outcomes[cell_key(cfg)]
        gs = 0.0 if cfg.sigma == 0.0 else outcomes[cell_key(replace(cfg, epsilon=0.0))].gamma
        ge = 0.0 if cfg.epsilon == 0.0 else outcomes[cell_key(replace(cfg, k_prime=cfg.k))].gamma
        return SweepRow(cfg.model, cfg.N, cfg.a, cfg.b, cfg.k, cfg.epsilon,
                        cfg.sigma, cfg.sigma_over_hbar, out.gamma, gs, ge,
                        out.r_squared, cfg.n_s, cfg.seed)

    rows = [row_for(cells[key]) for key in order] + [row_for(cells[key]) for key in extras]
    return SweepResult(rows, outcomes, cells)


@dataclass(frozen=True)
class PlateauReport:
    plateau: bool
    level: float
    split: int
    sse_ratio: float
    spread: float


def detect_plateau(xs, gammas) -> PlateauReport:
    """Two-segment test for saturation of a rate curve.

    Fits (line, constant) pairs against log(x) over every admissible split
    and compares the best against a single line.  A plateau requires the
    split to beat the line decisively (sse ratio < 0.35), a rising left
    segment, and a right segment at least 3 points long whose relative
    spread is below 0.3.  The reported level is the right-segment mean.
    """
    xs = np.asarray(xs, dtype=float)
    gs = np.asarray(gammas, dtype=float)
    if len(xs) < 6:
        raise ValueError(f"need at least 6 points, got {len(xs)}")
    if np.any(xs <= 0):
        raise ValueError("plateau detection needs positive abscissa values")
    idx = np.argsort(xs)
    lx, gs = np.log(xs[idx]), gs[idx]
    n = len(lx)
    _, _, _, sse_one = _line_fit(lx, gs)
    best = None
    for i in range(2, n - 2):
        slope, intercept, _, sse_left = _line_fit(lx[:i], gs[:i])
        level = float(gs[i:].mean())
        res = gs[i:] - level
        sse = sse_left + float(res @ res)
        if best is None or sse < best[0]:
            best = (sse, i, slope, level)
    sse_two, split, left_slope, level = best
    ratio = sse_two / max(sse_one, 1e-300)
    right = gs[split:]
    spread = float((right.max() - right.min()) / max(abs(level), 1e-300))
    plateau = (ratio < 0.35 and spread < 0.3 and left_slope > 0.0
               and level > float(gs[:split].mean()))
    return PlateauReport(bool(plateau), level, int(split), float(ratio), spread)
