"""Echo and purity time series for decohered map evolution.

One evolution step is the map conjugation followed by the decoherence
channel.  The Boltzmann echo runs two such trajectories from the same
initial coherent projector, one with kick strength k and one with k', and
records their overlap; with k' = k it reduces to the purity of a single
trajectory, and with the coupling switched off it reduces to the Loschmidt
echo of pure states.  All series are arithmetic means over an ensemble of
coherent states drawn from a seeded generator.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from .channels import MODELS, DecoherenceKernel, apply_channel_fast, make_kernel
from .hilbert import (
    RNG_KIND,
    DensityMatrix,
    PureState,
    TorusSpace,
    coherent_state,
    overlap,
    projector,
    purity,
    random_coherent_centers,
)
from .maps import KickedMap, apply_map, perturbed_cat_quantum


@dataclass(frozen=True)
class EchoConfig:
    """Full description of one echo computation cell."""

    model: str = "gdm"
    N: int = 800
    a: int = 2
    b: int = 2
    k: float = 0.001
    k_prime: float = 0.001
    epsilon: float = 0.0
    t_max: int = 40
    n_s: int = 10
    seed: int = 0
    tail_tol: float = 1e-12
    x_images: int = 100

    def __post_init__(self):
        if self.model not in MODELS:
            raise ValueError(f"unknown model {self.model!r}; choose one of {', '.join(MODELS)}")
        if self.N < 2:
            raise ValueError(f"need N >= 2, got {self.N}")
        if self.t_max < 1:
            raise ValueError(f"need t_max >= 1, got {self.t_max}")
        if self.n_s < 1:
            raise ValueError(f"need n_s >= 1, got {self.n_s}")
        if self.epsilon < 0:
            raise ValueError(f"coupling must be >= 0, got {self.epsilon}")

    @property
    def space(self) -> TorusSpace:
        return TorusSpace(self.N)

    @property
    def sigma(self) -> float:
        """Perturbation-difference strength |k' - k|."""
        return abs(self.k_prime - self.k)

    @property
    def sigma_over_hbar(self) -> float:
        return self.sigma * 2.0 * np.pi * self.N


@dataclass(frozen=True)
class EchoSeries:
    """Ensemble-averaged time series with per-step standard errors."""

    times: np.ndarray
    values: np.ndarray
    stderr: np.ndarray
    kind: str
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        for name in ("times", "values", "stderr"):
            arr = np.ascontiguousarray(getattr(self, name))
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        if not (len(self.times) == len(self.values) == len(self.stderr)):
            raise ValueError("times, values and stderr must have equal length")


def evolve_step(kmap: KickedMap, kernel: DecoherenceKernel, rho: DensityMatrix) -> DensityMatrix:
    """rho -> D(U rho U^dag): one map step followed by the channel."""
    return apply_channel_fast(kernel, apply_map(kmap, rho))


def config_kernel(config: EchoConfig) -> DecoherenceKernel:
    return make_kernel(
        config.space, config.model, config.epsilon,
        tail_tol=config.tail_tol, x_images=config.x_images,
    )


def _member_boltzmann(config: EchoConfig, kernel: DecoherenceKernel, center) -> np.ndarray:
    space = config.space
    fwd = perturbed_cat_quantum(space, config.a, config.b, config.k)
    alt = perturbed_cat_quantum(space, config.a, config.b, config.k_prime)
    rho = projector(coherent_state(space, center[0], center[1]))
    rho_alt = rho
    vals = np.empty(config.t_max + 1)
    vals[0] = overlap(rho_alt, rho)
    for t in range(1, config.t_max + 1):
        rho = evolve_step(fwd, kernel, rho)
        rho_alt = evolve_step(alt, kernel, rho_alt)
        vals[t] = overlap(rho_alt, rho)
    return vals


def _member_purity(config: EchoConfig, kernel: DecoherenceKernel, center) -> np.ndarray:
    space = config.space
    fwd = perturbed_cat_quantum(space, config.a, config.b, config.k)
    rho = projector(coherent_state(space, center[0], center[1]))
    vals = np.empty(config.t_max + 1)
    vals[0] = purity(rho)
    for t in range(1, config.t_max + 1):
        rho = evolve_step(fwd, kernel, rho)
        vals[t] = purity(rho)
    return vals


def _member_loschmidt(config: EchoConfig, _kernel, center) -> np.ndarray:
    space = config.space
    fwd = perturbed_cat_quantum(space, config.a, config.b, config.k)
    alt = perturbed_cat_quantum(space, config.a, config.b, config.k_prime)
    psi = coherent_state(space, center[0], center[1])
    psi_alt = psi
    vals = np.empty(config.t_max + 1)
    vals[0] = abs(np.vdot(psi_alt.amplitudes, psi.amplitudes)) ** 2
    for t in range(1, config.t_max + 1):
        psi = apply_map(fwd, psi)
        psi_alt = apply_map(alt, psi_alt)
        vals[t] = abs(np.vdot(psi_alt.amplitudes, psi.amplitudes)) ** 2
    return vals


_MEMBER_FUNCS = {
    "be": _member_boltzmann,
    "purity": _member_purity,
    "le": _member_loschmidt,
}


def _run_members(kind: str, config: EchoConfig, workers: int) -> EchoSeries:
    centers = random_coherent_centers(config.n_s, config.seed)
    kernel = None if kind == "le" else config_kernel(config)
    func = _MEMBER_FUNCS[kind]
    if workers > 1 and config.n_s > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(func, *zip(*[(config, kernel, c) for c in centers])))
    else:
        rows = [func(config, kernel, c) for c in centers]
    # members stacked in index order: the reduction is identical however they ran
    stack = np.vstack(rows)
    values = stack.mean(axis=0)
    if config.n_s > 1:
        stderr = stack.std(axis=0, ddof=1) / np.sqrt(config.n_s)
    else:
        stderr = np.zeros_like(values)
    meta = {
        "model": config.model, "N": config.N, "a": config.a, "b": config.b,
        "k": config.k, "k_prime": config.k_prime, "epsilon": config.epsilon,
        "sigma": config.sigma, "sigma_over_hbar": config.sigma_over_hbar,
        "n_s": config.n_s, "seed": config.seed, "generator": RNG_KIND,
    }
    return EchoSeries(np.arange(config.t_max + 1), values, stderr, kind, meta)


def boltzmann_echo_series(config: EchoConfig, workers: int = 1) -> EchoSeries:
    """Overlap tr(rho'_t rho_t) of the k and k' decohered trajectories."""
    return _run_members("be", config, workers)


def purity_series(config: EchoConfig, workers: int = 1) -> EchoSeries:
    """tr(rho_t^2) of the single decohered trajectory with kick strength k."""
    return _run_members("purity", config, workers)


def loschmidt_echo_series(config: EchoConfig, workers: int = 1) -> EchoSeries:
    """|<psi'_t|psi_t>|^2 for the closed-system (coupling 0) pair of maps.

    Pure-state fast path; requires epsilon = 0.
    """
    if config.epsilon != 0.0:
        raise ValueError("the pure-state echo is only defined for coupling 0; use the Boltzmann echo")
    return _run_members("le", config, workers)


def series_for(config: EchoConfig, workers: int = 1) -> EchoSeries:
    """Cheapest faithful series for a cell: pure-state echo when the coupling
    is zero, purity when the perturbations coincide, Boltzmann echo otherwise."""
    if config.epsilon == 0.0:
        return loschmidt_echo_series(config, workers)
    if config.sigma == 0.0:
        return purity_series(config, workers)
    return boltzmann_echo_series(config, workers)


def marginal_configs(config: EchoConfig) -> tuple[EchoConfig, EchoConfig]:
    """The (coupling-only, perturbation-only) companions of a cell."""
    return replace(config, k_prime=config.k), replace(config, epsilon=0.0)
