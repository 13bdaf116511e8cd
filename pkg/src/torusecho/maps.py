"""Two-kick quantized maps on the torus and their classical counterparts.

The map of interest is the perturbed cat map: two quadratic shears with a
cosine perturbation of strength k.  One step applies a position kick
(diagonal in q), a DFT to momentum, a momentum kick (diagonal in p) and a
DFT back, so applying the map costs O(N log N).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .hilbert import DensityMatrix, PureState, TorusSpace


@dataclass(frozen=True)
class ClassicalMapParams:
    """Shear integers (a, b) and kick strength k of the perturbed cat map."""

    a: int
    b: int
    k: float

    def __post_init__(self):
        if self.a * self.b <= 0:
            raise ValueError(f"need a*b > 0 for a hyperbolic map, got a={self.a}, b={self.b}")
        if self.k < 0:
            raise ValueError(f"kick strength must be >= 0, got {self.k}")


@dataclass(frozen=True)
class KickedMap:
    """One-step unitary, stored as its two diagonal kick phases."""

    space: TorusSpace
    params: ClassicalMapParams
    v_phase: np.ndarray  # diagonal in position
    t_phase: np.ndarray  # diagonal in momentum

    def __post_init__(self):
        N = self.space.N
        for name in ("v_phase", "t_phase"):
            ph = np.asarray(getattr(self, name), dtype=complex)
            if ph.shape != (N,):
                raise ValueError(f"{name} must have shape ({N},), got {ph.shape}")
            if np.max(np.abs(np.abs(ph) - 1.0)) > 1e-12:
                raise ValueError(f"{name} entries must have unit modulus")
            ph = np.ascontiguousarray(ph)
            ph.setflags(write=False)
            object.__setattr__(self, name, ph)


def perturbed_cat_quantum(space: TorusSpace, a: int, b: int, k: float) -> KickedMap:
    """Quantized perturbed cat map.

    Kick phases come from the generating potentials of the classical shears
    p -> p + a q - 2 pi k sin(2 pi q) and q -> q + b p - 2 pi k sin(2 pi p):
    the position kick is exp(2 pi i (a Q^2/(2N) + N k cos(2 pi Q/N))) and the
    momentum kick its negative-sign analogue in P.
    """
    params = ClassicalMapParams(a, b, k)
    N = space.N
    idx = np.arange(N, dtype=float)
    quad = idx**2 / (2.0 * N)
    cosine = N * k * np.cos(2.0 * np.pi * idx / N)
    v_phase = np.exp(2j * np.pi * (a * quad + cosine))
    t_phase = np.exp(-2j * np.pi * (b * quad + cosine))
    return KickedMap(space, params, v_phase, t_phase)


def _apply_amplitudes(kmap: KickedMap, amps: np.ndarray) -> np.ndarray:
    # unitary-DFT normalizations cancel between the forward and inverse FFT
    return np.fft.ifft(kmap.t_phase * np.fft.fft(kmap.v_phase * amps))


def _apply_amplitudes_inverse(kmap: KickedMap, amps: np.ndarray) -> np.ndarray:
    return kmap.v_phase.conj() * np.fft.ifft(kmap.t_phase.conj() * np.fft.fft(amps))


def _conjugate_dense(kmap: KickedMap, elements: np.ndarray, inverse: bool) -> np.ndarray:
    v, t = kmap.v_phase, kmap.t_phase
    if inverse:
        half = lambda m: v.conj()[:, None] * np.fft.ifft(t.conj()[:, None] * np.fft.fft(m, axis=0), axis=0)
    else:
        half = lambda m: np.fft.ifft(t[:, None] * np.fft.fft(v[:, None] * m, axis=0), axis=0)
    y = half(elements)           # U rho, applied column-wise
    return half(y.conj().T).conj().T   # then (U (U rho)^dag)^dag = U rho U^dag


def apply_map(kmap: KickedMap, obj):
    """One step of the map: state vectors get U psi, densities get U rho U^dag."""
    if isinstance(obj, PureState):
        return PureState(obj.space, _apply_amplitudes(kmap, obj.amplitudes))
    if isinstance(obj, DensityMatrix):
        return DensityMatrix(obj.space, _conjugate_dense(kmap, obj.elements, inverse=False))
    raise TypeError(f"apply_map expects PureState or DensityMatrix, got {type(obj).__name__}")


def apply_map_inverse(kmap: KickedMap, obj):
    """One step of the inverse map."""
    if isinstance(obj, PureState):
        return PureState(obj.space, _apply_amplitudes_inverse(kmap, obj.amplitudes))
    if isinstance(obj, DensityMatrix):
        return DensityMatrix(obj.space, _conjugate_dense(kmap, obj.elements, inverse=True))
    raise TypeError(f"apply_map_inverse expects PureState or DensityMatrix, got {type(obj).__name__}")


def classical_step(params: ClassicalMapParams, q, p):
    """One step of the classical perturbed cat map on the unit torus.

    Accepts scalars or equal-shape arrays.
    """
    two_pi = 2.0 * np.pi
    p1 = (p + params.a * q - two_pi * params.k * np.sin(two_pi * q)) % 1.0
    q1 = (q + params.b * p1 - two_pi * params.k * np.sin(two_pi * p1)) % 1.0
    return q1, p1


def classical_tangent(params: ClassicalMapParams, q, p) -> np.ndarray:
    """Jacobian of one classical step at (q, p), in (q, p) ordering.

    Unit determinant by construction (composition of two shears).
    """
    two_pi = 2.0 * np.pi
    p1 = (p + params.a * q - two_pi * params.k * np.sin(two_pi * q)) % 1.0
    alpha = params.a - two_pi**2 * params.k * np.cos(two_pi * q)
    beta = params.b - two_pi**2 * params.k * np.cos(two_pi * p1)  # evaluated at the sheared momentum
    return np.array([[1.0 + beta * alpha, beta], [alpha, 1.0]])


def lyapunov_formula(a: int, b: int) -> float:
    """Lyapunov exponent of the unperturbed cat map with shears (a, b)."""
    ab = a * b
    if ab <= 0:
        raise ValueError(f"need a*b > 0 for a hyperbolic map, got a={a}, b={b}")
    return float(np.log((2.0 + ab + np.sqrt(ab * (4.0 + ab))) / 2.0))


@dataclass(frozen=True)
class LyapunovEstimate:
    value: float
    stderr: float
    n_points: int
    n_iter: int


def classical_lyapunov_numeric(
    params: ClassicalMapParams,
    n_iter: int = 10_000,
    seed: int = 0,
    n_points: int = 10,
    burn_in: int = 100,
    renorm_every: int = 10,
) -> LyapunovEstimate:
    """Largest Lyapunov exponent from tangent-vector growth along random orbits.

    Tangent vectors are renormalized periodically to avoid overflow; the
    estimate averages n_points independent initial conditions and reports
    the standard error across them.
    """
    if n_iter < 10_000:
        raise ValueError(f"need n_iter >= 10000 for a converged estimate, got {n_iter}")
    if n_points < 2:
        raise ValueError(f"need at least 2 initial points, got {n_points}")
    rng = np.random.default_rng(seed)
    q = rng.random(n_points)
    p = rng.random(n_points)
    for _ in range(burn_in):
        q, p = classical_step(params, q, p)

    theta = rng.random(n_points) * 2.0 * np.pi
    vq = np.cos(theta)
    vp = np.sin(theta)
    log_growth = np.zeros(n_points)
    two_pi = 2.0 * np.pi
    for step in range(1, n_iter + 1):
        p1 = (p + params.a * q - two_pi * params.k * np.sin(two_pi * q)) % 1.0
        alpha = params.a - two_pi**2 * params.k * np.cos(two_pi * q)
        beta = params.b - two_pi**2 * params.k * np.cos(two_pi * p1)
        vp_new = alpha * vq + vp
        vq_new = vq + beta * vp_new
        vq, vp = vq_new, vp_new
        q1 = (q + params.b * p1 - two_pi * params.k * np.sin(two_pi * p1)) % 1.0
        q, p = q1, p1
        if step % renorm_every == 0:
            norms = np.hypot(vq, vp)
            log_growth += np.log(norms)
            vq /= norms
            vp /= norms
    norms = np.hypot(vq, vp)
    log_growth += np.log(norms)

    per_point = log_growth / n_iter
    value = float(per_point.mean())
    stderr = float(per_point.std(ddof=1) / np.sqrt(n_points))
    return LyapunovEstimate(value, stderr, n_points, n_iter)
