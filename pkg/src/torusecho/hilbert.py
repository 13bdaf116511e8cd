"""Finite Hilbert space on the unit torus.

Position space is the N-point grid {j/N}, momentum space its discrete
Fourier dual.  States, density matrices, phase-space translations and the
chord (translation-coefficient) transform all live here.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_NORM_TOL = 1e-10
_HERM_TOL = 1e-10
_TRACE_TOL = 1e-10

# identity string recorded in series metadata so runs can be reproduced
RNG_KIND = "numpy.random.default_rng(PCG64)"


def _frozen(arr: np.ndarray) -> np.ndarray:
    out = np.ascontiguousarray(arr)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class TorusSpace:
    """N-dimensional Hilbert space of the unit torus; site j sits at q = j/N."""

    N: int

    def __post_init__(self):
        if not isinstance(self.N, (int, np.integer)) or self.N < 2:
            raise ValueError(f"Hilbert dimension must be an integer >= 2, got {self.N!r}")

    @property
    def hbar(self) -> float:
        """Effective Planck constant 1/(2 pi N)."""
        return 1.0 / (2.0 * np.pi * self.N)


@dataclass(frozen=True)
class PureState:
    """Normalized state vector in the position basis of a TorusSpace."""

    space: TorusSpace
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex)
        if amps.shape != (self.space.N,):
            raise ValueError(f"amplitude vector must have shape ({self.space.N},), got {amps.shape}")
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > _NORM_TOL:
            raise ValueError(f"state must be normalized: |norm - 1| = {abs(norm - 1.0):.3e}")
        object.__setattr__(self, "amplitudes", _frozen(amps))


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, unit-trace density operator in the position basis."""

    space: TorusSpace
    elements: np.ndarray

    def __post_init__(self):
        e = np.asarray(self.elements, dtype=complex)
        N = self.space.N
        if e.shape != (N, N):
            raise ValueError(f"density matrix must have shape ({N}, {N}), got {e.shape}")
        herm = np.max(np.abs(e - e.conj().T))
        if herm > _HERM_TOL:
            raise ValueError(f"density matrix not Hermitian: max |rho - rho^dag| = {herm:.3e}")
        tr = e.trace()
        if abs(tr - 1.0) > _TRACE_TOL:
            raise ValueError(f"density matrix must have unit trace, got {tr:.12g}")
        pur = np.einsum("ij,ji->", e, e).real
        if pur < 1.0 / N - 1e-10 or pur > 1.0 + 1e-10:
            raise ValueError(f"purity {pur:.12g} outside [1/N, 1]")
        object.__setattr__(self, "elements", _frozen(e))


@dataclass(frozen=True)
class ChordCoefficients:
    """Expansion of a density matrix over the N^2 phase-space translations.

    coeffs[a_q, a_p] = tr(T(a_q, a_p)^dag rho) / sqrt(N), so that
    sum |coeffs|^2 = tr(rho^2).
    """

    space: TorusSpace
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=complex)
        N = self.space.N
        if c.shape != (N, N):
            raise ValueError(f"coefficient grid must have shape ({N}, {N}), got {c.shape}")
        object.__setattr__(self, "coeffs", _frozen(c))


def pure_state(space: TorusSpace, amplitudes: np.ndarray) -> PureState:
    """Wrap and validate a position-basis amplitude vector."""
    return PureState(space, amplitudes)


def projector(state: PureState) -> DensityMatrix:
    """Rank-one density matrix |psi><psi|."""
    amps = state.amplitudes
    return DensityMatrix(state.space, np.outer(amps, amps.conj()))


def maximally_mixed(space: TorusSpace) -> DensityMatrix:
    return DensityMatrix(space, np.eye(space.N, dtype=complex) / space.N)


def fourier_transform(state: PureState, direction: str = "position_to_momentum") -> PureState:
    """Map amplitudes between the position and momentum gratings.

    The kernel is <p|q> = exp(-2 pi i p q / N) / sqrt(N) with integer labels,
    i.e. a unitary DFT.
    """
    N = state.space.N
    if direction == "position_to_momentum":
        out = np.fft.fft(state.amplitudes) / np.sqrt(N)
    elif direction == "momentum_to_position":
        out = np.fft.ifft(state.amplitudes) * np.sqrt(N)
    else:
        raise ValueError(f"unknown direction {direction!r}")
    return PureState(state.space, out)


def translation_operator(space: TorusSpace, a_q: int, a_p: int) -> np.ndarray:
    """Unitary phase-space translation by a_q position sites and a_p momentum sites.

    Weyl-symmetrized product of the cyclic position shift and the momentum
    kick diag(exp(2 pi i a_p q / N)); the prefactor exp(-i pi a_q a_p / N)
    makes T(a)^dag equal T(-a) exactly and T(a)T(b) equal T(a+b) up to the
    symplectic phase exp(i pi (a_p b_q - a_q b_p) / N).  Labels are plain
    integers; shifting a label by N reproduces the same operator only up to
    a sign, so labels are NOT reduced mod N here.
    """
    N = space.N
    if a_q != int(a_q) or a_p != int(a_p):
        raise ValueError(f"translation labels must be integers, got ({a_q}, {a_p})")
    q = np.arange(N)
    T = np.zeros((N, N), dtype=complex)
    phase = np.exp(-1j * np.pi * a_q * a_p / N)
    T[(q + a_q) % N, q] = phase * np.exp(2j * np.pi * a_p * ((q + a_q) % N) / N)
    return T


def coherent_state(space: TorusSpace, q0: float, p0: float) -> PureState:
    """Minimum-uncertainty Gaussian packet centred at (q0, p0) in the unit cell.

    Periodized over enough image cells that the truncation error is far
    below double precision; position variance is hbar/2.
    """
    if not (0.0 <= q0 < 1.0 and 0.0 <= p0 < 1.0):
        raise ValueError(f"centre must lie in [0,1)^2, got ({q0}, {p0})")
    N = space.N
    j = np.arange(N)
    images = np.arange(-6, 7)
    dq = j[:, None] / N - q0 + images[None, :]
    envelope = np.exp(-np.pi * N * dq**2).sum(axis=1)
    amps = envelope * np.exp(2j * np.pi * p0 * j)
    amps /= np.linalg.norm(amps)
    return PureState(space, amps)


def random_coherent_centers(n: int, seed: int) -> np.ndarray:
    """n uniform phase-space centres in [0,1)^2, reproducible from the seed."""
    if n < 1:
        raise ValueError(f"need at least one centre, got n={n}")
    rng = np.random.default_rng(seed)
    return rng.random((n, 2))


def _diagonal_gather_indices(N: int):
    a_q = np.arange(N)[:, None]
    q = np.arange(N)[None, :]
    return (q + a_q) % N, np.broadcast_to(q, (N, N))


def chord_transform(rho: DensityMatrix) -> ChordCoefficients:
    """Coefficients of rho over the translation basis, via shifted diagonals + FFT.

    Equivalent to N^2 explicit traces tr(T^dag rho)/sqrt(N) but costs
    O(N^2 log N).
    """
    N = rho.space.N
    rows, cols = _diagonal_gather_indices(N)
    diag = rho.elements[rows, cols]          # diag[a_q, q] = rho[q+a_q, q]
    g = np.fft.fft(diag, axis=1)
    a_q = np.arange(N)[:, None]
    a_p = np.arange(N)[None, :]
    pref = np.exp(-1j * np.pi * a_q * a_p / N)
    return ChordCoefficients(rho.space, pref * g / np.sqrt(N))


def inverse_chord_transform(coeffs: ChordCoefficients) -> DensityMatrix:
    """Reassemble the density matrix from its translation coefficients."""
    N = coeffs.space.N
    a_q = np.arange(N)[:, None]
    a_p = np.arange(N)[None, :]
    pref = np.exp(1j * np.pi * a_q * a_p / N)
    g = pref * coeffs.coeffs * np.sqrt(N)
    diag = np.fft.ifft(g, axis=1)
    rows, cols = _diagonal_gather_indices(N)
    e = np.empty((N, N), dtype=complex)
    e[rows, cols] = diag
    return DensityMatrix(coeffs.space, e)


def purity(rho: DensityMatrix) -> float:
    """tr(rho^2); ranges from 1/N (maximally mixed) to 1 (pure)."""
    return np.einsum("ij,ji->", rho.elements, rho.elements).real


def overlap(rho1: DensityMatrix, rho2: DensityMatrix) -> float:
    """tr(rho1 rho2); real for Hermitian inputs."""
    if rho1.space.N != rho2.space.N:
        raise ValueError("overlap requires matching Hilbert dimensions")
    v = np.einsum("ij,ji->", rho1.elements, rho2.elements)
    assert abs(v.imag) < 1e-10, f"overlap of Hermitian operators came out complex: {v}"
    return v.real
