"""Translation-diagonal decoherence channels.

Each channel is a convex mixture of phase-space translations,
D(rho) = sum_a w(a) T_a rho T_a^dag, fixed by a non-negative weight grid
w over the N x N translation lattice with sum(w) = 1.  Conjugation by a
translation only rephases other translations, so the channel is diagonal
in the chord basis; its eigenvalues are a symplectic Fourier transform of
the weights and the fast application path is a pointwise filter on chord
coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .hilbert import (
    ChordCoefficients,
    DensityMatrix,
    TorusSpace,
    chord_transform,
    inverse_chord_transform,
)

_KRAUS_DIM_LIMIT = 64

MODELS = ("gdm", "dc", "ldm")


@dataclass(frozen=True)
class DecoherenceKernel:
    """Weight grid of a translation-mixture channel plus its chord spectrum."""

    space: TorusSpace
    model: str
    epsilon: float
    weights: np.ndarray
    eigenvalues: np.ndarray
    is_identity: bool = False

    def __post_init__(self):
        N = self.space.N
        w = np.asarray(self.weights, dtype=float)
        lam = np.asarray(self.eigenvalues, dtype=complex)
        if w.shape != (N, N) or lam.shape != (N, N):
            raise ValueError(f"weights and eigenvalues must have shape ({N}, {N})")
        if w.min() < -1e-15:
            raise ValueError(f"weights must be non-negative, min = {w.min():.3e}")
        total = w.sum()
        if abs(total - 1.0) > 1e-12:
            raise ValueError(f"weights must sum to 1 (trace preservation), got {total:.15g}")
        if abs(lam[0, 0] - 1.0) > 1e-12:
            raise ValueError(f"identity chord must have eigenvalue 1, got {lam[0, 0]:.15g}")
        if np.max(np.abs(lam)) > 1.0 + 1e-12:
            raise ValueError("channel eigenvalues must lie in the unit disc")
        for name, arr in (("weights", w), ("eigenvalues", lam)):
            arr = np.ascontiguousarray(arr)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)


def channel_eigenvalues(weights: np.ndarray) -> np.ndarray:
    """Chord-basis eigenvalues of the channel with the given weight grid.

    T_a T_b T_a^dag = exp((2 pi i/N)(a_p b_q - a_q b_p)) T_b, so
    lam[b_q, b_p] = sum_a w[a_q, a_p] exp((2 pi i/N)(a_p b_q - a_q b_p)),
    evaluated with two FFTs.
    """
    w = np.asarray(weights, dtype=complex)
    N = w.shape[0]
    inner = np.fft.ifft(w, axis=1) * N          # inner[a_q, b_q]
    lam = np.fft.fft(inner, axis=0)             # lam[b_p, b_q]
    return lam.T


def _delta_weights(N: int) -> np.ndarray:
    w = np.zeros((N, N))
    w[0, 0] = 1.0
    return w


def _identity_kernel(space: TorusSpace, model: str) -> DecoherenceKernel:
    N = space.N
    return DecoherenceKernel(
        space, model, 0.0, _delta_weights(N), np.ones((N, N), dtype=complex), is_identity=True
    )


def kernel_gdm(space: TorusSpace, epsilon: float, tail_tol: float = 1e-12) -> DecoherenceKernel:
    """Periodized Gaussian weights of width eps*N/(2 pi) lattice units per axis.

    The image sum is truncated adaptively so the neglected mass stays below
    tail_tol; epsilon = 0 returns the exact identity channel.
    """
    if epsilon < 0:
        raise ValueError(f"coupling must be >= 0, got {epsilon}")
    if epsilon == 0.0:
        return _identity_kernel(space, "gdm")
    N = space.N
    sigma = epsilon * N / (2.0 * np.pi)
    n_images = int(np.ceil(sigma * np.sqrt(2.0 * np.log(max(N, 4) / tail_tol)) / N)) + 1
    u = np.arange(N)[:, None] - N * np.arange(-n_images, n_images + 1)[None, :]
    g = np.exp(-(u.astype(float) ** 2) / (2.0 * sigma**2)).sum(axis=1)
    weights = np.outer(g, g)
    weights /= weights.sum()
    return DecoherenceKernel(space, "gdm", epsilon, weights, channel_eigenvalues(weights))


def kernel_dc(space: TorusSpace, epsilon: float) -> DecoherenceKernel:
    """Depolarizing mixture: identity with weight 1 - eps plus a uniform
    eps/N^2 over the whole translation lattice, the identity included."""
    if not 0.0 <= epsilon <= 1.0:
        raise ValueError(f"depolarizing strength must lie in [0, 1], got {epsilon}")
    if epsilon == 0.0:
        return _identity_kernel(space, "dc")
    N = space.N
    weights = np.full((N, N), epsilon / N**2)
    weights[0, 0] += 1.0 - epsilon
    return DecoherenceKernel(space, "dc", epsilon, weights, channel_eigenvalues(weights))


def kernel_ldm(space: TorusSpace, epsilon: float, x_images: int = 100) -> DecoherenceKernel:
    """Periodized 2-D Lorentzian weights with half-width eps*N/(2 pi).

    The algebraic tail decays too slowly for an adaptive cutoff, so the
    image sum runs over the fixed block [-x_images, x_images]^2 and the
    result is renormalized.
    """
    if epsilon < 0:
        raise ValueError(f"coupling must be >= 0, got {epsilon}")
    if epsilon == 0.0:
        return _identity_kernel(space, "ldm")
    if x_images < 1:
        raise ValueError(f"need x_images >= 1, got {x_images}")
    N = space.N
    s = epsilon * N / (2.0 * np.pi)
    offsets = N * np.arange(-x_images, x_images + 1)
    d2 = (np.arange(N)[:, None] - offsets[None, :]).astype(float) ** 2   # (N, n_images)
    n_img = d2.shape[1]
    weights = np.zeros((N, N))
    m_chunk = max(1, int(32e6 // (N * N * 8)))   # keep each broadcast block around 32 MB
    for j in range(n_img):
        base = s * s + d2[:, j]
        for m0 in range(0, n_img, m_chunk):
            block = s / (base[:, None, None] + d2[None, :, m0 : m0 + m_chunk])
            weights += block.sum(axis=2)
    weights /= weights.sum()
    return DecoherenceKernel(space, "ldm", epsilon, weights, channel_eigenvalues(weights))


def kernel_from_weights(
    space: TorusSpace, weights: np.ndarray, model: str = "custom", epsilon: float = float("nan")
) -> DecoherenceKernel:
    """Channel from an arbitrary normalized weight grid (mainly for tests)."""
    w = np.asarray(weights, dtype=float)
    return DecoherenceKernel(space, model, epsilon, w, channel_eigenvalues(w))


def make_kernel(space: TorusSpace, model: str, epsilon: float, **kwargs) -> DecoherenceKernel:
    """Dispatch on the model name; accepts tail_tol (gdm) and x_images (ldm)."""
    if model == "gdm":
        return kernel_gdm(space, epsilon, tail_tol=kwargs.get("tail_tol", 1e-12))
    if model == "dc":
        return kernel_dc(space, epsilon)
    if model == "ldm":
        return kernel_ldm(space, epsilon, x_images=kwargs.get("x_images", 100))
    raise ValueError(f"unknown model {model!r}; choose one of {', '.join(MODELS)}")


def apply_channel_kraus(kernel: DecoherenceKernel, rho: DensityMatrix, force: bool = False) -> DensityMatrix:
    """Literal Kraus sum over all N^2 translations; O(N^4) reference path.

    Conjugation by T(a_q, a_p) shifts both indices by a_q and applies the
    phase exp(2 pi i a_p (i - j)/N); the Weyl prefactor cancels.
    """
    N = rho.space.N
    if N > _KRAUS_DIM_LIMIT and not force:
        raise ValueError(f"Kraus path costs O(N^4); refusing N={N} > {_KRAUS_DIM_LIMIT} without force=True")
    e = rho.elements
    w = kernel.weights
    idx = np.arange(N)
    out = np.zeros((N, N), dtype=complex)
    for a_p in range(N):
        boost = np.exp(2j * np.pi * a_p * idx / N)
        phase = np.outer(boost, boost.conj())
        for a_q in range(N):
            if w[a_q, a_p] == 0.0:
                continue
            out += w[a_q, a_p] * phase * np.roll(e, (a_q, a_q), axis=(0, 1))
    return DensityMatrix(rho.space, out)


def apply_channel_fast(kernel: DecoherenceKernel, rho: DensityMatrix) -> DensityMatrix:
    """Channel application as a pointwise chord filter; O(N^2 log N)."""
    if kernel.is_identity:
        return rho
    c = chord_transform(rho)
    filtered = ChordCoefficients(rho.space, c.coeffs * kernel.eigenvalues)
    return inverse_chord_transform(filtered)
