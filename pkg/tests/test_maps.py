"""Tests for the classical perturbed cat map and its quantized version.

Oracles: a dense DFT-matrix construction of the one-step unitary, finite
differences for the tangent map, and the closed-form Lyapunov exponent of
the unperturbed hyperbolic map.
"""

import numpy as np
import pytest

import torusecho as te


def dense_dft(N):
    p, q = np.meshgrid(np.arange(N), np.arange(N), indexing="ij")
    return np.exp(-2j * np.pi * p * q / N) / np.sqrt(N)


def dense_unitary(kmap):
    """Position-kick then momentum-kick, assembled with dense matrices."""
    F = dense_dft(kmap.space.N)
    return F.conj().T @ np.diag(kmap.t_phase) @ F @ np.diag(kmap.v_phase)


def test_quantum_map_matches_dense_oracle():
    rng = np.random.default_rng(0)
    for N in (8, 32):
        space = te.TorusSpace(N)
        kmap = te.perturbed_cat_quantum(space, 2, 2, 0.001)
        U = dense_unitary(kmap)
        for _ in range(5):
            v = rng.normal(size=N) + 1j * rng.normal(size=N)
            v /= np.linalg.norm(v)
            out = te.apply_map(kmap, te.pure_state(space, v))
            assert np.abs(out.amplitudes - U @ v).max() < 1e-12


def test_quantum_map_unitary():
    for N in (16, 32):
        space = te.TorusSpace(N)
        kmap = te.perturbed_cat_quantum(space, 2, 2, 0.2)
        U = dense_unitary(kmap)
        assert np.abs(U.conj().T @ U - np.eye(N)).max() < 1e-12


def test_quantum_map_inverse_roundtrip():
    rng = np.random.default_rng(1)
    space = te.TorusSpace(64)
    kmap = te.perturbed_cat_quantum(space, 2, 2, 0.001)
    v = rng.normal(size=64) + 1j * rng.normal(size=64)
    v /= np.linalg.norm(v)
    state = te.pure_state(space, v)
    back = te.apply_map_inverse(kmap, te.apply_map(kmap, state))
    assert np.abs(back.amplitudes - v).max() < 1e-13


def test_quantum_map_on_density_matrix():
    # rho -> U rho U^dagger, preserving trace and purity
    rng = np.random.default_rng(2)
    space = te.TorusSpace(32)
    kmap = te.perturbed_cat_quantum(space, 2, 2, 0.001)
    U = dense_unitary(kmap)
    v = rng.normal(size=32) + 1j * rng.normal(size=32)
    v /= np.linalg.norm(v)
    rho = te.projector(te.pure_state(space, v))
    out = te.apply_map(kmap, rho)
    assert np.abs(out.elements - U @ rho.elements @ U.conj().T).max() < 1e-12
    assert np.trace(out.elements).real == pytest.approx(1.0, abs=1e-12)
    assert te.purity(out) == pytest.approx(1.0, abs=1e-12)


def test_classical_fixed_point():
    params = te.ClassicalMapParams(2, 2, 0.001)
    q1, p1 = te.classical_step(params, 0.0, 0.0)
    assert q1 == pytest.approx(0.0, abs=1e-15)
    assert p1 == pytest.approx(0.0, abs=1e-15)


def test_classical_step_stays_on_torus():
    params = te.ClassicalMapParams(2, 2, 0.3)
    rng = np.random.default_rng(3)
    q, p = rng.random(2)
    for _ in range(50):
        q, p = te.classical_step(params, q, p)
        assert 0.0 <= q < 1.0
        assert 0.0 <= p < 1.0


def test_tangent_map_area_preserving():
    params = te.ClassicalMapParams(2, 2, 0.4)
    rng = np.random.default_rng(4)
    for _ in range(10):
        q, p = rng.random(2)
        M = te.classical_tangent(params, q, p)
        assert np.linalg.det(M) == pytest.approx(1.0, abs=1e-12)


def test_tangent_map_matches_finite_differences():
    params = te.ClassicalMapParams(2, 2, 0.05)
    rng = np.random.default_rng(5)
    h = 1e-7
    for _ in range(5):
        q, p = 0.2 + 0.6 * rng.random(2)  # keep q+-h, p+-h away from the wrap
        M = te.classical_tangent(params, q, p)
        for j, (dq, dp) in enumerate(((h, 0.0), (0.0, h))):
            qp1 = np.array(te.classical_step(params, q + dq, p + dp))
            qm1 = np.array(te.classical_step(params, q - dq, p - dp))
            diff = (qp1 - qm1 + 0.5) % 1.0 - 0.5  # branch-safe difference on the torus
            assert np.abs(M[:, j] - diff / (2 * h)).max() < 1e-4


def test_lyapunov_formula_values():
    assert te.lyapunov_formula(2, 2) == pytest.approx(np.log(3 + 2 * np.sqrt(2)), rel=1e-14)
    assert te.lyapunov_formula(1, 1) == pytest.approx(np.log((3 + np.sqrt(5)) / 2), rel=1e-14)


def test_lyapunov_formula_rejects_non_hyperbolic():
    with pytest.raises(ValueError):
        te.lyapunov_formula(0, 2)
    with pytest.raises(ValueError):
        te.lyapunov_formula(-1, 2)


def test_lyapunov_numeric_matches_formula():
    params = te.ClassicalMapParams(2, 2, 0.001)
    est = te.classical_lyapunov_numeric(params, seed=0)
    assert est.stderr < 0.01
    assert abs(est.value - te.lyapunov_formula(2, 2)) / te.lyapunov_formula(2, 2) < 0.01


def test_lyapunov_numeric_rejects_short_runs():
    params = te.ClassicalMapParams(2, 2, 0.001)
    with pytest.raises(ValueError):
        te.classical_lyapunov_numeric(params, n_iter=2000)


def test_lyapunov_numeric_deterministic():
    params = te.ClassicalMapParams(2, 2, 0.001)
    e1 = te.classical_lyapunov_numeric(params, seed=7)
    e2 = te.classical_lyapunov_numeric(params, seed=7)
    assert e1.value == e2.value
    assert e1.stderr == e2.stderr
