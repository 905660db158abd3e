"""SNAP/displacement compilation of 24-dimensional targets."""

import numpy as np
import pytest

from btprim import group, snapcompile
from btprim.snapcompile import (
    SnapDisplacementAnsatz,
    ansatz_unitary,
    compile_snap_displacement,
    subspace_infidelity,
)


def _random_ansatz(layers, seed, n=32):
    rng = np.random.default_rng(seed)
    return SnapDisplacementAnsatz(
        layers,
        rng.uniform(-1, 1, (layers, 24)),
        rng.normal(size=layers + 1) * 0.2
        + 1j * rng.normal(size=layers + 1) * 0.2,
        n,
    )


def test_ansatz_unitary_is_unitary():
    a = _random_ansatz(3, seed=0)
    u = ansatz_unitary(a)
    assert np.abs(u.conj().T @ u - np.eye(a.n_trunc)).max() < 1e-10


def test_infidelity_of_self_is_zero():
    a = _random_ansatz(2, seed=1)
    a = SnapDisplacementAnsatz(a.layers, a.snap_phases,
                               np.zeros(a.layers + 1, complex), a.n_trunc)
    u = ansatz_unitary(a)[:24, :24]  # exactly unitary: no displacements
    assert subspace_infidelity(u, ansatz_unitary(a)) < 1e-12


def test_gradient_matches_finite_differences():
    rng = np.random.default_rng(4)
    target = np.diag(np.exp(1j * rng.uniform(-1, 1, 24)))
    n = 30
    ga, gb = snapcompile._ladder_generators(n)
    target_pad = np.zeros((n, n), complex)
    target_pad[:24, :24] = target
    k = 2
    x0 = rng.normal(size=k * 24 + 2 * (k + 1)) * 0.1
    f0, g0 = snapcompile._objective_and_grad(x0, target_pad, k, n, ga, gb)
    eps = 1e-6
    for idx in rng.choice(len(x0), size=6, replace=False):
        xp = x0.copy()
        xp[idx] += eps
        fp, _ = snapcompile._objective_and_grad(xp, target_pad, k, n, ga, gb)
        assert abs((fp - f0) / eps - g0[idx]) < 1e-4


def test_identity_target_compiles_exactly():
    res = compile_snap_displacement(np.eye(24, dtype=complex), layers=1,
                                    maxiter=50)
    assert res.infidelity < 1e-10


def test_diagonal_trace_target_compiles_exactly():
    target = np.diag(np.exp(1j * 0.7 * group.RE_TRACE))
    res = compile_snap_displacement(target, layers=1, maxiter=50)
    assert res.infidelity < 1e-10


def test_random_diagonal_target_compiles_exactly():
    rng = np.random.default_rng(9)
    target = np.diag(np.exp(1j * rng.uniform(-np.pi, np.pi, 24)))
    res = compile_snap_displacement(target, layers=1, maxiter=50)
    assert res.infidelity < 1e-10


def test_input_validation():
    with pytest.raises(ValueError):
        compile_snap_displacement(np.eye(10, dtype=complex), layers=1)
    with pytest.raises(ValueError):
        compile_snap_displacement(2 * np.eye(24, dtype=complex), layers=1)
    with pytest.raises(ValueError):
        compile_snap_displacement(np.eye(24, dtype=complex), layers=0)


def test_displacement_truncation_leakage_small():
    assert snapcompile.displacement_norm_leakage(0.2 + 0.1j) < 1e-6
