"""Five-qubit primitive circuits: inversion, multiplication, trace, Fourier."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from btprim import group, qubit_gates
from btprim.circuits import cnot_count, phase_distance, unitary_of


def test_inversion_circuit_exact():
    assert qubit_gates.verify_inversion()


def test_inversion_is_a_permutation():
    u = unitary_of(qubit_gates.build_inversion(), check=False)
    assert np.abs(np.abs(u).sum(axis=0) - 1.0).max() < 1e-10
    assert np.abs(np.abs(u) ** 2 - np.abs(u)).max() < 1e-10


def test_inversion_is_self_inverse():
    u = unitary_of(qubit_gates.build_inversion(), check=False)
    assert np.abs(u @ u - np.eye(32)).max() < 1e-10


def test_inversion_cnot_count():
    assert cnot_count(qubit_gates.build_inversion()) == 31


def test_multiplication_circuit_exact():
    assert qubit_gates.verify_multiplication()


def test_multiplication_counts():
    counts = qubit_gates.build_multiplication().gate_counts()
    # five controlled stages: Toffoli conjugation fix-ups, one CSWAP per
    # l-type stage, and one quaternion-exponent incrementer pair
    assert counts["Toffoli"] == 5
    assert counts["CSWAP"] == 2
    assert counts["CCCHI"] == 1 and counts["CCCHI_INV"] == 1
    assert cnot_count(qubit_gates.build_multiplication()) == 79


@settings(max_examples=8, deadline=None)
@given(st.floats(min_value=-3.0, max_value=3.0,
                 allow_nan=False, allow_infinity=False))
def test_trace_circuit_any_angle(theta):
    assert qubit_gates.verify_trace(theta)


def test_trace_is_diagonal_phase():
    u = unitary_of(qubit_gates.build_trace(0.7), check=False)
    assert np.abs(u - np.diag(np.diag(u))).max() < 1e-12
    for g in range(24):
        want = np.exp(1j * 0.7 * group.RE_TRACE[g])
        assert abs(u[g, g] - want) < 1e-10


def test_trace_multiplex_table():
    # half-trace of the positive lift, indexed by (n, o, p, q); the sign
    # bit contributes the overall factor in the rotation angle
    assert qubit_gates.TRACE_MULTIPLEX == (
        2, 0, 0, 0, -1, 1, 1, 1, -1, -1, -1, -1, -2, 0, 0, 0)
    for j in range(12):  # j >= 12 sets both cube-root bits (no valid code)
        g = 2 * (j & 1) + 4 * ((j >> 1) & 1) + 8 * ((j >> 2) & 1) \
            + 16 * ((j >> 3) & 1)
        assert qubit_gates.TRACE_MULTIPLEX[j] == group.RE_TRACE[g]


def test_trace_cnot_count():
    assert cnot_count(qubit_gates.build_trace(0.7)) == 16


def test_fourier_unitary_is_unitary():
    u = qubit_gates.build_fourier_unitary()
    assert np.abs(u.conj().T @ u - np.eye(32)).max() < 1e-12


def test_fourier_block_diagonalizes_left_action():
    u = qubit_gates.build_fourier_unitary()
    dims = [group.IRREP_DIMS[l] for l in qubit_gates.IRREP_ORDER]
    for g in range(24):
        p = np.eye(32, dtype=complex)
        p[:24, :24] = group.left_permutation(g).matrix()
        b = u @ p @ u.conj().T
        # block structure: for each irrep rho, rho(g) (x) I_d on its
        # d*d rows; identity on the invalid-code tail
        row = 0
        for label, d in zip(qubit_gates.IRREP_ORDER, dims):
            blk = b[row:row + d * d, row:row + d * d]
            want = np.kron(group.irrep(label, g), np.eye(d))
            assert np.abs(blk - want).max() < 1e-10
            row += d * d
        assert np.abs(b[24:, 24:] - np.eye(8)).max() < 1e-12
        b[24:, 24:] = 0.0
        row = 0
        for d in dims:
            b[row:row + d * d, row:row + d * d] = 0.0
            row += d * d
        assert np.abs(b).max() < 1e-10


def test_fourier_roundtrip():
    rng = np.random.default_rng(2)
    f = rng.normal(size=24) + 1j * rng.normal(size=24)
    assert np.abs(qubit_gates.fourier_roundtrip(f) - f).max() < 1e-8


def test_fourier_circuit_matches_matrix():
    circ, report = qubit_gates.build_fourier_circuit()
    u = unitary_of(circ, check=False)
    assert phase_distance(u, qubit_gates.build_fourier_unitary()) < 1e-10
    assert report["cnot"] == 720
    assert report["reference_cnot"] == 1025
