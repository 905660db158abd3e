"""24-level qudit primitives: transpositions, SNAP trace, diagonalizers."""

import numpy as np
import pytest

from btprim import group, qudit_gates
from btprim.circuits import unitary_of


def test_inversion_is_eleven_transpositions():
    circ = qudit_gates.build_inversion_qudit()
    counts = circ.gate_counts()
    assert counts == {"XL": 11}
    # exactly the 2-cycles of the inversion permutation
    pairs = {g.levels for g in circ.gates}
    want = {tuple(sorted((g, int(group.INV_TABLE[g]))))
            for g in range(24) if group.INV_TABLE[g] != g}
    assert pairs == want


def test_inversion_qudit_exact():
    u = unitary_of(qudit_gates.build_inversion_qudit(), check=False)
    for g in range(24):
        assert abs(u[int(group.INV_TABLE[g]), g] - 1.0) < 1e-12


def test_trace_qudit_rotation_count_and_phases():
    circ, fused = qudit_gates.build_trace_qudit(0.7)
    assert circ.gate_counts() == {"RZL": 9}
    diag = np.diag(unitary_of(circ, check=False))
    want = np.exp(1j * 0.7 * group.RE_TRACE)
    assert np.abs(diag - want).max() < 1e-10
    # the fused single-pulse form carries the same phases
    assert fused.kind == "SNAP"
    assert np.abs(np.exp(1j * np.array(fused.phases)) - want).max() < 1e-12


@pytest.mark.parametrize("theta", [0.1, 0.7, 2.3, -1.4])
def test_trace_qudit_any_angle(theta):
    circ, _ = qudit_gates.build_trace_qudit(theta)
    diag = np.diag(unitary_of(circ, check=False))
    assert np.abs(diag - np.exp(1j * theta * group.RE_TRACE)).max() < 1e-10


def test_u2_tabulated_block_is_primary():
    circ, fallback = qudit_gates.build_euler_block("U2", (3, 5))
    assert not fallback
    assert qudit_gates._diagonalizes_shift(circ, (3, 5))


def test_all_diagonalizers_work():
    for g in range(24):
        phases = qudit_gates.vg_eigenphases(g)  # raises on failure
        # eigenphase multiset must match the permutation spectrum
        got = np.sort(np.exp(1j * phases))
        want = np.sort(np.linalg.eigvals(qudit_gates.permutation_matrix(g)))
        got = sorted(got, key=lambda z: (round(z.real, 8), round(z.imag, 8)))
        want = sorted(want, key=lambda z: (round(z.real, 8), round(z.imag, 8)))
        assert np.abs(np.array(got) - np.array(want)).max() < 1e-8


def test_vg_cycle_structure():
    for g in range(1, 24):
        _, report = qudit_gates.build_Vg(g)
        m = group.element_order(g)
        assert all(len(c) == m for c in report.cycles)
        assert len(report.cycles) == 24 // m


def test_multiplication_qudit_exact():
    circ = qudit_gates.build_multiplication_qudit()
    assert circ.gate_counts()["CSNAP"] == 23
    u = unitary_of(circ, check=False)
    for g in range(24):
        for h in range(24):
            src = g + 24 * h
            dst = g + 24 * int(group.MULT_TABLE[g, h])
            assert abs(u[dst, src] - 1.0) < 1e-8


def test_rotation_accounting():
    report = qudit_gates.count_vg_rotations()
    assert report["raw_total"] == 2208
    assert report["reference_total"] == 2244
    assert report["csnap"] == 23
