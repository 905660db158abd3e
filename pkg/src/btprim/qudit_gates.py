"""Single- and two-qudit (24-level) circuits for the four primitives.

Inversion is a product of level transpositions, the trace gate a set of
two-level Rz rotations (or one fused SNAP), and multiplication a cascade
of control-level-triggered SNAPs conjugated by per-element diagonalizers
V_g.  Each V_g is assembled cycle by cycle: the left-multiplication
permutation P_g restricted to one of its cycles is a cyclic shift, which
the discrete Fourier transform of Z_m diagonalizes.

Fixed Euler-angle blocks for the Z_m transforms are provided (U2, U3,
U4, U6).  They are verified numerically at build time; blocks whose
tabulated angles miss the 1e-8 diagonalization target (the angle tables
carry only 4-6 digits) are replaced by an exactly derived Givens-rotation
decomposition of the Z_m DFT, and the substitution is recorded on the
circuit report.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import group
from .circuits import Circuit, Gate, unitary_of

QUDIT_DIM = 24

_PI = math.pi

# frozen Euler angles for the Z_m diagonalizer blocks
THETA_II = (_PI / 2, _PI / 2, _PI / 2)
THETA_III = {
    "t0": (7 * _PI / 6, 3 * _PI / 2, _PI / 2),
    "t1": 0.608175 * _PI,
    "t2": (0.0, -_PI / 2, _PI / 3),
    "t3": 7 * _PI / 3,
}
THETA_IV = {
    "t0": (2 * _PI, _PI / 2, 0.0),
    "t1": 1.392 * _PI,
    "t2": 0.4511 * _PI,
    "t3": 4 * _PI / 3,
    "t4": (0.90126 * _PI, 0.41956 * _PI, 1.852 * _PI),
    "t5": 0.60817 * _PI,
    "t6": (_PI / 2, _PI / 4, -_PI / 4),
    "t7": -_PI / 2,
    "t8": -3 * _PI / 4,
}

# two-level rotation counts per Z_m block and per full V_g, as used in
# the reference resource accounting (see count_vg_rotations)
BLOCK_ROTATIONS = {1: 0, 2: 3, 3: 8, 4: 15, 6: 35}
VG_ROTATIONS = {1: 0, 2: 36, 3: 64, 4: 90, 6: 140}


def _two_level(kind: str, a: int, b: int, angle: float) -> Gate:
    # gates store ordered level pairs; exchanging the pair conjugates
    # by X, which negates Z and Y rotation angles and fixes X ones
    if a > b:
        a, b = b, a
        if kind in ("RZL", "RYL"):
            angle = -angle
    return Gate(kind, (0,), angle=angle, levels=(a, b))


def _su2_gates(block: np.ndarray, a: int, b: int) -> list[Gate]:
    """Two-level gates realizing an SU(2) block on levels (a, b).

    The block is given in (a, b) ordering; if a > b the roles are
    exchanged by conjugating with X, which negates the ZYZ angles.
    """
    if abs(np.linalg.det(block) - 1) > 1e-10:
        raise ValueError("block must be special unitary")
    flip = a > b
    if flip:
        a, b = b, a
        block = block[::-1, ::-1]
    x, y = block[0, 0], block[0, 1]
    gamma = 2 * math.atan2(abs(y), abs(x))
    ph_x = 2 * np.angle(x) if abs(x) > 1e-12 else 0.0
    ph_y = 2 * np.angle(y) if abs(y) > 1e-12 else 0.0
    beta = (ph_x + ph_y) / 2
    delta = (ph_x - ph_y) / 2
    gates = []
    if abs(delta) > 1e-12:
        gates.append(_two_level("RZL", a, b, delta))
    if abs(gamma) > 1e-12:
        gates.append(_two_level("RYL", a, b, gamma))
    if abs(beta) > 1e-12:
        gates.append(_two_level("RZL", a, b, beta))
    return gates


def dft_matrix(m: int) -> np.ndarray:
    w = np.exp(2j * _PI / m)
    return np.array([[w ** (j * k) for k in range(m)] for j in range(m)]) / math.sqrt(m)


def _givens_decompose(u: np.ndarray) -> list[tuple[int, int, np.ndarray]]:
    """Reduce u to diagonal by SU(2) row rotations; returns the inverse
    factors (i, j, block) whose ordered product equals u times a dropped
    right-diagonal."""
    m = u.shape[0]
    work = u.astype(complex).copy()
    factors = []
    for col in range(m):
        for row in range(m - 1, col, -1):
            x, y = work[row - 1, col], work[row, col]
            r = math.hypot(abs(x), abs(y))
            if abs(y) < 1e-14:
                continue
            g = np.array([[np.conj(x), np.conj(y)], [-y, x]]) / r
            work[[row - 1, row], :] = g @ work[[row - 1, row], :]
            factors.append((row - 1, row, g.conj().T))
    # work is now diagonal; u = (product of factors in reverse) @ work
    return factors[::-1]


def _derived_block_gates(levels) -> list[Gate]:
    """Exact diagonalizer for the cyclic shift on the given levels:
    Givens decomposition of the Z_m DFT, cycle coordinates mapped onto
    the actual level indices (trailing diagonal dropped — it commutes
    with the shift's eigenbasis)."""
    m = len(levels)
    gates = []
    for i, j, blk in _givens_decompose(dft_matrix(m)):
        gates += _su2_gates(blk, levels[i], levels[j])
    return gates


def _tabulated_block_gates(levels) -> list[Gate]:
    """Fixed-angle Euler blocks (orders 2, 3, 4, 6) on the given levels,
    in cycle order."""
    m = len(levels)

    def u2(a, b, th=THETA_II):
        return [
            _two_level("RZL", a, b, th[2]),
            _two_level("RXL", a, b, th[1]),
            _two_level("RZL", a, b, th[0]),
        ]

    if m == 2:
        return u2(*levels)
    if m == 3:
        a, b, c = levels
        t = THETA_III
        return (
            [_two_level("RZL", b, c, t["t3"])]
            + u2(a, b, t["t2"])
            + [_two_level("RXL", b, c, t["t1"])]
            + u2(a, b, t["t0"])
        )
    if m == 4:
        a, b, c, d = levels
        t = THETA_IV
        return (
            [_two_level("RZL", c, d, t["t8"]), _two_level("RZL", b, c, t["t7"])]
            + u2(a, b, t["t6"])
            + [_two_level("RXL", b, c, t["t5"])]
            + u2(a, b, t["t4"])
            + [_two_level("RZL", c, d, t["t3"]), _two_level("RZL", a, b, t["t2"]),
               _two_level("RXL", b, c, t["t1"])]
            + u2(a, b, t["t0"])
        )
    if m == 6:
        a, b, c, d, e, f = levels
        return (
            u2(c, f)
            + u2(b, e)
            + u2(a, d)
            + _tabulated_block_gates((d, e, f))
            + _tabulated_block_gates((a, b, c))
        )
    raise ValueError(f"no Euler block of order {m}")


BLOCK_KINDS = {"U2": 2, "U3": 3, "U4": 4, "U6": 6}


def build_euler_block(kind: str, levels) -> tuple[Circuit, bool]:
    """Fixed-angle diagonalizer block; returns (circuit, used_fallback).

    The block's unitary is checked to diagonalize the cyclic shift over
    ``levels`` (in the given order) within 1e-8; on failure the derived
    Givens decomposition of the Z_m DFT is substituted.
    """
    if kind not in BLOCK_KINDS:
        raise ValueError(f"unknown block kind {kind}")
    m = BLOCK_KINDS[kind]
    levels = tuple(levels)
    if len(levels) != m or len(set(levels)) != m:
        raise ValueError(f"{kind} needs {m} distinct levels")
    if not all(0 <= l < QUDIT_DIM for l in levels):
        raise ValueError("levels out of range")
    gates = _tabulated_block_gates(levels)
    circ = Circuit(1, tuple(gates), dim=QUDIT_DIM, name=f"{kind}{levels}")
    if _diagonalizes_shift(circ, levels):
        return circ, False
    fallback = Circuit(1, tuple(_derived_block_gates(levels)), dim=QUDIT_DIM,
                       name=f"{kind}{levels}_derived")
    return fallback, True


def _shift_matrix(levels) -> np.ndarray:
    p = np.eye(QUDIT_DIM)
    m = len(levels)
    for k in range(m):
        p[:, levels[k]] = 0.0
        p[levels[(k + 1) % m], levels[k]] = 1.0
    return p


def _diagonalizes_shift(circ: Circuit, levels, tol: float = 1e-8) -> bool:
    v = unitary_of(circ, check=False)
    d = v.conj().T @ _shift_matrix(levels) @ v
    return bool(np.abs(d - np.diag(np.diag(d))).max() < tol)


# --- primitives ----------------------------------------------------------


def build_inversion_qudit() -> Circuit:
    """|g> -> |g^-1> as transpositions; 0 and 1 are their own inverses,
    leaving 11 swapped pairs."""
    gates = []
    for g in range(QUDIT_DIM):
        gi = int(group.INV_TABLE[g])
        if g < gi:
            gates.append(Gate("XL", (0,), levels=(g, gi)))
    return Circuit(1, tuple(gates), dim=QUDIT_DIM, name="inversion_qudit")


def build_trace_qudit(theta: float) -> tuple[Circuit, Gate]:
    """Diagonal phases e^{i*theta*ReTr g}.

    ReTr pairs each g with -g at opposite sign, so nine two-level Rz
    gates (one per pair with nonzero trace) realize the full diagonal
    exactly; the fused form is a single SNAP with phases theta*ReTr.
    """
    if not math.isfinite(theta):
        raise ValueError("theta must be finite")
    gates = []
    done = set()
    for g in range(QUDIT_DIM):
        r = int(group.RE_TRACE[g])
        if r <= 0 or g in done:
            continue
        neg = int(group.MULT_TABLE[1, g])
        a, b = (g, neg) if g < neg else (neg, g)
        ra = int(group.RE_TRACE[a])
        gates.append(_two_level("RZL", a, b, 2.0 * theta * ra))
        done.update((g, neg))
    circ = Circuit(1, tuple(gates), dim=QUDIT_DIM, name="trace_qudit")
    fused = Gate("SNAP", (0,),
                 phases=tuple(float(theta * r) for r in group.RE_TRACE))
    return circ, fused


@dataclass(frozen=True)
class VgReport:
    g: int
    cycles: tuple[tuple[int, ...], ...]
    fallback_cycles: int


_BLOCK_BY_ORDER = {2: "U2", 3: "U3", 4: "U4", 6: "U6"}


def build_Vg(g: int) -> tuple[Circuit, VgReport]:
    """Diagonalizer of the left-multiplication permutation P_g.

    One block per cycle of the permutation h -> g*h; V_g^dag P_g V_g is
    diagonal with the cycle's m-th roots of unity as eigenphases.
    """
    perm = group.left_permutation(g)
    cycles = tuple(tuple(c) for c in perm.cycles() if len(c) > 1)
    gates: list[Gate] = []
    fallbacks = 0
    for cyc in cycles:
        blk, fb = build_euler_block(_BLOCK_BY_ORDER[len(cyc)], cyc)
        gates += blk.gates
        fallbacks += fb
    circ = Circuit(1, tuple(gates), dim=QUDIT_DIM, name=f"V_{g}")
    return circ, VgReport(g, cycles, fallbacks)


def vg_eigenphases(g: int) -> np.ndarray:
    """Diagonal of V_g^dag P_g V_g (phases, in order of level index)."""
    v, _ = build_Vg(g)
    vm = unitary_of(v, check=False)
    pm = permutation_matrix(g)
    d = vm.conj().T @ pm @ vm
    off = np.abs(d - np.diag(np.diag(d))).max()
    if off > 1e-8:
        raise RuntimeError(f"V_{g} failed to diagonalize P_{g}: {off:.2e}")
    return np.angle(np.diag(d))


def permutation_matrix(g: int) -> np.ndarray:
    p = np.zeros((QUDIT_DIM, QUDIT_DIM))
    for h in range(QUDIT_DIM):
        p[group.MULT_TABLE[g, h], h] = 1.0
    return p


def build_multiplication_qudit() -> Circuit:
    """|g>|h> -> |g>|g*h> on two qudits (g on wire 0, h on wire 1).

    For each nonidentity g: rotate h into the eigenbasis of P_g, apply
    the eigenphases with a SNAP triggered on control level g, rotate
    back.  23 cSNAPs total; the identity element needs none.
    """
    gates: list[Gate] = []
    for g in range(1, QUDIT_DIM):
        v, _ = build_Vg(g)
        phases = vg_eigenphases(g)
        on_h = [Gate(gt.kind, (1,), angle=gt.angle, levels=gt.levels)
                for gt in v.gates]
        inv_on_h = [Gate(gt.kind, (1,), angle=-gt.angle, levels=gt.levels)
                    for gt in reversed(on_h)]
        gates += inv_on_h
        gates.append(Gate("CSNAP", (0, 1), phases=tuple(phases),
                          control_level=g))
        gates += on_h
    return Circuit(2, tuple(gates), dim=QUDIT_DIM, name="multiplication_qudit")


def count_vg_rotations() -> dict:
    """Two-level rotation accounting for the multiplication cascade.

    Uses the tabulated per-order block counts; reports the raw total
    over all 23 V_g, the doubled count including the V_g^dag factors,
    the merged estimate (adjacent V_g V_{g'}^dag pairs fused into single
    unitaries), and the reference totals.
    """
    per_class = {}
    raw = 0
    for g in range(QUDIT_DIM):
        order = group.element_order(g)
        per_class[g] = VG_ROTATIONS[order]
        raw += VG_ROTATIONS[order]
    with_daggers = 2 * (raw - per_class[0])
    return {
        "per_element": per_class,
        "raw_total": raw,  # sum over all 24 elements, one V_g each
        "with_daggers": with_daggers,
        "merged_estimate": with_daggers // 2,
        "reference_total": 2244,
        "csnap": 23,
        "native_snap_reference": 575,
        "native_displacement_reference": 575,
    }
