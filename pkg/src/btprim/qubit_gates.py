"""Five-qubit circuits for the four binary-tetrahedral primitives.

A group register holds |q p o n m> with basis index m + 2n + 4o + 8p + 16q
(wire 0 = m).  Inversion and multiplication are classical reversible
circuits; the trace gate is a multiplexed Rz; the Fourier transform is a
dense 32x32 unitary handed to the generic synthesizer.
"""

from __future__ import annotations

import math

import numpy as np

from . import group
from .circuits import (
    Circuit,
    Gate,
    cchi,
    cnot,
    multiplexed_rotation,
    swap,
    toffoli,
    unitary_of,
)

# wire roles within one register
M, N, O, P, Q = 0, 1, 2, 3, 4


def build_inversion() -> Circuit:
    """Map |g> -> |g^-1> on the valid basis states.

    Implements the closed-form inverse: the sign bit picks up
    m ^= n ^ o ^ n&o, the (n, o) pair is rotated by an amount set by the
    l-exponent, and the exponent itself is negated by exchanging p and q.
    The exchange is folded into the conditional (n, o) update so the
    whole thing costs one CSWAP, three Toffolis and five CNOTs.
    """
    gates = [
        # sign update, on the original (n, o)
        cnot(N, M),
        cnot(O, M),
        toffoli(N, O, M),
        # conditional (n, o) rotation interleaved with the p<->q exchange
        toffoli(Q, O, N),
        cnot(P, Q),
        Gate("SWAP", (N, O), controls=((Q, 1),)),
        toffoli(P, O, N),
        cnot(Q, P),
        cnot(P, Q),
    ]
    return Circuit(5, tuple(gates), name="inversion")


# Left-multiplication pieces for |h> <- |x . h>, controlled on one bit of
# the g register.  Wires: g register on 0..4, h register on 5..9.


def _left_mult_gates(ctrl: int, h: int) -> dict:
    """Gate lists for controlled left multiplication by each generator.

    h is the wire offset of the target register; ctrl the controlling
    wire in the g register.
    """
    m1, n1, o1, p1, q1 = h + M, h + N, h + O, h + P, h + Q

    by_minus1 = [cnot(ctrl, m1)]
    # i . i^n flips the sign when n = 1, then toggles n
    by_i = [toffoli(ctrl, n1, m1), cnot(ctrl, n1)]
    # j i^n = (-1)^n i^n j and j^2 = -1: sign flips on n ^ o, o toggles
    by_j = [toffoli(ctrl, n1, m1), toffoli(ctrl, o1, m1), cnot(ctrl, o1)]
    # l i^n j^o l^-1 maps (n, o) -> (o, n^o); l has order 3 here
    # (l^3 = +1, all signs live in the m bit), so e just gains one mod 3
    by_l = [
        toffoli(ctrl, o1, n1),
        Gate("SWAP", (n1, o1), controls=((ctrl, 1),)),
        cchi(ctrl, p1, q1),
    ]
    # l^2: (n, o) -> (n^o, n), e gains two mod 3
    by_l2 = [
        toffoli(ctrl, n1, o1),
        Gate("SWAP", (n1, o1), controls=((ctrl, 1),)),
        cchi(ctrl, p1, q1, inverse=True),
    ]
    return {"-1": by_minus1, "i": by_i, "j": by_j, "l": by_l, "l2": by_l2}


def build_multiplication() -> Circuit:
    """|g>|h> -> |g>|g.h> with g on wires 0-4 and h on wires 5-9.

    g = (-1)^m i^n j^o l^(p+2q) is applied to h one generator factor at
    a time, right to left, each controlled on the matching g bit.
    """
    gates: list[Gate] = []
    gates += _left_mult_gates(P, 5)["l"]
    gates += _left_mult_gates(Q, 5)["l2"]
    gates += _left_mult_gates(O, 5)["j"]
    gates += _left_mult_gates(N, 5)["i"]
    gates += _left_mult_gates(M, 5)["-1"]
    return Circuit(10, tuple(gates), name="multiplication")


def _retrace_half(j: int) -> int:
    """Re Tr of the element with m = 0 and (n, o, p, q) = bits of j.

    Codes with p = q = 1 never occur as valid states; they are assigned
    the trace of -(i^n j^o) (the actual matrix product, since the
    l-matrix cubes to -1), which keeps the diagonal a pure multiplexed
    Rz on the sign qubit.
    """
    n, o, p, q = j & 1, (j >> 1) & 1, (j >> 2) & 1, (j >> 3) & 1
    if p and q:
        return -2 if (n, o) == (0, 0) else 0
    return int(group.RE_TRACE[2 * n + 4 * o + 8 * p + 16 * q])


TRACE_MULTIPLEX = tuple(_retrace_half(j) for j in range(16))


def build_trace(theta: float) -> Circuit:
    """Diagonal gate exp(i*theta*ReTr(g)) on valid basis states.

    ReTr is odd under the sign bit m, so the full diagonal is a single
    Rz on wire 0 multiplexed over (n, o, p, q): sixteen rotations and
    sixteen CNOTs.
    """
    if not math.isfinite(theta):
        raise ValueError("theta must be finite")
    angles = [2.0 * theta * r for r in TRACE_MULTIPLEX]
    gates = multiplexed_rotation("Z", angles, M, [N, O, P, Q])
    return Circuit(5, tuple(gates), name="trace")


# --- Fourier -------------------------------------------------------------

IRREP_ORDER = (1, 2, 3, 4, 5, 6, 7)


def build_fourier_unitary() -> np.ndarray:
    """32x32 Fourier matrix: rows (rho, i, j) row-major per irrep in the
    order rho1..rho7, entries sqrt(d_rho/24) rho(g)_ij; identity on the
    eight invalid states."""
    u = np.eye(32, dtype=complex)
    for g in range(24):
        col = []
        for label in IRREP_ORDER:
            mat = group.irrep(label, g)
            d = mat.shape[0]
            col.append(math.sqrt(d / 24.0) * mat.reshape(-1))
        u[:24, g] = np.concatenate(col)
    return u


def build_fourier_circuit():
    """Synthesized circuit for the 32x32 Fourier unitary, with counts."""
    from .circuits import synthesize_unitary

    u = build_fourier_unitary()
    circ = synthesize_unitary(u, name="fourier")
    counts = circ.gate_counts()
    report = {
        "cnot": counts.get("CNOT", 0),
        "rz": counts.get("RZ", 0),
        "ry": counts.get("RY", 0),
        "reference_cnot": 1025,
        "reference_rz": 2139,
    }
    return circ, report


def fourier_roundtrip(f: np.ndarray) -> np.ndarray:
    """Apply the group Fourier transform and its inverse to a length-24
    vector; the identity up to numerical error (Plancherel)."""
    f = np.asarray(f, dtype=complex)
    if f.shape != (24,):
        raise ValueError("expected a length-24 vector")
    u = build_fourier_unitary()[:24, :24]
    return u.conj().T @ (u @ f)


# --- verification helpers ------------------------------------------------


def verify_inversion(circuit: Circuit | None = None) -> bool:
    c = circuit if circuit is not None else build_inversion()
    u = unitary_of(c, check=False)
    for g in range(24):
        if abs(u[group.INV_TABLE[g], g] - 1.0) > 1e-10:
            return False
    return True


def verify_multiplication(circuit: Circuit | None = None) -> bool:
    c = circuit if circuit is not None else build_multiplication()
    u = unitary_of(c, check=False)
    for g in range(24):
        for h in range(24):
            src = g + 32 * h  # g on low wires 0-4, h on wires 5-9
            dst = g + 32 * int(group.MULT_TABLE[g, h])
            if abs(u[dst, src] - 1.0) > 1e-10:
                return False
    return True


def verify_trace(theta: float, circuit: Circuit | None = None) -> bool:
    c = circuit if circuit is not None else build_trace(theta)
    u = unitary_of(c, check=False)
    diag = np.diag(u)
    if np.abs(u - np.diag(diag)).max() > 1e-10:
        return False
    expected = np.exp(1j * theta * group.RE_TRACE)
    rel = diag[:24] / expected
    return bool(np.abs(rel - rel[0]).max() < 1e-10)
