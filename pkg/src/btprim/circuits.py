"""Gate IR, dense simulation, lowering, synthesis, and routing.

Circuits are immutable sequences of gates over wires of a common dimension
(2 for qubits, N for qudits).  Wire 0 is the least significant digit of
the basis index, so a 5-qubit register in state |q p o n m> has basis
index m + 2n + 4o + 8p + 16q.

Rotation convention follows R_p(theta) = exp(i*theta*p/2), so
RZ(t) = diag(e^{it/2}, e^{-it/2}) and RY(t) = [[cos t/2, sin t/2],
[-sin t/2, cos t/2]].
"""

from __future__ import annotations

import math
from collections import Counter, deque
from dataclasses import dataclass, field, replace

import numpy as np
import scipy.linalg

# kinds taking a single target qubit, optionally with controls
_SINGLE_QUBIT = {"X", "Y", "Z", "H", "S", "T", "RX", "RY", "RZ"}
_ROTATIONS = {"RX", "RY", "RZ"}
# qudit kinds
_QUDIT_GIVENS = {"XL", "RXL", "RYL", "RZL"}  # two-level (a, b) gates


@dataclass(frozen=True)
class Gate:
    """One gate application.

    wires lists targets; controls are (wire, polarity) pairs where
    polarity 1 means control-on-1 (filled circle) and 0 control-on-0
    (open circle).  ``levels`` selects the (a, b) pair for two-level
    qudit gates, ``phases`` carries SNAP phase vectors, ``alpha`` the
    displacement amplitude and ``control_level`` the cSNAP trigger.
    """

    kind: str
    wires: tuple[int, ...]
    controls: tuple[tuple[int, int], ...] = ()
    angle: float | None = None
    levels: tuple[int, int] | None = None
    phases: tuple[float, ...] | None = None
    alpha: complex | None = None
    control_level: int | None = None

    def __post_init__(self):
        touched = [w for w, _ in self.controls] + list(self.wires)
        if len(set(touched)) != len(touched):
            raise ValueError(f"repeated wire in {self.kind} gate: {touched}")
        if self.kind in _ROTATIONS or self.kind in {"RXL", "RYL", "RZL"}:
            if self.angle is None:
                raise ValueError(f"{self.kind} requires an angle")
        elif self.angle is not None:
            raise ValueError(f"{self.kind} takes no angle")

    def all_wires(self) -> tuple[int, ...]:
        return tuple(w for w, _ in self.controls) + self.wires


def gate(kind, *wires, **kw) -> Gate:
    return Gate(kind, tuple(wires), **kw)


def cnot(control: int, target: int) -> Gate:
    return Gate("X", (target,), controls=((control, 1),))


def toffoli(c1: int, c2: int, target: int) -> Gate:
    return Gate("X", (target,), controls=((c1, 1), (c2, 1)))


def cnnot(controls, target: int, polarities=None) -> Gate:
    pols = polarities if polarities is not None else [1] * len(controls)
    return Gate("X", (target,), controls=tuple(zip(controls, pols)))


def swap(a: int, b: int) -> Gate:
    return Gate("SWAP", (a, b))


def cswap(control: int, a: int, b: int) -> Gate:
    return Gate("SWAP", (a, b), controls=((control, 1),))


def cchi(control: int, p_wire: int, q_wire: int, inverse=False) -> Gate:
    """Controlled cyclic shift of the l-exponent held in wires (p, q).

    chi maps the exponent e = p + 2q to e + 1 mod 3 on the valid patterns
    (and fixes p = q = 1); cchi applies it under one control.
    """
    return Gate("CCHI_INV" if inverse else "CCHI", (p_wire, q_wire),
                controls=((control, 1),))


@dataclass(frozen=True)
class Circuit:
    num_wires: int
    gates: tuple[Gate, ...] = ()
    dim: int = 2
    name: str = ""

    def __post_init__(self):
        for g in self.gates:
            if any(w >= self.num_wires or w < 0 for w in g.all_wires()):
                raise ValueError(f"gate {g.kind} exceeds wire count {self.num_wires}")

    def __len__(self):
        return len(self.gates)

    def then(self, *gates: Gate) -> "Circuit":
        return replace(self, gates=self.gates + tuple(gates))

    def concat(self, other: "Circuit") -> "Circuit":
        if other.num_wires != self.num_wires or other.dim != self.dim:
            raise ValueError("circuit dimensions differ")
        return replace(self, gates=self.gates + other.gates)

    def inverse(self) -> "Circuit":
        return replace(self, gates=tuple(_inverse_gate(g) for g in reversed(self.gates)),
                       name=self.name + "_inv" if self.name else "")

    @property
    def total_dim(self) -> int:
        return self.dim ** self.num_wires

    def gate_counts(self) -> Counter:
        out = Counter()
        for g in self.gates:
            out[gate_label(g)] += 1
        return out


def gate_label(g: Gate) -> str:
    """Human label used in count reports (CNOT, Toffoli, C3NOT, ...)."""
    nctrl = len(g.controls)
    if g.kind == "X" and nctrl == 1:
        return "CNOT"
    if g.kind == "X" and nctrl == 2:
        return "Toffoli"
    if g.kind == "X" and nctrl > 2:
        return f"C{nctrl}NOT"
    if g.kind == "SWAP" and nctrl == 1:
        return "CSWAP"
    if nctrl:
        return "C" * nctrl + g.kind
    return g.kind


def _inverse_gate(g: Gate) -> Gate:
    if g.kind in {"X", "Y", "Z", "H", "SWAP", "XL"}:
        return g
    if g.kind in _ROTATIONS or g.kind in {"RXL", "RYL", "RZL"}:
        return replace(g, angle=-g.angle)
    if g.kind == "S":
        return replace(g, kind="SDG")
    if g.kind == "SDG":
        return replace(g, kind="S")
    if g.kind == "T":
        return replace(g, kind="TDG")
    if g.kind == "TDG":
        return replace(g, kind="T")
    if g.kind == "CCHI":
        return replace(g, kind="CCHI_INV")
    if g.kind == "CCHI_INV":
        return replace(g, kind="CCHI")
    if g.kind == "SNAP":
        return replace(g, phases=tuple(-p for p in g.phases))
    if g.kind == "CSNAP":
        return replace(g, phases=tuple(-p for p in g.phases))
    if g.kind == "DISP":
        return replace(g, alpha=-g.alpha)
    raise ValueError(f"cannot invert gate kind {g.kind}")


# --- dense simulation ----------------------------------------------------

_SQ = 1 / math.sqrt(2)
_FIXED_1Q = {
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
    "H": np.array([[_SQ, _SQ], [_SQ, -_SQ]], dtype=complex),
    "S": np.array([[1, 0], [0, 1j]], dtype=complex),
    "SDG": np.array([[1, 0], [0, -1j]], dtype=complex),
    "T": np.array([[1, 0], [0, np.exp(1j * np.pi / 4)]], dtype=complex),
    "TDG": np.array([[1, 0], [0, np.exp(-1j * np.pi / 4)]], dtype=complex),
}


def rotation_matrix(axis: str, theta: float) -> np.ndarray:
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    if axis == "X":
        return np.array([[c, 1j * s], [1j * s, c]])
    if axis == "Y":
        return np.array([[c, s], [-s, c]])
    return np.array([[np.exp(1j * theta / 2), 0], [0, np.exp(-1j * theta / 2)]])


def _matrix_1q(g: Gate) -> np.ndarray:
    if g.kind in _FIXED_1Q:
        return _FIXED_1Q[g.kind]
    return rotation_matrix(g.kind[1], g.angle)


def displacement_matrix(alpha: complex, dim: int) -> np.ndarray:
    """exp(alpha a^dag - alpha* a) on a dim-level truncated Fock space."""
    n = np.arange(1, dim)
    adag = np.diag(np.sqrt(n), -1).astype(complex)
    gen = alpha * adag - np.conj(alpha) * adag.T
    return scipy.linalg.expm(gen)


def _qudit_1q_matrix(g: Gate, dim: int) -> np.ndarray:
    if g.kind == "SNAP":
        ph = np.zeros(dim)
        ph[: len(g.phases)] = g.phases
        return np.diag(np.exp(1j * ph))
    if g.kind == "DISP":
        return displacement_matrix(g.alpha, dim)
    a, b = g.levels
    if not 0 <= a < b < dim:
        raise ValueError(f"bad level pair {g.levels} for dimension {dim}")
    mat = np.eye(dim, dtype=complex)
    if g.kind == "XL":
        blk = _FIXED_1Q["X"]
    else:
        blk = rotation_matrix(g.kind[1], g.angle)
    mat[np.ix_([a, b], [a, b])] = blk
    return mat


def _control_selector(sel, controls, n):
    for w, pol in controls:
        sel[n - 1 - w] = pol


def _apply_qubit_gate(psi: np.ndarray, g: Gate, n: int) -> np.ndarray:
    """psi has shape [2]*n (wire 0 = last axis) possibly + batch axes."""
    if g.kind in {"CCHI", "CCHI_INV"}:
        for sub in _expand_cchi(g):
            psi = _apply_qubit_gate(psi, sub, n)
        return psi
    extra = psi.ndim - n
    if g.kind == "SWAP":
        a, b = g.wires
        sel = [slice(None)] * (n + extra)
        _control_selector(sel, g.controls, n)
        s01, s10 = list(sel), list(sel)
        s01[n - 1 - a], s01[n - 1 - b] = 0, 1
        s10[n - 1 - a], s10[n - 1 - b] = 1, 0
        tmp = psi[tuple(s01)].copy()
        psi[tuple(s01)] = psi[tuple(s10)]
        psi[tuple(s10)] = tmp
        return psi
    (t,) = g.wires
    u = _matrix_1q(g)
    sel = [slice(None)] * (n + extra)
    _control_selector(sel, g.controls, n)
    s0, s1 = list(sel), list(sel)
    s0[n - 1 - t], s1[n - 1 - t] = 0, 1
    a = psi[tuple(s0)].copy()
    b = psi[tuple(s1)].copy()
    psi[tuple(s0)] = u[0, 0] * a + u[0, 1] * b
    psi[tuple(s1)] = u[1, 0] * a + u[1, 1] * b
    return psi


def _expand_cchi(g: Gate) -> list[Gate]:
    (c, _) = g.controls[0]
    p, q = g.wires
    fwd = [cswap(c, p, q), toffoli(c, q, p), cnot(c, p)]
    if g.kind == "CCHI":
        return fwd
    return [cnot(c, p), toffoli(c, q, p), cswap(c, p, q)]


def _apply_qudit_gate(psi: np.ndarray, g: Gate, n: int, dim: int) -> np.ndarray:
    extra = psi.ndim - n
    if g.kind == "CSNAP":
        ctrl, tgt = g.wires
        ph = np.zeros(dim)
        ph[: len(g.phases)] = g.phases
        sel = [slice(None)] * (n + extra)
        sel[n - 1 - ctrl] = g.control_level
        sub = psi[tuple(sel)]
        shape = [1] * sub.ndim
        shape[n - 2 - tgt if tgt < ctrl else n - 1 - tgt] = dim
        psi[tuple(sel)] = sub * np.exp(1j * ph).reshape(shape)
        return psi
    (t,) = g.wires
    u = _qudit_1q_matrix(g, dim)
    axis = n - 1 - t
    moved = np.moveaxis(psi, axis, 0)
    moved[...] = np.tensordot(u, moved, axes=([1], [0]))
    return psi


def apply(circuit: Circuit, state: np.ndarray, check_norm: bool = True) -> np.ndarray:
    """Apply the circuit gate by gate to a state vector (or batch)."""
    total = circuit.total_dim
    state = np.asarray(state, dtype=complex)
    if state.shape[0] != total:
        raise ValueError(f"state length {state.shape[0]} != dimension {total}")
    if check_norm and state.ndim == 1:
        if abs(np.linalg.norm(state) - 1.0) > 1e-10:
            raise ValueError("state is not normalized")
    batch = state.shape[1:]
    psi = state.reshape([circuit.dim] * circuit.num_wires + list(batch)).copy()
    for g in circuit.gates:
        if circuit.dim == 2:
            psi = _apply_qubit_gate(psi, g, circuit.num_wires)
        else:
            psi = _apply_qudit_gate(psi, g, circuit.num_wires, circuit.dim)
    return psi.reshape((total,) + batch)


@dataclass(frozen=True)
class Unitary:
    """Dense unitary with a construction-time unitarity check."""

    matrix: np.ndarray

    def __post_init__(self):
        mat = np.asarray(self.matrix, dtype=complex)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise ValueError("matrix must be square")
        dev = np.abs(mat.conj().T @ mat - np.eye(mat.shape[0])).max()
        if dev > 1e-10:
            raise ValueError(f"matrix is not unitary: deviation {dev:.2e}")
        object.__setattr__(self, "matrix", mat)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


def unitary_of(circuit: Circuit, check: bool = True) -> np.ndarray:
    """Dense matrix of the circuit (product in application order)."""
    total = circuit.total_dim
    if total > 4096:
        raise ValueError(f"dimension {total} too large for dense simulation")
    mat = apply(circuit, np.eye(total, dtype=complex), check_norm=False)
    if check:
        Unitary(mat)
    return mat


def phase_distance(u: np.ndarray, v: np.ndarray) -> float:
    """Max-entry distance between u and v after removing a global phase."""
    inner = np.trace(u.conj().T @ v)
    if abs(inner) < 1e-12:
        return float(np.abs(u - v).max())
    phase = inner / abs(inner)
    return float(np.abs(u * phase - v).max())


# --- Clifford+T lowering -------------------------------------------------

T_PER_RZ_COEFF = 1.15  # repeat-until-success T cost per Rz, times log2(1/eps)


@dataclass(frozen=True)
class GateCountReport:
    counts: dict
    t_count: float
    ancillas: int
    epsilon: float

    def merged(self, other: "GateCountReport") -> "GateCountReport":
        counts = Counter(self.counts)
        counts.update(other.counts)
        return GateCountReport(dict(counts), self.t_count + other.t_count,
                               max(self.ancillas, other.ancillas), self.epsilon)


def _polarity_wrap(g: Gate) -> tuple[list[Gate], Gate, list[Gate]]:
    """X-conjugation turning open controls into filled ones."""
    pre = [Gate("X", (w,)) for w, pol in g.controls if pol == 0]
    closed = replace(g, controls=tuple((w, 1) for w, _ in g.controls))
    return pre, closed, list(reversed(pre))


def lower_to_clifford_t(circuit: Circuit, epsilon: float = 1e-8):
    """Lower to {1q Cliffords, T, Rx/Ry/Rz, CNOT} plus a count report.

    Multi-controlled NOTs are reduced with a clean-ancilla Toffoli ladder
    (k - 2 ancillas for k controls); Toffoli and CSWAP keep their Table
    T cost of 7; rotations are counted at 1.15 log2(1/eps) T each, not
    expanded into explicit T sequences.
    """
    if circuit.dim != 2:
        raise ValueError("lowering applies to qubit circuits")
    out: list[Gate] = []
    max_anc = 0
    next_anc = circuit.num_wires

    def lower_gate(g: Gate, anc_base: int) -> int:
        nonlocal out
        used = 0
        if g.kind in {"CCHI", "CCHI_INV"}:
            for sub in _expand_cchi(g):
                used = max(used, lower_gate(sub, anc_base))
            return used
        pre, g, post = _polarity_wrap(g)
        out += pre
        nctrl = len(g.controls)
        if g.kind == "SWAP" and nctrl == 0:
            a, b = g.wires
            out += [cnot(a, b), cnot(b, a), cnot(a, b)]
        elif g.kind == "SWAP" and nctrl == 1:
            (c, _), (a, b) = g.controls[0], g.wires
            out += [cnot(b, a), toffoli(c, a, b), cnot(b, a)]
        elif g.kind == "SWAP":
            raise ValueError("SWAP with more than one control is unsupported")
        elif g.kind == "X" and nctrl > 2:
            ctrls = [w for w, _ in g.controls]
            (t,) = g.wires
            k = len(ctrls)
            ancs = [anc_base + i for i in range(k - 2)]
            used = k - 2
            ladder = [toffoli(ctrls[0], ctrls[1], ancs[0])]
            for i in range(k - 3):
                ladder.append(toffoli(ctrls[i + 2], ancs[i], ancs[i + 1]))
            out += ladder
            out.append(toffoli(ctrls[-1], ancs[-1], t))
            out += [g_ for g_ in reversed(ladder)]
        else:
            out.append(g)
        out += post
        return used

    for g in circuit.gates:
        max_anc = max(max_anc, lower_gate(g, next_anc))

    lowered = Circuit(circuit.num_wires + max_anc, tuple(out), dim=2,
                      name=circuit.name + "_lowered" if circuit.name else "")
    counts = lowered.gate_counts()
    log_eps = math.log2(1.0 / epsilon) if epsilon < 1 else 0.0
    t_count = counts.get("T", 0) + counts.get("TDG", 0)
    t_count += 7 * counts.get("Toffoli", 0)
    rot = sum(v for k, v in counts.items() if k in _ROTATIONS)
    t_count += T_PER_RZ_COEFF * log_eps * rot
    report = GateCountReport(dict(counts), t_count, max_anc, epsilon)
    return lowered, report


# --- multiplexed rotations and quantum Shannon decomposition ------------


def _gray(i: int) -> int:
    return i ^ (i >> 1)


def multiplexed_rotation(axis: str, angles, target: int, controls) -> list[Gate]:
    """Uniformly controlled rotation: angle[j] for control basis state j.

    Bit k of j is the value of wire controls[k].  Decomposes into 2^k
    rotations interleaved with 2^k CNOTs via the Gray-code construction.
    """
    controls = list(controls)
    k = len(controls)
    angles = np.asarray(angles, dtype=float)
    if angles.shape != (2**k,):
        raise ValueError("need one angle per control pattern")
    if k == 0:
        return [Gate("R" + axis, (target,), angle=float(angles[0]))]
    m = np.empty((2**k, 2**k))
    for j in range(2**k):
        for i in range(2**k):
            m[j, i] = (-1) ** bin(j & _gray(i)).count("1")
    a = m.T @ angles / 2**k
    gates = []
    for i in range(2**k):
        gates.append(Gate("R" + axis, (target,), angle=float(a[i])))
        flip = _gray(i) ^ _gray((i + 1) % 2**k)
        ctrl_bit = flip.bit_length() - 1
        gates.append(cnot(controls[ctrl_bit], target))
    return gates


def state_prep_circuit(amplitudes) -> Circuit:
    """Circuit mapping |0...0> to a state with the given nonnegative real
    amplitudes, as a tree of multiplexed Ry rotations (one per wire,
    controlled on the wires above it)."""
    amps = np.asarray(amplitudes, dtype=float)
    n = int(round(math.log2(len(amps))))
    if 2**n != len(amps):
        raise ValueError("amplitude count must be a power of two")
    if np.any(amps < 0) or abs(np.linalg.norm(amps) - 1) > 1e-10:
        raise ValueError("amplitudes must be nonnegative and normalized")
    gates: list[Gate] = []
    # norms[j] = norm of the branch with high-wire bits j
    norms = amps.copy()
    levels = []
    for wire in range(n):  # fold out wire 0 first, ending at the MSB
        paired = norms.reshape(-1, 2)
        parent = np.linalg.norm(paired, axis=1)
        angles = np.where(
            parent > 1e-14,
            -2.0 * np.arctan2(paired[:, 1], np.maximum(paired[:, 0], 0.0)),
            0.0,
        )
        levels.append((wire, angles))
        norms = parent
    for wire, angles in reversed(levels):
        controls = list(range(wire + 1, n))
        gates += multiplexed_rotation("Y", angles, wire, controls)
    return Circuit(n, tuple(gates), name="state_prep")


def _zyz_gates(u: np.ndarray, wire: int) -> list[Gate]:
    det = np.linalg.det(u)
    su = u * np.exp(-0.5j * np.angle(det))
    a, b = su[0, 0], su[0, 1]
    gamma = 2 * math.atan2(abs(b), abs(a))
    # su = Rz(beta) Ry(gamma) Rz(delta) with a = cos(g/2) e^{i(b+d)/2},
    # b = sin(g/2) e^{i(b-d)/2}; phases of zero entries are arbitrary.
    ph_a = 2 * np.angle(a) if abs(a) > 1e-12 else 0.0
    ph_b = 2 * np.angle(b) if abs(b) > 1e-12 else 0.0
    beta = (ph_a + ph_b) / 2
    delta = (ph_a - ph_b) / 2
    gates = []
    if abs(delta) > 1e-12:
        gates.append(Gate("RZ", (wire,), angle=float(delta)))
    if abs(gamma) > 1e-12:
        gates.append(Gate("RY", (wire,), angle=float(gamma)))
    if abs(beta) > 1e-12:
        gates.append(Gate("RZ", (wire,), angle=float(beta)))
    return gates


def _demultiplex(a: np.ndarray, b: np.ndarray, wires) -> list[Gate]:
    """Gates for the block-diagonal a (msb=0) (+) b (msb=1) on wires."""
    msb, lower = wires[-1], wires[:-1]
    x = a @ b.conj().T
    t, z = scipy.linalg.schur(x, output="complex")
    d2 = np.diag(t)
    d = np.exp(0.5j * np.angle(d2))
    v = z
    w = (np.conj(d)[:, None] * v.conj().T) @ a
    angles = 2 * np.angle(d)
    gates = _qsd(w, lower)
    gates += multiplexed_rotation("Z", angles, msb, lower)
    gates += _qsd(v, lower)
    return gates


def _qsd(u: np.ndarray, wires) -> list[Gate]:
    dim = u.shape[0]
    if phase_distance(u, np.eye(dim)) < 1e-12:
        return []
    if len(wires) == 1:
        return _zyz_gates(u, wires[0])
    half = dim // 2
    (u1, u2), theta, (v1h, v2h) = scipy.linalg.cossin(
        u, p=half, q=half, separate=True
    )
    gates = _demultiplex(v1h, v2h, wires)
    ry_angles = -2 * np.asarray(theta)
    gates += multiplexed_rotation("Y", ry_angles, wires[-1], wires[:-1])
    gates += _demultiplex(u1, u2, wires)
    return gates


def synthesize_unitary(u: np.ndarray, name: str = "synth") -> Circuit:
    """Decompose a 2^n-dim unitary into {CNOT, RY, RZ} via recursive
    cosine-sine (quantum Shannon) decomposition; exact up to global phase.
    """
    u = np.asarray(u, dtype=complex)
    Unitary(u)
    n = int(round(math.log2(u.shape[0])))
    if 2**n != u.shape[0] or n > 6:
        raise ValueError("dimension must be 2^n with n <= 6")
    gates = _qsd(u, list(range(n)))
    return Circuit(n, tuple(gates), dim=2, name=name)


# --- routing -------------------------------------------------------------


@dataclass(frozen=True)
class CouplingGraph:
    num_vertices: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        norm = tuple(sorted(set(tuple(sorted(e)) for e in self.edges)))
        object.__setattr__(self, "edges", norm)
        if len(self._components()) != 1:
            raise ValueError("coupling graph must be connected")

    def neighbors(self, v: int) -> list[int]:
        out = []
        for a, b in self.edges:
            if a == v:
                out.append(b)
            elif b == v:
                out.append(a)
        return out

    def _components(self):
        seen, comps = set(), []
        for start in range(self.num_vertices):
            if start in seen:
                continue
            comp, queue = {start}, deque([start])
            while queue:
                v = queue.popleft()
                for w in self.neighbors(v):
                    if w not in comp:
                        comp.add(w)
                        queue.append(w)
            seen |= comp
            comps.append(comp)
        return comps

    def has_edge(self, a: int, b: int) -> bool:
        return tuple(sorted((a, b))) in self.edges

    def shortest_path(self, a: int, b: int) -> list[int]:
        prev = {a: None}
        queue = deque([a])
        while queue:
            v = queue.popleft()
            if v == b:
                break
            for w in self.neighbors(v):
                if w not in prev:
                    prev[w] = v
                    queue.append(w)
        path, v = [], b
        while v is not None:
            path.append(v)
            v = prev[v]
        return path[::-1]


# ibm_nairobi-like heavy-hex fragment; default device for routing.
NAIROBI = CouplingGraph(7, ((0, 1), (1, 2), (1, 3), (3, 5), (4, 5), (5, 6)))


@dataclass(frozen=True)
class RoutedCircuit:
    circuit: Circuit
    initial_map: tuple[int, ...]  # logical wire -> physical vertex
    final_map: tuple[int, ...]


def route(circuit: Circuit, graph: CouplingGraph, placement) -> RoutedCircuit:
    """Greedy SWAP insertion along shortest paths.

    ``placement`` maps logical wires to vertices (injective).  SWAPs move
    qubits permanently (relabel policy); the final map records where each
    logical wire ended up.
    """
    if circuit.dim != 2:
        raise ValueError("routing applies to qubit circuits")
    nv = graph.num_vertices
    if circuit.num_wires > nv:
        raise ValueError("graph too small for circuit")
    log2phys = list(placement[w] for w in range(circuit.num_wires))
    if len(set(log2phys)) != len(log2phys):
        raise ValueError("placement must be injective")
    # extend with idle logical wires so maps are full permutations
    idle = [v for v in range(nv) if v not in log2phys]
    log2phys += idle
    initial = tuple(log2phys)
    out: list[Gate] = []

    def remap(g: Gate) -> Gate:
        return replace(
            g,
            wires=tuple(log2phys[w] for w in g.wires),
            controls=tuple((log2phys[w], pol) for w, pol in g.controls),
        )

    for g in circuit.gates:
        touched = g.all_wires()
        if len(touched) == 1:
            out.append(remap(g))
            continue
        if len(touched) > 2:
            raise ValueError("lower the circuit to 1- and 2-qubit gates first")
        a, b = (log2phys[w] for w in touched)
        while not graph.has_edge(a, b):
            path = graph.shortest_path(a, b)
            u, v = path[0], path[1]
            out.append(swap(u, v))
            iu, iv = log2phys.index(u), log2phys.index(v)
            log2phys[iu], log2phys[iv] = v, u
            a, b = (log2phys[w] for w in touched)
        out.append(remap(g))
    routed = Circuit(nv, tuple(out), dim=2,
                     name=circuit.name + "_routed" if circuit.name else "")
    return RoutedCircuit(routed, initial, tuple(log2phys))


def best_placement(circuit: Circuit, graph: CouplingGraph) -> dict:
    """Brute-force initial placement minimizing routed CNOT count."""
    import itertools

    best, best_cost = None, None
    for perm in itertools.permutations(range(graph.num_vertices),
                                       circuit.num_wires):
        placement = {w: perm[w] for w in range(circuit.num_wires)}
        routed = route(circuit, graph, placement)
        cost = cnot_count(routed.circuit)
        if best_cost is None or cost < best_cost:
            best, best_cost = placement, cost
    return best


def placement_matrix(mapping, nv: int) -> np.ndarray:
    """Permutation sending the logical basis to the placed physical basis."""
    mat = np.zeros((2**nv, 2**nv))
    for x in range(2**nv):
        y = 0
        for l in range(nv):
            if (x >> l) & 1:
                y |= 1 << mapping[l]
        mat[y, x] = 1.0
    return mat


def embed_on_wires(circuit: Circuit, num_wires: int) -> Circuit:
    """Same gates, more (idle) wires."""
    if num_wires < circuit.num_wires:
        raise ValueError("cannot shrink a circuit")
    return replace(circuit, num_wires=num_wires)


def routing_equivalent(original: Circuit, routed: RoutedCircuit,
                       tol: float = 1e-10) -> bool:
    """Check U_routed P_init = P_final U_original (exact wire accounting)."""
    nv = routed.circuit.num_wires
    u_orig = unitary_of(embed_on_wires(original, nv), check=False)
    u_rout = unitary_of(routed.circuit, check=False)
    p_i = placement_matrix(routed.initial_map, nv)
    p_f = placement_matrix(routed.final_map, nv)
    return bool(np.abs(u_rout @ p_i - p_f @ u_orig).max() < tol)


def _toffoli_expansion(g: Gate) -> list[Gate]:
    (a, _), (b, _) = g.controls
    (t,) = g.wires
    return [
        Gate("H", (t,)), cnot(b, t), Gate("TDG", (t,)), cnot(a, t),
        Gate("T", (t,)), cnot(b, t), Gate("TDG", (t,)), cnot(a, t),
        Gate("T", (b,)), Gate("T", (t,)), Gate("H", (t,)),
        cnot(a, b), Gate("T", (a,)), Gate("TDG", (b,)), cnot(a, b),
    ]


def expand_to_two_qubit(circuit: Circuit, epsilon: float = 1e-8) -> Circuit:
    """Rewrite into 1- and 2-qubit gates only (Toffoli -> 6 CNOT + 7 T,
    CSWAP -> 8 CNOT); prerequisite for routing and CNOT counting."""
    lowered, _ = lower_to_clifford_t(circuit, epsilon)
    out: list[Gate] = []
    for g in lowered.gates:
        if gate_label(g) == "Toffoli":
            out += _toffoli_expansion(g)
        elif g.kind == "SWAP" and not g.controls:
            a, b = g.wires
            out += [cnot(a, b), cnot(b, a), cnot(a, b)]
        else:
            out.append(g)
    return replace(lowered, gates=tuple(out))


def cnot_count(circuit: Circuit) -> int:
    """Two-qubit cost in CNOT units (Toffoli = 6, CSWAP = 8, SWAP = 3)."""
    counts = expand_to_two_qubit(circuit).gate_counts()
    return counts.get("CNOT", 0) + 3 * counts.get("SWAP", 0)


# --- circuit text format -------------------------------------------------


def circuit_to_text(circuit: Circuit) -> str:
    lines = [f"# wires {circuit.num_wires} dim {circuit.dim} name {circuit.name}"]
    for g in circuit.gates:
        parts = [g.kind, ",".join(str(w) for w in g.all_wires())]
        if g.angle is not None:
            parts.append(f"@{g.angle!r}")
        if g.levels is not None:
            parts.append(f"levels {g.levels[0]},{g.levels[1]}")
        if g.phases is not None:
            parts.append("phases " + ",".join(repr(p) for p in g.phases))
        if g.alpha is not None:
            parts.append(f"alpha {g.alpha.real!r},{g.alpha.imag!r}")
        if g.control_level is not None:
            parts.append(f"clevel {g.control_level}")
        if g.controls:
            parts.append("pol " + "".join(str(p) for _, p in g.controls))
        lines.append(" ".join(parts))
    return "\n".join(lines) + "\n"


def circuit_from_text(text: str) -> Circuit:
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
    header = lines[0].split()
    num_wires, dim = int(header[2]), int(header[4])
    name = header[6] if len(header) > 6 else ""
    gates = []
    for ln in lines[1:]:
        toks = ln.split()
        kind = toks[0]
        wires = tuple(int(w) for w in toks[1].split(","))
        kw = {}
        pol = None
        i = 2
        while i < len(toks):
            tok = toks[i]
            if tok.startswith("@"):
                kw["angle"] = float(tok[1:])
                i += 1
            elif tok == "levels":
                a, b = toks[i + 1].split(",")
                kw["levels"] = (int(a), int(b))
                i += 2
            elif tok == "phases":
                kw["phases"] = tuple(float(x) for x in toks[i + 1].split(","))
                i += 2
            elif tok == "alpha":
                re_, im_ = toks[i + 1].split(",")
                kw["alpha"] = complex(float(re_), float(im_))
                i += 2
            elif tok == "clevel":
                kw["control_level"] = int(toks[i + 1])
                i += 2
            elif tok == "pol":
                pol = toks[i + 1]
                i += 2
            else:
                raise ValueError(f"bad token {tok!r} in line {ln!r}")
        if pol:
            nctrl = len(pol)
            controls = tuple((wires[k], int(pol[k])) for k in range(nctrl))
            gates.append(Gate(kind, wires[nctrl:], controls=controls, **kw))
        else:
            gates.append(Gate(kind, wires, **kw))
    return Circuit(num_wires, tuple(gates), dim=dim, name=name)
