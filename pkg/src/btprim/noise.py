"""Pauli twirling and stochastic-noise process-fidelity simulation.

The protocol: prepare a basis state |g> (X gates) or the uniform
superposition |GI> over the 24 valid states, run a primitive circuit,
undo it exactly, measure; any non-zero outcome signals an error.  Noise
is a two-qubit Pauli channel attached to every CNOT, sampled per shot.
Twirling wraps each CNOT in one of the 16 Pauli dressings that leave the
bare circuit's unitary unchanged up to global phase.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from . import group, qubit_gates
from .circuits import (
    NAIROBI,
    Circuit,
    Gate,
    cnot,
    expand_to_two_qubit,
    gate_label,
    phase_distance,
    route,
    unitary_of,
)

_PAULIS = "IXYZ"
_PAULI_MATS = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def _conjugation_table() -> dict:
    """For each pre-CNOT Pauli pair (on control, target), the post-CNOT
    pair that restores the bare CNOT up to global phase."""
    cx = unitary_of(Circuit(2, (cnot(0, 1),)), check=False)
    table = {}
    for pc in _PAULIS:
        for pt in _PAULIS:
            pre = np.kron(_PAULI_MATS[pt], _PAULI_MATS[pc])  # wire0 = control
            conj = cx @ pre @ cx.conj().T
            for qc in _PAULIS:
                for qt in _PAULIS:
                    cand = np.kron(_PAULI_MATS[qt], _PAULI_MATS[qc])
                    if phase_distance(conj, cand) < 1e-12:
                        table[(pc, pt)] = (qc, qt)
    return table


CNOT_PAULI_PUSH = _conjugation_table()


@dataclass(frozen=True)
class NoiseModel:
    """Per-CNOT two-qubit Pauli error channel.

    ``pauli_probs`` maps two-letter labels (control, target) to
    probabilities; the implicit II weight is 1 - sum.
    """

    pauli_probs: dict

    def __post_init__(self):
        total = 0.0
        for label, p in self.pauli_probs.items():
            if label == "II" or len(label) != 2 or p < 0:
                raise ValueError(f"bad channel entry {label}: {p}")
            total += p
        if total > 1.0 + 1e-12:
            raise ValueError("error probabilities exceed 1")
        object.__setattr__(self, "pauli_probs", dict(self.pauli_probs))

    @property
    def error_rate(self) -> float:
        return float(sum(self.pauli_probs.values()))

    @staticmethod
    def depolarizing(p: float) -> "NoiseModel":
        labels = [a + b for a in _PAULIS for b in _PAULIS if a + b != "II"]
        return NoiseModel({lab: p / 15.0 for lab in labels})

    def sample(self, rng: np.random.Generator):
        """Sampled error label per call: None (no error) or a pair."""
        u = rng.random()
        acc = 0.0
        for lab, p in self.pauli_probs.items():
            acc += p
            if u < acc:
                return lab
        return None


@dataclass(frozen=True)
class FidelityResult:
    state_label: str
    primitive: str
    shots: int
    twirls: int
    fidelity: float
    error_bar: float


def pauli_twirl(circuit: Circuit, seed: int) -> Circuit:
    """Wrap every CNOT in a random Pauli dressing that cancels through
    the gate; the noiseless unitary is unchanged up to global phase."""
    rng = np.random.default_rng(seed)
    out = []
    for g in circuit.gates:
        if gate_label(g) != "CNOT":
            out.append(g)
            continue
        (c, _), (t,) = g.controls[0], g.wires
        pc, pt = rng.choice(list(_PAULIS)), rng.choice(list(_PAULIS))
        qc, qt = CNOT_PAULI_PUSH[(pc, pt)]
        for wire, p in ((c, pc), (t, pt)):
            if p != "I":
                out.append(Gate(p, (wire,)))
        out.append(g)
        for wire, p in ((c, qc), (t, qt)):
            if p != "I":
                out.append(Gate(p, (wire,)))
    return replace(circuit, gates=tuple(out),
                   name=circuit.name + "_twirled" if circuit.name else "")


# --- trajectory simulation ----------------------------------------------


class _TrajectorySim:
    """Prefix states for fast per-shot Pauli-error injection.

    Stores the ideal state right after each CNOT plus the remaining gate
    list from that point on; a shot with errors only re-simulates from
    the first error onward, applying gates to the state vector directly.
    """

    def __init__(self, circuit: Circuit, psi0: np.ndarray):
        from .circuits import apply as _apply

        self._apply = _apply
        self.num_wires = circuit.num_wires
        self.cnot_sites = []  # (control, target) per CNOT
        self.after_cnot_states = []  # ideal state after CNOT k
        self.tail_gates = []  # gates after CNOT k (up to next CNOT etc.)
        positions = []
        for i, g in enumerate(circuit.gates):
            if gate_label(g) == "CNOT":
                self.cnot_sites.append((g.controls[0][0], g.wires[0]))
                positions.append(i)
        psi = psi0
        prev = 0
        for pos in positions:
            psi = _apply(
                Circuit(self.num_wires, circuit.gates[prev: pos + 1]),
                psi, check_norm=False,
            )
            self.after_cnot_states.append(psi)
            prev = pos + 1
        self.final = _apply(
            Circuit(self.num_wires, circuit.gates[prev:]), psi,
            check_norm=False,
        ) if positions else _apply(circuit, psi0, check_norm=False)
        # gates strictly after CNOT k
        self.gates = circuit.gates
        self.positions = positions

    def final_state(self, errors: dict) -> np.ndarray:
        """errors: CNOT index -> two-letter Pauli label (after the CNOT)."""
        if not errors:
            return self.final
        first = min(errors)
        psi = self.after_cnot_states[first]
        rest = []
        c, t = self.cnot_sites[first]
        for p, w in zip(errors[first], (c, t)):
            if p != "I":
                rest.append(Gate(p, (w,)))
        for k in range(first + 1, len(self.positions) + 1):
            lo = self.positions[k - 1] + 1
            hi = self.positions[k] + 1 if k < len(self.positions) else None
            rest.extend(self.gates[lo:hi])
            if k < len(self.positions) and k in errors:
                c, t = self.cnot_sites[k]
                for p, w in zip(errors[k], (c, t)):
                    if p != "I":
                        rest.append(Gate(p, (w,)))
        return self._apply(
            Circuit(self.num_wires, tuple(rest)), psi, check_norm=False
        )


def _ground_state(num_wires: int) -> np.ndarray:
    psi = np.zeros(2**num_wires, dtype=complex)
    psi[0] = 1.0
    return psi


def _basis_prep(g: int) -> Circuit:
    gates = tuple(Gate("X", (w,)) for w in range(5) if (g >> w) & 1)
    return Circuit(5, gates, name=f"prep_{g}")


def _gi_prep() -> Circuit:
    """Exact amplitude preparation of the uniform superposition over the
    24 valid basis states (multiplexed-Ry tree, ~30 CNOTs)."""
    from .circuits import state_prep_circuit

    amps = np.zeros(32)
    amps[:24] = 1.0 / math.sqrt(24)
    return state_prep_circuit(amps)


@dataclass(frozen=True)
class _PreparedExperiment:
    circuit: Circuit  # prep + primitive + un-compute, routed form
    data_vertices: tuple[int, ...]  # physical wires carrying the register


# initial placements on the 7-vertex graph, found by exhaustive search
# over injections minimizing the routed CNOT count (see best_placement)
PLACEMENTS = {
    "trace": {0: 1, 1: 0, 2: 2, 3: 3, 4: 5},
    "inversion": {0: 1, 1: 3, 2: 0, 3: 2, 4: 5},
}

_PRIMITIVES = ("inversion", "trace")


def _primitive_circuit(primitive: str, theta: float) -> Circuit:
    if primitive == "inversion":
        return qubit_gates.build_inversion()
    if primitive == "trace":
        return qubit_gates.build_trace(theta)
    raise ValueError(f"unknown primitive {primitive!r}")


def build_experiment(primitive: str, state: str, theta: float = 0.7,
                     routed: bool = True) -> _PreparedExperiment:
    """Prep + primitive + exact inverse, optionally routed on the
    7-vertex device graph."""
    prim = _primitive_circuit(primitive, theta)
    if state == "GI":
        prep = _gi_prep()
        # the primitive permutes/phases the valid states, so the uniform
        # superposition returns to itself up to phases; un-compute with
        # the primitive's inverse followed by the prep's inverse
        full = prep.concat(prim).concat(prim.inverse()).concat(prep.inverse())
    elif state.startswith("g"):
        g = int(state[1:])
        if not 0 <= g < 24:
            raise ValueError("basis state out of range")
        prep = _basis_prep(g)
        if primitive == "inversion":
            unprep = _basis_prep(int(group.INV_TABLE[g]))
        else:
            unprep = prep  # diagonal primitive: same basis state back
        full = prep.concat(prim).concat(unprep)
    else:
        raise ValueError(f"unknown state label {state!r}")
    flat = expand_to_two_qubit(full)
    if not routed:
        return _PreparedExperiment(flat, tuple(range(5)))
    placement = PLACEMENTS.get(primitive, {w: w for w in range(5)})
    routedc = route(flat, NAIROBI, placement)
    final = expand_to_two_qubit(routedc.circuit)
    return _PreparedExperiment(final,
                               tuple(routedc.final_map[w] for w in range(5)))


def _outcome_probabilities(psi: np.ndarray, data: tuple, num_wires: int):
    """Marginal probability of all-zeros on the data wires."""
    probs = np.abs(psi) ** 2
    idx = np.arange(len(probs))
    mask = np.zeros(len(probs), dtype=bool)
    sel = np.ones(len(probs), dtype=bool)
    for w in data:
        sel &= (idx >> w) & 1 == 0
    return float(probs[sel].sum())


def process_fidelity(primitive: str, state: str, noise: NoiseModel,
                     shots: int, twirls: int, seed: int,
                     theta: float = 0.7) -> FidelityResult:
    """Fraction of shots returning all-zeros on the data qubits."""
    if shots < 1 or twirls < 1:
        raise ValueError("shots and twirls must be positive")
    exp = build_experiment(primitive, state, theta)
    rng = np.random.default_rng(seed)
    zeros = 0
    total = 0
    psi0 = _ground_state(exp.circuit.num_wires)
    for t in range(twirls):
        twirled = pauli_twirl(exp.circuit, seed=int(rng.integers(2**31)))
        sim = _TrajectorySim(twirled, psi0)
        n_cnots = len(sim.cnot_sites)
        shots_here = shots // twirls + (1 if t < shots % twirls else 0)
        for _ in range(shots_here):
            errors = {}
            for i in range(n_cnots):
                lab = noise.sample(rng)
                if lab is not None:
                    errors[i] = lab
            psi = sim.final_state(errors)
            p0 = _outcome_probabilities(psi, exp.data_vertices,
                                        exp.circuit.num_wires)
            zeros += rng.random() < p0
            total += 1
    fid = zeros / total
    err = math.sqrt(max(fid * (1 - fid), 1e-12) / total)
    return FidelityResult(state, primitive, total, twirls, fid, err)


def experiment_table(noise: NoiseModel, shots: int, twirls: int, seed: int,
                     theta: float = 0.7) -> list[FidelityResult]:
    """Per-state fidelities for trace and inversion plus the |GI>
    inversion row; means appended with state label 'mean'."""
    rows = []
    for k, primitive in enumerate(_PRIMITIVES):
        fids = []
        for g in range(24):
            r = process_fidelity(primitive, f"g{g}", noise, shots, twirls,
                                 seed + 1000 * k + g, theta)
            rows.append(r)
            fids.append(r.fidelity)
        mean = float(np.mean(fids))
        err = float(np.std(fids, ddof=1) / math.sqrt(len(fids)))
        rows.append(FidelityResult("mean", primitive, shots * 24, twirls,
                                   mean, err))
    rows.append(process_fidelity("inversion", "GI", noise, shots, twirls,
                                 seed + 9999, theta))
    return rows


def calibrate_depolarizing(target_mean: float = 0.55, shots: int = 300,
                           twirls: int = 5, seed: int = 11,
                           grid=None) -> float:
    """Depolarizing rate whose trace-circuit mean fidelity is closest to
    the target."""
    grid = grid if grid is not None else np.linspace(0.004, 0.03, 8)
    best_p, best_gap = grid[0], float("inf")
    for p in grid:
        noise = NoiseModel.depolarizing(float(p))
        fids = [
            process_fidelity("trace", f"g{g}", noise, shots, twirls,
                             seed + g).fidelity
            for g in range(0, 24, 3)
        ]
        gap = abs(float(np.mean(fids)) - target_mean)
        if gap < best_gap:
            best_p, best_gap = float(p), gap
    return best_p


def results_to_csv(rows) -> str:
    lines = ["state,primitive,shots,twirls,fidelity,error"]
    for r in rows:
        lines.append(
            f"{r.state_label},{r.primitive},{r.shots},{r.twirls},"
            f"{r.fidelity:.6f},{r.error_bar:.6f}"
        )
    return "\n".join(lines) + "\n"
