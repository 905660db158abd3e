"""Pauli twirling, trajectory noise, and fidelity experiments."""

import numpy as np
import pytest

from btprim import noise
from btprim.circuits import phase_distance, unitary_of


_P = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}
_CNOT = np.array(
    [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
)


def test_pauli_push_table_is_a_cnot_conjugation():
    for (pc, pt), (qc, qt) in noise.CNOT_PAULI_PUSH.items():
        before = np.kron(_P[pc], _P[pt])
        after = np.kron(_P[qc], _P[qt])
        lhs = _CNOT @ before
        rhs = after @ _CNOT
        assert min(np.abs(lhs - s * rhs).max() for s in (1, -1, 1j, -1j)) < 1e-12


def test_pauli_push_known_propagations():
    # X on the control copies to the target; Z on the target copies back
    assert noise.CNOT_PAULI_PUSH[("X", "I")] == ("X", "X")
    assert noise.CNOT_PAULI_PUSH[("I", "Z")] == ("Z", "Z")
    assert noise.CNOT_PAULI_PUSH[("I", "X")] == ("I", "X")
    assert noise.CNOT_PAULI_PUSH[("Z", "I")] == ("Z", "I")


def test_depolarizing_model_probabilities():
    m = noise.NoiseModel.depolarizing(0.15)
    assert len(m.pauli_probs) == 15
    assert all(abs(p - 0.01) < 1e-12 for p in m.pauli_probs.values())
    rng = np.random.default_rng(0)
    draws = [m.sample(rng) for _ in range(2000)]
    frac = sum(d is not None for d in draws) / len(draws)
    assert abs(frac - 0.15) < 0.03


def test_twirl_preserves_unitary():
    exp = noise.build_experiment("trace", "g5", routed=False)
    for seed in range(3):
        tw = noise.pauli_twirl(exp.circuit, seed)
        assert phase_distance(unitary_of(tw, check=False),
                              unitary_of(exp.circuit, check=False)) < 1e-10


def test_zero_noise_fidelity_is_exactly_one():
    clean = noise.NoiseModel(pauli_probs={})
    for primitive, state in [("trace", "g0"), ("trace", "g17"),
                             ("inversion", "g3"), ("inversion", "GI")]:
        r = noise.process_fidelity(primitive, state, clean, shots=50,
                                   twirls=2, seed=1)
        assert r.fidelity == 1.0
        assert r.error_bar < 1e-6  # binomial bar with a tiny variance floor


def test_noise_lowers_fidelity_and_error_bar_scales():
    model = noise.NoiseModel.depolarizing(0.02)
    r = noise.process_fidelity("trace", "g1", model, shots=400, twirls=5,
                               seed=2)
    assert 0.0 < r.fidelity < 1.0
    # shots are split across twirls, so the denominator is the total
    want = np.sqrt(r.fidelity * (1 - r.fidelity) / 400)
    assert abs(r.error_bar - want) < 1e-12


def test_fidelity_deterministic_in_seed():
    model = noise.NoiseModel.depolarizing(0.02)
    a = noise.process_fidelity("trace", "g2", model, 100, 3, seed=7)
    b = noise.process_fidelity("trace", "g2", model, 100, 3, seed=7)
    assert a.fidelity == b.fidelity


def test_experiment_wire_placements_fit_device():
    from btprim.circuits import NAIROBI

    for primitive, mapping in noise.PLACEMENTS.items():
        assert sorted(mapping) == [0, 1, 2, 3, 4]
        assert len(set(mapping.values())) == 5
        assert all(0 <= v < NAIROBI.num_vertices for v in mapping.values())


def test_results_csv_format():
    rows = [noise.FidelityResult("g0", "trace", 10, 2, 0.5, 0.1)]
    text = noise.results_to_csv(rows)
    header, line = text.strip().splitlines()
    assert header == "state,primitive,shots,twirls,fidelity,error"
    assert line.startswith("g0,trace,10,2,0.5")
