"""Exact group arithmetic: tables, closed forms, irreps, classes."""

import numpy as np
import pytest
from hypothesis import given, strategies as st

from btprim import group

elements = st.integers(min_value=0, max_value=23)


def test_tables_shapes():
    assert group.MULT_TABLE.shape == (24, 24)
    assert group.INV_TABLE.shape == (24,)
    assert group.RE_TRACE.shape == (24,)


def test_identity_element():
    assert all(group.MULT_TABLE[0, h] == h for h in range(24))
    assert all(group.MULT_TABLE[g, 0] == g for g in range(24))
    assert group.INV_TABLE[0] == 0
    assert group.RE_TRACE[0] == 2


def test_mult_table_is_latin_square():
    for g in range(24):
        assert sorted(group.MULT_TABLE[g]) == list(range(24))
        assert sorted(group.MULT_TABLE[:, g]) == list(range(24))


@given(elements, elements, elements)
def test_associativity(g, h, k):
    gh = group.MULT_TABLE[g, h]
    hk = group.MULT_TABLE[h, k]
    assert group.MULT_TABLE[gh, k] == group.MULT_TABLE[g, hk]


@given(elements)
def test_inverse(g):
    assert group.MULT_TABLE[g, group.INV_TABLE[g]] == 0
    assert group.MULT_TABLE[group.INV_TABLE[g], g] == 0


def test_closed_form_inverse_matches_oracle():
    for g in range(24):
        assert group.closed_form_inverse(g) == group.inverse_oracle(g)


def test_closed_form_multiply_matches_oracle():
    for g in range(24):
        for h in range(24):
            assert group.closed_form_multiply(g, h) == group.MULT_TABLE[g, h]


def test_rho4_is_faithful_representation():
    mats = [group.rho4(g) for g in range(24)]
    for g in range(4):
        for h in range(24):
            want = mats[g] @ mats[h]
            got = mats[group.MULT_TABLE[g, h]]
            assert np.abs(want - got).max() < 1e-12


def test_re_trace_matches_rho4():
    for g in range(24):
        assert abs(np.trace(group.rho4(g)).real - group.RE_TRACE[g]) < 1e-12
        assert abs(np.trace(group.rho4(g)).imag) < 1e-12


def test_element_orders():
    orders = [group.element_order(g) for g in range(24)]
    from collections import Counter

    assert Counter(orders) == {1: 1, 2: 1, 3: 8, 4: 6, 6: 8}


def test_invalid_codes_rejected():
    for v in range(24, 32):
        with pytest.raises(group.EncodingError):
            group.decode(v)


@given(elements)
def test_encode_decode_roundtrip(g):
    assert group.encode(*group.decode(g)) == g


def test_conjugacy_classes():
    classes = group.conjugacy_classes()
    assert len(classes) == 7
    assert sorted(len(c) for c in classes) == [1, 1, 4, 4, 4, 4, 6]
    assert set().union(*classes) == set(range(24))
    # ReTr is a class function
    for c in classes:
        assert len({int(group.RE_TRACE[g]) for g in c}) == 1


def test_irrep_dimensions_square_sum():
    assert sum(d * d for d in group.IRREP_DIMS.values()) == 24


@pytest.mark.parametrize("label", group.IRREP_LABELS)
def test_irrep_is_unitary_homomorphism(label):
    d = group.IRREP_DIMS[label]
    rng = np.random.default_rng(label)
    for g in range(24):
        m = group.irrep(label, g)
        assert m.shape == (d, d)
        assert np.abs(m.conj().T @ m - np.eye(d)).max() < 1e-12
    for _ in range(40):
        g, h = rng.integers(0, 24, 2)
        want = group.irrep(label, g) @ group.irrep(label, h)
        got = group.irrep(label, int(group.MULT_TABLE[g, h]))
        assert np.abs(want - got).max() < 1e-10


def test_character_orthogonality():
    for a in group.IRREP_LABELS:
        for b in group.IRREP_LABELS:
            s = sum(
                group.character(a, g) * np.conj(group.character(b, g))
                for g in range(24)
            )
            assert abs(s - (24.0 if a == b else 0.0)) < 1e-9


def test_left_permutation_cycles():
    # left multiplication by a fixed g permutes the elements in cycles
    # whose common length is the order of g
    for g in range(1, 24):
        cycles = group.left_permutation(g).cycles()
        lengths = {len(c) for c in cycles}
        assert lengths == {group.element_order(g)}


@given(elements, elements)
def test_left_permutation_action(g, h):
    perm = group.left_permutation(g)
    assert perm.image[h] == group.MULT_TABLE[g, h]
