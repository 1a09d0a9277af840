"""Coset state construction along the three routes."""
import itertools

import numpy as np
import pytest

from cosetgame.cosets import (
    CosetLabel,
    coset_state_direct,
    coset_state_encoded,
    coset_state_pauli,
    encoder_circuit,
    random_label,
    subspace_state,
)
from cosetgame.f2 import BitVec, Subspace, enumerate_subspaces
from cosetgame.qstate import TOL, equal_exact, equal_up_to_phase


def all_labels(W):
    for xc in itertools.chain.from_iterable(
        itertools.combinations(W.copivots, r) for r in range(W.dim + 1)
    ):
        for zc in itertools.chain.from_iterable(
            itertools.combinations(W.pivots, r) for r in range(W.dim + 1)
        ):
            yield CosetLabel(W, BitVec.from_coords(W.n, xc), BitVec.from_coords(W.n, zc))


def test_label_validation():
    W = Subspace.from_string("1100,0010")
    with pytest.raises(ValueError):
        CosetLabel(W, BitVec.from_string("1000"), BitVec.zero(4))  # 1 is a pivot
    with pytest.raises(ValueError):
        CosetLabel(W, BitVec.zero(4), BitVec.from_string("0100"))  # 2 is not
    with pytest.raises(ValueError):
        CosetLabel(W, BitVec.zero(6), BitVec.zero(6))


def test_subspace_state_support_and_norm():
    W = Subspace.from_string("1100,0010")
    s = subspace_state(W)
    member_words = {u.word for u in W.elements()}
    for w in range(16):
        if w in member_words:
            assert abs(s.amps[w] - 0.5) < TOL
        else:
            assert abs(s.amps[w]) < TOL


def test_encoder_layout():
    W = Subspace.from_string("101001,011101,000010")
    gates = encoder_circuit(W)
    assert [g.kind for g in gates] == ["H"] * 3 + ["CNOT"] * 5
    assert [g.qubits for g in gates[:3]] == [(1,), (2,), (5,)]
    assert gates[3].qubits == (1, 3)


def test_sign_pattern_on_m1():
    W = Subspace.from_string("11")
    lbl = CosetLabel(W, BitVec.zero(2), BitVec.from_string("10"))
    s = coset_state_direct(lbl)
    root = 2 ** -0.5
    assert abs(s.amps[0b00] - root) < TOL
    assert abs(s.amps[0b11] + root) < TOL


def test_three_routes_agree_exhaustively_small():
    for m in (1, 2):
        for W in enumerate_subspaces(2 * m, m):
            for lbl in all_labels(W):
                direct = coset_state_direct(lbl)
                assert equal_exact(direct, coset_state_pauli(lbl))
                assert equal_up_to_phase(direct, coset_state_encoded(lbl))


def test_encoder_route_is_phase_exact():
    # the encoder reproduces the definition with no global phase at all
    W = Subspace.from_string("101001,011101,000010")
    for lbl in all_labels(W):
        assert equal_exact(coset_state_direct(lbl), coset_state_encoded(lbl))


def test_labels_index_orthonormal_states():
    W = Subspace.from_string("1100,0010")
    states = [coset_state_direct(lbl) for lbl in all_labels(W)]
    assert len(states) == 16
    gram = np.array([[np.vdot(a.amps, b.amps) for b in states] for a in states])
    assert np.allclose(gram, np.eye(16), atol=TOL)


def test_random_label_is_canonical_and_seeded():
    W = Subspace.from_string("101001,011101,000010")
    rng = np.random.default_rng(5)
    labels = [random_label(W, rng) for _ in range(20)]
    for lbl in labels:
        assert all(i in W.copivots for i in lbl.x.support())
        assert all(i in W.pivots for i in lbl.z.support())
    again = [random_label(W, np.random.default_rng(5)) for _ in range(1)]
    assert again[0] == labels[0]
