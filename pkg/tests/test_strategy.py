"""Localizing the shared state and decoding local outcomes."""
import itertools
from fractions import Fraction

import numpy as np
import pytest

from cosetgame.cosets import CosetLabel, coset_state_encoded
from cosetgame.f2 import BitVec, Subspace, enumerate_subspaces
from cosetgame.qstate import (
    MeasureBasis,
    StateVec,
    TOL,
    equal_exact,
    run_circuit,
)
from cosetgame.strategy import (
    Side,
    build_strategy,
    decode,
    dual_rep,
    localize,
    povm_elements,
    separate_local,
    single_out_bell_pairs,
    win_probability_formula,
)

A6 = Subspace.from_string("101001,011101,000010")


def all_labels(W):
    for xc in itertools.chain.from_iterable(
        itertools.combinations(W.copivots, r) for r in range(W.dim + 1)
    ):
        for zc in itertools.chain.from_iterable(
            itertools.combinations(W.pivots, r) for r in range(W.dim + 1)
        ):
            yield CosetLabel(W, BitVec.from_coords(W.n, xc), BitVec.from_coords(W.n, zc))


def localized_reference(lf, lbl):
    # the claimed form: residual Bell circuit applied to |f(x+z)>
    y = lf.apply_f(lbl.x + lbl.z)
    return run_circuit(StateVec.basis(lf.W.n, y), lf.residual_circuit())


def test_separate_local_splits_cross_pairs():
    j_cross, entangled, bob_gates, charlie_gates = separate_local(A6)
    assert j_cross == ((1, 6), (2, 4), (2, 6))
    assert entangled == (1, 2)
    assert all(max(g.qubits) <= 3 for g in bob_gates)
    assert all(min(g.qubits) >= 4 for g in charlie_gates)


def test_worked_localized_form():
    lf = single_out_bell_pairs(A6)
    assert lf.residual_pairs == ((1, 4), (2, 6))
    assert lf.h == ()
    assert str(lf.f1) == "110,100,001"
    assert str(lf.f2) == "100,010,001"
    assert all(max(g.qubits) <= 3 for g in lf.bob_circuit)
    assert all(min(g.qubits) >= 4 for g in lf.charlie_circuit)


def test_localized_form_is_exact_on_worked_subspace():
    lf = single_out_bell_pairs(A6)
    for lbl in all_labels(A6):
        moved = run_circuit(
            coset_state_encoded(lbl), lf.bob_circuit + lf.charlie_circuit
        )
        assert equal_exact(moved, localized_reference(lf, lbl))


def test_localized_form_is_exact_exhaustively_small():
    for m in (1, 2):
        for W in enumerate_subspaces(2 * m, m):
            lf = localize(W)
            for lbl in all_labels(W):
                moved = run_circuit(
                    coset_state_encoded(lbl), lf.bob_circuit + lf.charlie_circuit
                )
                assert equal_exact(moved, localized_reference(lf, lbl))


def test_f_is_invertible_and_split():
    lf = single_out_bell_pairs(A6)
    for w in range(64):
        v = BitVec(6, w)
        assert lf.apply_f_inverse(lf.apply_f(v)) == v
    # f1 touches only the first half, f2 only the second
    front = lf.apply_f(BitVec.from_string("110000"))
    assert front.word & 0b000111 == 0


def test_small_subspace_shapes():
    lf = localize(Subspace.from_string("01"))
    assert lf.residual_pairs == () and lf.h == ()
    lf = localize(Subspace.from_string("10"))
    assert lf.residual_pairs == () and lf.h == ((1, 2),)
    lf = localize(Subspace.from_string("11"))
    assert lf.residual_pairs == ((1, 2),) and lf.h == ()
    lf = localize(Subspace.from_string("1100,0010"))
    assert lf.residual_pairs == () and lf.h == ((1, 4),)


def test_win_probability_counts_front_pivots():
    assert win_probability_formula(Subspace.from_string("01")) == 1
    assert win_probability_formula(Subspace.from_string("11")) == Fraction(1, 2)
    assert win_probability_formula(A6) == Fraction(1, 4)
    full_back = Subspace.from_string("101000,011000,000010")
    assert win_probability_formula(full_back) == Fraction(1, 4)


def test_bases_single_out_bell_qubits():
    spec = build_strategy(single_out_bell_pairs(A6))
    IP, C = MeasureBasis.ImagPair, MeasureBasis.Comp
    assert spec.bob_basis == (IP, IP, C)
    assert spec.charlie_basis == (IP, C, IP)


def test_decode_reads_off_the_residual_layout():
    W = Subspace.from_string("101000,011000,000010")
    lf = single_out_bell_pairs(W)
    assert lf.h == ((1, 4), (2, 6))
    assert str(decode([0, 1, 1], lf, Side.Bob)) == "001001"
    assert str(decode([1, 1, 0], lf, Side.Charlie)) == "100010"


def test_decode_returns_canonical_representatives():
    lf = single_out_bell_pairs(A6)
    for pattern in range(8):
        bits = [pattern >> (2 - q) & 1 for q in range(3)]
        xg = decode(bits, lf, Side.Bob)
        zg = decode(bits, lf, Side.Charlie)
        assert all(i in lf.W.copivots for i in xg.support())
        assert all(i in lf.W.pivots for i in zg.support())
    with pytest.raises(ValueError):
        decode([0, 1], lf, Side.Bob)


def test_dual_rep_is_constant_on_dual_cosets():
    from cosetgame.f2 import orthogonal_complement

    Wp = orthogonal_complement(A6)
    v = BitVec.from_string("010000")
    r = dual_rep(A6, v)
    for u in Wp.elements():
        assert dual_rep(A6, v + u) == r
    assert all(i in A6.pivots for i in r.support())


def test_povm_elements_resolve_identity():
    for W in (A6, Subspace.from_string("1100,0010")):
        lf = single_out_bell_pairs(W)
        m = W.m
        for side in (Side.Bob, Side.Charlie):
            povm = povm_elements(lf, side)
            total = sum(povm.values())
            assert np.allclose(total, np.eye(1 << m), atol=TOL)
            for el in povm.values():
                eig = np.linalg.eigvalsh(el)
                assert eig.min() > -TOL
