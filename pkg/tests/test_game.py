"""Round play, Monte Carlo runs, and the exact game value."""
from fractions import Fraction

import numpy as np
import pytest

from cosetgame.f2 import BitVec, Subspace, enumerate_subspaces
from cosetgame.game import (
    GameStats,
    coset_rep_vectors,
    default_strategy,
    dual_rep_vectors,
    exact_value,
    exact_value_simulated,
    is_tight,
    monte_carlo,
    play_round,
    round_rng,
    sample_subspace,
    subspace_success,
)
from cosetgame.bound import upper_bound

A6 = Subspace.from_string("101001,011101,000010")


def test_rep_vectors_tile():
    W = Subspace.from_string("1100,0010")
    xs = coset_rep_vectors(W)
    assert len(xs) == 4
    seen = {str(x + u) for x in xs for u in W.elements()}
    assert len(seen) == 16
    zs = dual_rep_vectors(W)
    assert len(zs) == 4
    assert all(all(i in W.pivots for i in z.support()) for z in zs)


def test_play_round_is_reproducible():
    W = Subspace.from_string("11")
    x, z = BitVec.zero(2), BitVec.zero(2)
    spec = default_strategy(W)
    a = play_round(W, x, z, spec, round_rng(9, 0))
    b = play_round(W, x, z, spec, round_rng(9, 0))
    assert (a.bob_guess, a.charlie_guess) == (b.bob_guess, b.charlie_guess)
    assert a.joint_win == (a.bob_correct and a.charlie_correct)


def test_round_guesses_are_canonical():
    rng = round_rng(3, 0)
    for _ in range(30):
        r = play_round(A6, BitVec.zero(6), BitVec.zero(6), default_strategy(A6), rng)
        assert all(i in A6.copivots for i in r.bob_guess.support())
        assert all(i in A6.pivots for i in r.charlie_guess.support())


def test_correctness_flags_coincide_for_this_strategy():
    # the decode conventions lock the two players together branch by branch
    rng = round_rng(11, 0)
    for W in enumerate_subspaces(4, 2):
        spec = default_strategy(W)
        for _ in range(25):
            r = play_round(W, BitVec.zero(4), BitVec.zero(4), spec, rng)
            assert r.bob_correct == r.charlie_correct


def test_subspace_success_matches_formula():
    for m in (1, 2):
        for W in enumerate_subspaces(2 * m, m):
            k = sum(1 for p in W.pivots if p > m)
            assert abs(subspace_success(W) - 0.5 ** (m - k)) < 1e-9
    assert abs(subspace_success(A6) - 0.25) < 1e-9


def test_exact_value_is_tight():
    assert exact_value(1) == Fraction(2, 3)
    assert exact_value(2) == Fraction(2, 5)
    assert exact_value(3) == Fraction(2, 9)
    for m in (1, 2, 3):
        assert exact_value(m) == upper_bound(m)
        assert is_tight(m)
    with pytest.raises(ValueError):
        exact_value(4)


def test_simulated_value_matches_exact():
    for m in (1, 2):
        assert abs(exact_value_simulated(m) - float(exact_value(m))) < 1e-9
    with pytest.raises(ValueError):
        exact_value_simulated(3, sample=10)


def test_sample_subspace_uniform_support():
    rng = np.random.default_rng(0)
    seen = {sample_subspace(2, rng).gen for _ in range(600)}
    assert len(seen) == 35
    for _ in range(5):
        W = sample_subspace(4, rng)
        assert W.n == 8 and W.dim == 4


def test_monte_carlo_stats():
    stats = monte_carlo(2, 400, 17)
    assert stats.joint_wins <= min(stats.bob_wins, stats.charlie_wins)
    assert stats.joint_rate <= min(stats.bob_rate, stats.charlie_rate)
    again = monte_carlo(2, 400, 17)
    assert (stats.joint_wins, stats.bob_wins, stats.charlie_wins) == (
        again.joint_wins,
        again.bob_wins,
        again.charlie_wins,
    )


def test_monte_carlo_validation():
    with pytest.raises(ValueError):
        monte_carlo(0, 10, 1)
    with pytest.raises(ValueError):
        monte_carlo(11, 10, 1)
    with pytest.raises(ValueError):
        monte_carlo(2, 0, 1)


def test_monte_carlo_tracks_the_bound():
    stats = monte_carlo(1, 4000, 23)
    p = float(upper_bound(1))
    sigma = (p * (1 - p) / 4000) ** 0.5
    assert abs(stats.joint_rate - p) <= 3 * sigma


def test_default_strategy_is_cached():
    assert default_strategy(A6) is default_strategy(A6)
