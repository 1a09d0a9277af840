"""Playing the guessing game: seeded Monte Carlo and exact evaluation."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .bound import upper_bound
from .cosets import CosetLabel, encoder_circuit, random_label
from .f2 import (
    BitMat,
    BitVec,
    Subspace,
    enumerate_subspaces,
    in_dual,
    rank_of_words,
    same_coset,
)
from .qstate import MeasureBasis, apply_compiled, compile_gates
from .strategy import (
    Side,
    StrategySpec,
    build_strategy,
    decode,
    single_out_bell_pairs,
    win_probability_formula,
)


@dataclass(frozen=True)
class RoundResult:
    """One play of the game with both players' guesses."""

    W: Subspace
    x: BitVec
    z: BitVec
    bob_guess: BitVec
    charlie_guess: BitVec
    bob_correct: bool
    charlie_correct: bool

    @property
    def joint_win(self) -> bool:
        return self.bob_correct and self.charlie_correct


@dataclass
class GameStats:
    """Tallies from a Monte Carlo run."""

    m: int
    rounds: int
    seed: int
    joint_wins: int = 0
    bob_wins: int = 0
    charlie_wins: int = 0

    def record(self, r: RoundResult):
        self.joint_wins += r.joint_win
        self.bob_wins += r.bob_correct
        self.charlie_wins += r.charlie_correct

    @property
    def joint_rate(self) -> float:
        return self.joint_wins / self.rounds

    @property
    def bob_rate(self) -> float:
        return self.bob_wins / self.rounds

    @property
    def charlie_rate(self) -> float:
        return self.charlie_wins / self.rounds


@lru_cache(maxsize=4096)
def default_strategy(W: Subspace) -> StrategySpec:
    return build_strategy(single_out_bell_pairs(W))


class PreparedW:
    """Compiled pipeline for one strategy: encode, play locally, rotate.

    The circular-basis qubits get a final rotation taking |+i> to |0> and
    |-i> to |1>, so a computational readout of the full register yields every
    outcome bit in one draw.
    """

    def __init__(self, strategy: StrategySpec):
        self.strategy = strategy
        self.lf = strategy.lf
        self.W = self.lf.W
        self.n = 2 * self.W.m
        gates = encoder_circuit(self.W) + self.lf.bob_circuit + self.lf.charlie_circuit
        unimag = [q + 1 for q, b in enumerate(strategy.all_bases) if b is MeasureBasis.ImagPair]
        self.ops = compile_gates(gates, self.n, unimag_qubits=unimag)

    def outcome_probs(self, v: BitVec) -> np.ndarray:
        """Distribution over joint outcome patterns for input label word v."""
        amps = np.zeros(1 << self.n, dtype=complex)
        amps[v.word] = 1.0
        apply_compiled(amps, self.n, self.ops)
        return np.abs(amps) ** 2

    def outcome_matrix(self) -> np.ndarray:
        """Column v is the outcome distribution for input word v."""
        amps = np.eye(1 << self.n, dtype=complex)
        apply_compiled(amps, self.n, self.ops)
        return np.abs(amps) ** 2

    def decode_pattern(self, pattern: int):
        """Split an n-bit outcome pattern and decode both players' guesses."""
        m = self.W.m
        bits = [pattern >> (self.n - q) & 1 for q in range(1, self.n + 1)]
        xg = decode(bits[:m], self.lf, Side.Bob)
        zg = decode(bits[m:], self.lf, Side.Charlie)
        return xg, zg


@lru_cache(maxsize=4096)
def prepare(strategy: StrategySpec) -> PreparedW:
    return PreparedW(strategy)


def play_round(W: Subspace, x: BitVec, z: BitVec, strategy: StrategySpec, rng) -> RoundResult:
    """Run the strategy once on |W_{x,z}> with a single Born draw."""
    pw = prepare(strategy)
    label = CosetLabel(W, x, z)
    probs = pw.outcome_probs(label.x + label.z)
    cum = np.cumsum(probs)
    pattern = int(np.searchsorted(cum, rng.random() * cum[-1], side="right"))
    pattern = min(pattern, (1 << pw.n) - 1)
    xg, zg = pw.decode_pattern(pattern)
    return RoundResult(
        W=W,
        x=x,
        z=z,
        bob_guess=xg,
        charlie_guess=zg,
        bob_correct=same_coset(W, x, xg),
        charlie_correct=in_dual(W, z + zg),
    )


@lru_cache(maxsize=8)
def _all_subspaces(m: int):
    return tuple(enumerate_subspaces(2 * m, m))


def sample_subspace(m: int, rng) -> Subspace:
    """Uniform half-dimension subspace of F2^2m.

    Small m draws an index into the enumeration. Larger m draws random m x 2m
    matrices until full rank; every subspace has equally many full-rank
    generator matrices, so row spaces are uniform.
    """
    if m <= 3:
        pool = _all_subspaces(m)
        return pool[int(rng.integers(len(pool)))]
    while True:
        words = [int(w) for w in rng.integers(0, 1 << (2 * m), size=m, dtype=np.int64)]
        if rank_of_words(words) == m:
            rows = tuple(BitVec(2 * m, w) for w in words)
            return Subspace.from_matrix(BitMat(rows, 2 * m))


def round_rng(seed: int, t: int):
    """Counter-based substream for round t; rounds are order-independent."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, t])))


def monte_carlo(m: int, rounds: int, seed: int) -> GameStats:
    """Seeded run; every round draws W, x, z, then one measurement outcome."""
    if not 1 <= m <= 10:
        raise ValueError("m must be between 1 and 10")
    if rounds < 1:
        raise ValueError("rounds must be at least 1")
    stats = GameStats(m=m, rounds=rounds, seed=seed)
    for t in range(rounds):
        rng = round_rng(seed, t)
        W = sample_subspace(m, rng)
        label = random_label(W, rng)
        stats.record(play_round(W, label.x, label.z, default_strategy(W), rng))
    return stats


def coset_rep_vectors(W: Subspace):
    """All 2^m canonical x representatives (support on non-pivots)."""
    n = W.n
    out = []
    for bits in range(1 << len(W.copivots)):
        v = BitVec(n, 0)
        for k, c in enumerate(W.copivots):
            if bits >> k & 1:
                v = v + BitVec.e(n, c)
        out.append(v)
    return out


def dual_rep_vectors(W: Subspace):
    """All 2^m canonical z representatives (support on pivots)."""
    n = W.n
    out = []
    for bits in range(1 << len(W.pivots)):
        v = BitVec(n, 0)
        for k, c in enumerate(W.pivots):
            if bits >> k & 1:
                v = v + BitVec.e(n, c)
        out.append(v)
    return out


def subspace_success(W: Subspace) -> float:
    """Exact win probability at W from the full outcome distribution.

    Runs the dense pipeline on every basis input at once, then sums the
    probability of each pattern whose decodes reproduce the drawn labels.
    Independent of the counting formula by construction.
    """
    pw = prepare(default_strategy(W))
    P = pw.outcome_matrix()
    by_guess: dict[tuple, list] = {}
    for pattern in range(1 << pw.n):
        xg, zg = pw.decode_pattern(pattern)
        by_guess.setdefault((xg.word, zg.word), []).append(pattern)
    total = 0.0
    labels = 0
    for x in coset_rep_vectors(W):
        for z in dual_rep_vectors(W):
            labels += 1
            rows = by_guess.get((x.word, z.word))
            if rows:
                total += float(P[rows, (x + z).word].sum())
    return total / labels


def exact_value(m: int) -> Fraction:
    """Game value of the strategy, averaged in exact arithmetic."""
    if not 1 <= m <= 3:
        raise ValueError("exact evaluation enumerates subspaces; m must be 1..3")
    subs = _all_subspaces(m)
    return sum(win_probability_formula(W) for W in subs) / len(subs)


def exact_value_simulated(m: int, sample: int = 100, seed: int = 0) -> float:
    """Game value through the dense simulation route.

    Exhaustive over subspaces for m <= 2; at m = 3 it averages `sample`
    uniformly drawn subspaces with exact inner (x, z) accounting, so the
    result carries sampling error across subspaces only.
    """
    if not 1 <= m <= 3:
        raise ValueError("dense evaluation is supported for m 1..3")
    subs = _all_subspaces(m)
    if m == 3:
        if sample < 100:
            raise ValueError("m=3 sampling needs at least 100 subspaces")
        rng = round_rng(seed, 0)
        subs = [subs[int(i)] for i in rng.integers(len(subs), size=sample)]
    return sum(subspace_success(W) for W in subs) / len(subs)


def is_tight(m: int) -> bool:
    """Does the strategy meet the upper bound exactly?"""
    return exact_value(m) == upper_bound(m)
