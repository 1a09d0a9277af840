"""Localization of coset states and the optimal guessing strategy.

Encoded coset states factor across the two players once same-side CNOTs are
undone and the cross-side CNOT block is diagonalized by local row and column
operations. What survives is a set of disjoint Bell pairs plus classical
bits; the strategy measures pairs in the circular basis and everything else
in the computational basis, then decodes through the accumulated linear maps.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cached_property

import numpy as np

from .f2 import BitMat, BitVec, Subspace, invert, matvec
from .qstate import (
    CNOT,
    H,
    MeasureBasis,
    Proj,
    apply_compiled,
    compile_gates,
)


class Side(Enum):
    Bob = "bob"
    Charlie = "charlie"


def _identity_rows(m: int) -> list[int]:
    return [1 << (m - 1 - r) for r in range(m)]


def _to_mat(rows: list[int], m: int) -> BitMat:
    return BitMat(tuple(BitVec(m, w) for w in rows), m)


@dataclass(frozen=True)
class LocalizedForm:
    """Result of rewriting an encoded coset state with local gates only.

    Applying bob_circuit and charlie_circuit to |W_{x,z}> leaves
    prod_t CNOT_{i_t, j_t} H_{i_t} |y> with y = f(x+z), where f acts as f1 on
    the first m coordinates and as f2 on the last m. h pairs the leftover
    first-half pivots with the leftover second-half non-pivots.
    """

    W: Subspace
    bob_circuit: tuple
    charlie_circuit: tuple
    residual_pairs: tuple
    f1: BitMat
    f2: BitMat
    h: tuple

    def __post_init__(self):
        m = self.W.m
        if any(q > m for g in self.bob_circuit for q in g.qubits):
            raise ValueError("bob_circuit strays past qubit m")
        if any(q <= m for g in self.charlie_circuit for q in g.qubits):
            raise ValueError("charlie_circuit strays below qubit m+1")

    def apply_f(self, v: BitVec) -> BitVec:
        """y = f(v), i.e. f1 on the first half and f2 on the second."""
        m = self.W.m
        first = matvec(self.f1, BitVec(m, v.word >> m))
        second = matvec(self.f2, BitVec(m, v.word & ((1 << m) - 1)))
        return BitVec(2 * m, first.word << m | second.word)

    @cached_property
    def f1_inverse(self) -> BitMat:
        return invert(self.f1)

    @cached_property
    def f2_inverse(self) -> BitMat:
        return invert(self.f2)

    def apply_f_inverse(self, v: BitVec) -> BitVec:
        m = self.W.m
        first = matvec(self.f1_inverse, BitVec(m, v.word >> m))
        second = matvec(self.f2_inverse, BitVec(m, v.word & ((1 << m) - 1)))
        return BitVec(2 * m, first.word << m | second.word)

    def residual_circuit(self) -> tuple:
        """Gates turning |y> into the localized state: H then CNOT per pair."""
        gates = []
        for i, j in self.residual_pairs:
            gates += [H(i), CNOT(i, j)]
        return tuple(gates)


def separate_local(W: Subspace):
    """Undo same-side CNOTs and cancel H on pivots with no cross target.

    Returns (cross_pairs J', entangled controls I', bob_gates, charlie_gates);
    after the returned gates the state is CNOT_{J'} H_{I'} |x+z>.
    """
    m = W.m
    j_cross = tuple((i, j) for i, j in W.cross_pairs if i <= m < j)
    entangled = tuple(sorted({i for i, _ in j_cross}))
    bob = [CNOT(i, j) for i, j in W.cross_pairs if j <= m]
    charlie = [CNOT(i, j) for i, j in W.cross_pairs if i > m]
    for i in W.pivots:
        if i not in entangled:
            (bob if i <= m else charlie).append(H(i))
    return j_cross, entangled, tuple(bob), tuple(charlie)


def single_out_bell_pairs(W: Subspace, j_cross=None, entangled=None) -> LocalizedForm:
    """Reduce the cross CNOT block to disjoint Bell pairs.

    Row additions on the controls (realized by Bob CNOTs between H-carrying
    qubits) bring the block to reduced echelon form; column additions on the
    targets (Charlie CNOTs) clear leftover 1s in the pivot rows. Both kinds
    land on the ket label and accumulate into f1 and f2.
    """
    if j_cross is None or entangled is None:
        j_cross, entangled, bob_gates, charlie_gates = separate_local(W)
    else:
        _, _, bob_gates, charlie_gates = separate_local(W)
    m = W.m
    bob = list(bob_gates)
    charlie = list(charlie_gates)
    controls = list(entangled)
    targets = sorted(j for j in W.copivots if j > m)
    colbit = {j: c for c, j in enumerate(targets)}
    rows = [0] * len(controls)
    for r, i in enumerate(controls):
        for a, b in j_cross:
            if a == i:
                rows[r] |= 1 << colbit[b]

    f1 = _identity_rows(m)
    f2 = _identity_rows(m)

    def row_add(dest: int, src: int):
        # Bob CNOT with control `dest` swaps roles under the surrounding H
        # pair: the block row and the ket bit at `dest` both gain `src`
        rows[dest] ^= rows[src]
        bob.append(CNOT(controls[dest], controls[src]))
        f1[controls[dest] - 1] ^= f1[controls[src] - 1]

    def col_add(dest: int, src: int):
        for r in range(len(rows)):
            if rows[r] >> src & 1:
                rows[r] ^= 1 << dest
        charlie.append(CNOT(targets[src], targets[dest]))
        f2[targets[dest] - m - 1] ^= f2[targets[src] - m - 1]

    # reduced echelon form via row additions only (no swaps needed over F2)
    pivot_cols = []
    r = 0
    for c in range(len(targets)):
        if r >= len(rows):
            break
        if not rows[r] >> c & 1:
            src = next((i for i in range(r + 1, len(rows)) if rows[i] >> c & 1), None)
            if src is None:
                continue
            row_add(r, src)
        for i in range(len(rows)):
            if i != r and rows[i] >> c & 1:
                row_add(i, r)
        pivot_cols.append(c)
        r += 1
    for t, pc in enumerate(pivot_cols):
        for c in range(len(targets)):
            if c != pc and rows[t] >> c & 1:
                col_add(c, pc)

    ell = len(pivot_cols)
    residual = tuple((controls[t], targets[pc]) for t, pc in enumerate(pivot_cols))
    for d in range(ell, len(controls)):
        # this control lost every cross edge; its H now cancels locally
        bob.append(H(controls[d]))

    used_i = {i for i, _ in residual}
    used_j = {j for _, j in residual}
    free_i = [i for i in W.pivots if i <= m and i not in used_i]
    free_j = [j for j in targets if j not in used_j]
    assert len(free_i) == len(free_j)
    return LocalizedForm(
        W=W,
        bob_circuit=tuple(bob),
        charlie_circuit=tuple(charlie),
        residual_pairs=residual,
        f1=_to_mat(f1, m),
        f2=_to_mat(f2, m),
        h=tuple(zip(free_i, free_j)),
    )


def localize(W: Subspace) -> LocalizedForm:
    return single_out_bell_pairs(W)


@dataclass(frozen=True)
class StrategySpec:
    """Per-qubit measurement bases plus the localized form decode runs on."""

    lf: LocalizedForm
    bob_basis: tuple
    charlie_basis: tuple

    @property
    def all_bases(self) -> tuple:
        return self.bob_basis + self.charlie_basis


def build_strategy(lf: LocalizedForm) -> StrategySpec:
    """Circular basis on Bell-pair qubits, computational everywhere else."""
    m = lf.W.m
    bell_b = {i for i, _ in lf.residual_pairs}
    bell_c = {j for _, j in lf.residual_pairs}
    bob = tuple(
        MeasureBasis.ImagPair if q in bell_b else MeasureBasis.Comp
        for q in range(1, m + 1)
    )
    charlie = tuple(
        MeasureBasis.ImagPair if q in bell_c else MeasureBasis.Comp
        for q in range(m + 1, 2 * m + 1)
    )
    return StrategySpec(lf=lf, bob_basis=bob, charlie_basis=charlie)


def decode(outcomes, lf: LocalizedForm, side: Side) -> BitVec:
    """Turn one player's outcome bits into a canonical coset representative.

    Outcome bit 0 on a circular-basis qubit means the |+i> result. Bob reads
    his half of y directly on non-pivot qubits; each leftover pivot qubit
    carries the bit his h-partner coordinate should match; a Bell outcome +i
    bets 0 on the paired target coordinate. Charlie mirrors this with +i
    betting 1 on the paired control coordinate, which is what makes the two
    players' successes coincide.
    """
    W = lf.W
    m = W.m
    if len(outcomes) != m:
        raise ValueError(f"need {m} outcome bits")
    piv = set(W.pivots)
    word = 0
    if side is Side.Bob:
        for i in range(1, m + 1):
            if i not in piv:
                word |= outcomes[i - 1] << (2 * m - i)
        for i_t, j_t in lf.residual_pairs:
            word |= outcomes[i_t - 1] << (2 * m - j_t)
        for i, j in lf.h:
            word |= outcomes[i - 1] << (2 * m - j)
        guess = lf.apply_f_inverse(BitVec(2 * m, word))
        return W.reduce(guess)
    for j in range(m + 1, 2 * m + 1):
        if j in piv:
            word |= outcomes[j - m - 1] << (2 * m - j)
    for i_t, j_t in lf.residual_pairs:
        word |= (1 - outcomes[j_t - m - 1]) << (2 * m - i_t)
    for i, j in lf.h:
        word |= outcomes[j - m - 1] << (2 * m - i)
    guess = lf.apply_f_inverse(BitVec(2 * m, word))
    return dual_rep(W, guess)


def dual_rep(W: Subspace, v: BitVec) -> BitVec:
    """Representative of v's dual-subspace coset supported on the pivots.

    The coset of the dual is fixed by the dot products with W's generators,
    and the pivot columns form an identity block, so those dots are the
    representative's pivot coordinates.
    """
    word = 0
    for row, p in zip(W.gen.rows, W.pivots):
        word |= ((row.word & v.word).bit_count() & 1) << (W.n - p)
    return BitVec(W.n, word)


def win_probability_formula(W: Subspace) -> Fraction:
    """2^-(number of first-half pivots): one halving per unknown bit."""
    m = W.m
    return Fraction(1, 1 << sum(1 for i in W.pivots if i <= m))


def side_unitary(lf: LocalizedForm, side: Side) -> np.ndarray:
    """Dense matrix of one player's local circuit on m qubits."""
    m = lf.W.m
    if side is Side.Bob:
        gates = lf.bob_circuit
    else:
        gates = [type(g)(g.kind, tuple(q - m for q in g.qubits)) for g in lf.charlie_circuit]
    mat = np.eye(1 << m, dtype=complex)
    apply_compiled(mat, m, compile_gates(gates, m))
    return mat


def povm_elements(lf: LocalizedForm, side: Side) -> dict:
    """Explicit POVM: guess representative -> 2^m x 2^m positive matrix."""
    from .qstate import _PROJ_VECS  # local import to keep the dense path private

    m = lf.W.m
    bases = build_strategy(lf).bob_basis if side is Side.Bob else build_strategy(lf).charlie_basis
    U = side_unitary(lf, side)
    out: dict[BitVec, np.ndarray] = {}
    for pattern in range(1 << m):
        bits = [pattern >> (m - 1 - q) & 1 for q in range(m)]
        vec = np.ones(1, dtype=complex)
        for q, basis in enumerate(bases):
            if basis is MeasureBasis.Comp:
                choice = Proj.Comp1 if bits[q] else Proj.Comp0
            else:
                choice = Proj.MinusI if bits[q] else Proj.PlusI
            vec = np.kron(vec, _PROJ_VECS[choice])
        proj = np.outer(vec, vec.conj())
        guess = decode(bits, lf, side)
        elem = U.conj().T @ proj @ U
        out[guess] = out.get(guess, 0) + elem
    return out
