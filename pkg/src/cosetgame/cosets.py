"""Coset states built three ways: by definition, by Pauli frame, by encoder.

All three agree for labels drawn from the canonical representative sets; the
first two agree exactly, the encoder route up to a global phase (and exactly,
for these labels, which the tests pin down).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .f2 import BitVec, Subspace
from .qstate import CNOT, H, StateVec, X, Z, run_circuit


@dataclass(frozen=True)
class CosetLabel:
    """Subspace with canonical coset representatives x (for W) and z (for the dual)."""

    W: Subspace
    x: BitVec
    z: BitVec

    def __post_init__(self):
        n = self.W.n
        if self.x.n != n or self.z.n != n:
            raise ValueError("label length differs from subspace coordinates")
        piv = set(self.W.pivots)
        if any(i in piv for i in self.x.support()):
            raise ValueError("x must be supported on non-pivot coordinates")
        if any(i not in piv for i in self.z.support()):
            raise ValueError("z must be supported on pivot coordinates")


def encoder_circuit(W: Subspace) -> tuple:
    """H on every pivot, then the cross CNOTs in (control, target) order."""
    return tuple(H(i) for i in W.pivots) + tuple(
        CNOT(i, j) for i, j in W.cross_pairs
    )


def subspace_state(W: Subspace) -> StateVec:
    """Uniform superposition over the members of W."""
    amps = np.zeros(1 << W.n, dtype=complex)
    scale = 1 / math.sqrt(1 << W.dim)
    for u in W.elements():
        amps[u.word] = scale
    return StateVec(W.n, amps)


def coset_state_direct(lbl: CosetLabel) -> StateVec:
    """Amplitude (-1)^(z.u) / sqrt(|W|) on |x+u> for each member u."""
    W = lbl.W
    amps = np.zeros(1 << W.n, dtype=complex)
    scale = 1 / math.sqrt(1 << W.dim)
    for u in W.elements():
        amps[(lbl.x + u).word] = scale * (-1) ** lbl.z.dot(u)
    return StateVec(W.n, amps)


def coset_state_pauli(lbl: CosetLabel) -> StateVec:
    """X on supp(x) and Z on supp(z) applied to the subspace state."""
    gates = [X(i) for i in lbl.x.support()] + [Z(i) for i in lbl.z.support()]
    return run_circuit(subspace_state(lbl.W), gates)


def coset_state_encoded(lbl: CosetLabel) -> StateVec:
    """Encoder circuit applied to the basis state |x+z>.

    The supports of x and z are disjoint, so x+z is itself a basis label.
    """
    start = StateVec.basis(lbl.W.n, lbl.x + lbl.z)
    return run_circuit(start, encoder_circuit(lbl.W))


def random_label(W: Subspace, rng) -> CosetLabel:
    """Uniform (x, z) over the canonical representative sets."""
    x = BitVec.from_coords(W.n, [i for i in W.copivots if rng.integers(2)])
    z = BitVec.from_coords(W.n, [i for i in W.pivots if rng.integers(2)])
    return CosetLabel(W, x, z)
