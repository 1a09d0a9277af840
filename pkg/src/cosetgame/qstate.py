"""Dense state-vector simulation for small qubit registers.

Gates are limited to H, X, Z and CNOT; measurements come in the computational
basis and the circular (|0> +- i|1>)/sqrt(2) basis. Qubit 1 is the most
significant bit of the basis index, so bit strings read left to right.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

import numpy as np

from .f2 import BitVec

TOL = 1e-9
_SQRT_HALF = 1 / math.sqrt(2)


class Proj(Enum):
    """Rank-1 projector choice for a single qubit."""

    Comp0 = "0"
    Comp1 = "1"
    PlusI = "+i"
    MinusI = "-i"


class MeasureBasis(Enum):
    Comp = "comp"
    ImagPair = "imag"


_PROJ_VECS = {
    Proj.Comp0: np.array([1, 0], dtype=complex),
    Proj.Comp1: np.array([0, 1], dtype=complex),
    Proj.PlusI: np.array([_SQRT_HALF, 1j * _SQRT_HALF]),
    Proj.MinusI: np.array([_SQRT_HALF, -1j * _SQRT_HALF]),
}

ProjectorSpec = tuple  # one Proj per qubit


@dataclass(frozen=True)
class Gate:
    kind: str
    qubits: tuple[int, ...]

    def __post_init__(self):
        if self.kind not in ("H", "X", "Z", "CNOT"):
            raise ValueError(f"unknown gate kind {self.kind!r}")
        want = 2 if self.kind == "CNOT" else 1
        if len(self.qubits) != want:
            raise ValueError(f"{self.kind} takes {want} qubit(s)")
        if any(q < 1 for q in self.qubits):
            raise ValueError("qubit indices are 1-based")
        if self.kind == "CNOT" and self.qubits[0] == self.qubits[1]:
            raise ValueError("CNOT control equals target")


# constructors are cached: gates are immutable and reappear constantly

@lru_cache(maxsize=None)
def H(i: int) -> Gate:
    return Gate("H", (i,))


@lru_cache(maxsize=None)
def X(i: int) -> Gate:
    return Gate("X", (i,))


@lru_cache(maxsize=None)
def Z(i: int) -> Gate:
    return Gate("Z", (i,))


@lru_cache(maxsize=None)
def CNOT(i: int, j: int) -> Gate:
    return Gate("CNOT", (i, j))


def circuit_to_text(gates) -> str:
    """One gate per line: "H 1", "CNOT 1 2"."""
    return "\n".join(f"{g.kind} {' '.join(str(q) for q in g.qubits)}" for g in gates)


def circuit_from_text(text: str) -> tuple[Gate, ...]:
    gates = []
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        kind, *args = line.split()
        gates.append(Gate(kind, tuple(int(a) for a in args)))
    return tuple(gates)


# In-place kernels over views shaped [2]*n plus optional trailing batch axes;
# indexing with an n-tuple of axis values leaves the batch axes untouched.
# Factories are cached: the closures are stateless and safe to share.

def _slot(n: int, *pairs) -> tuple:
    ix = [slice(None)] * n
    for a, v in pairs:
        ix[a] = v
    return tuple(ix)


@lru_cache(maxsize=None)
def _h_op(n, a):
    ix0, ix1 = _slot(n, (a, 0)), _slot(n, (a, 1))

    def run(view):
        lo = view[ix0].copy()
        hi = view[ix1]
        view[ix0] = (lo + hi) * _SQRT_HALF
        view[ix1] = (lo - hi) * _SQRT_HALF

    return run


@lru_cache(maxsize=None)
def _x_op(n, a):
    ix0, ix1 = _slot(n, (a, 0)), _slot(n, (a, 1))

    def run(view):
        lo = view[ix0].copy()
        view[ix0] = view[ix1]
        view[ix1] = lo

    return run


@lru_cache(maxsize=None)
def _z_op(n, a):
    ix1 = _slot(n, (a, 1))

    def run(view):
        view[ix1] *= -1

    return run


@lru_cache(maxsize=None)
def _cnot_op(n, c, t):
    on0, on1 = _slot(n, (c, 1), (t, 0)), _slot(n, (c, 1), (t, 1))

    def run(view):
        tmp = view[on0].copy()
        view[on0] = view[on1]
        view[on1] = tmp

    return run


@lru_cache(maxsize=None)
def _unimag_op(n, a):
    # rotate the circular basis onto the computational one:
    # |+i> -> |0>, |-i> -> |1>
    ix0, ix1 = _slot(n, (a, 0)), _slot(n, (a, 1))

    def run(view):
        lo = view[ix0].copy()
        hi = view[ix1]
        view[ix0] = (lo - 1j * hi) * _SQRT_HALF
        view[ix1] = (lo + 1j * hi) * _SQRT_HALF

    return run


def compile_gates(gates, n: int, unimag_qubits=()) -> list:
    """Lower a gate list (plus final basis rotations) to kernel closures."""
    ops = []
    for g in gates:
        if any(q > n for q in g.qubits):
            raise ValueError(f"gate {g} out of range for {n} qubits")
        if g.kind == "H":
            ops.append(_h_op(n, g.qubits[0] - 1))
        elif g.kind == "X":
            ops.append(_x_op(n, g.qubits[0] - 1))
        elif g.kind == "Z":
            ops.append(_z_op(n, g.qubits[0] - 1))
        else:
            ops.append(_cnot_op(n, g.qubits[0] - 1, g.qubits[1] - 1))
    for q in unimag_qubits:
        ops.append(_unimag_op(n, q - 1))
    return ops


def apply_compiled(amps: np.ndarray, n: int, ops) -> None:
    """Run compiled kernels in place; amps is (2^n,) or (2^n, batch)."""
    view = amps.reshape([2] * n + list(amps.shape[1:]))
    for run in ops:
        run(view)


@dataclass
class StateVec:
    """Normalized pure state on num_qubits qubits."""

    num_qubits: int
    amps: np.ndarray

    def __post_init__(self):
        self.amps = np.asarray(self.amps, dtype=complex).reshape(-1)
        if self.amps.size != 1 << self.num_qubits:
            raise ValueError("amplitude count is not 2^n")

    @classmethod
    def basis(cls, n: int, index) -> StateVec:
        """Computational basis state; index may be an int or a BitVec."""
        if isinstance(index, BitVec):
            if index.n != n:
                raise ValueError("BitVec length differs from qubit count")
            index = index.word
        amps = np.zeros(1 << n, dtype=complex)
        amps[index] = 1
        return cls(n, amps)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def check_normalized(self):
        if abs(self.norm() - 1) > TOL:
            raise ValueError(f"state norm {self.norm()} drifted beyond {TOL}")


def apply_gate(s: StateVec, g: Gate) -> StateVec:
    amps = s.amps.copy()
    apply_compiled(amps, s.num_qubits, compile_gates([g], s.num_qubits))
    out = StateVec(s.num_qubits, amps)
    out.check_normalized()
    return out


def run_circuit(s: StateVec, gates) -> StateVec:
    amps = s.amps.copy()
    apply_compiled(amps, s.num_qubits, compile_gates(gates, s.num_qubits))
    out = StateVec(s.num_qubits, amps)
    out.check_normalized()
    return out


def inner_product(a: StateVec, b: StateVec) -> complex:
    if a.num_qubits != b.num_qubits:
        raise ValueError("qubit count mismatch")
    return complex(np.vdot(a.amps, b.amps))


def equal_exact(a: StateVec, b: StateVec, tol: float = TOL) -> bool:
    return a.num_qubits == b.num_qubits and bool(
        np.max(np.abs(a.amps - b.amps)) <= tol
    )


def equal_up_to_phase(a: StateVec, b: StateVec, tol: float = TOL) -> bool:
    return abs(inner_product(a, b)) >= 1 - tol


@dataclass
class DensityOp:
    num_qubits: int
    mat: np.ndarray

    def __post_init__(self):
        self.mat = np.asarray(self.mat, dtype=complex)
        dim = 1 << self.num_qubits
        if self.mat.shape != (dim, dim):
            raise ValueError("density matrix shape is not 2^n x 2^n")

    def validate(self, tol: float = TOL):
        if np.max(np.abs(self.mat - self.mat.conj().T)) > tol:
            raise ValueError("not Hermitian")
        if abs(np.trace(self.mat).real - 1) > tol:
            raise ValueError("trace differs from 1")
        if np.linalg.eigvalsh(self.mat).min() < -tol:
            raise ValueError("negative eigenvalue")

    def frobenius_distance(self, other: DensityOp) -> float:
        return float(np.linalg.norm(self.mat - other.mat))

    def product_trace(self, other: DensityOp) -> float:
        return float(np.trace(self.mat @ other.mat).real)


def partial_trace_second_half(s: StateVec) -> DensityOp:
    """Reduced state of the first half after discarding qubits m+1..2m."""
    if s.num_qubits % 2:
        raise ValueError("qubit count must be even")
    m = s.num_qubits // 2
    block = s.amps.reshape(1 << m, 1 << m)
    return DensityOp(m, block @ block.conj().T)


def project_prob(s: StateVec, spec: ProjectorSpec) -> float:
    """Probability of the product projector onto the chosen basis vectors."""
    if len(spec) != s.num_qubits:
        raise ValueError("projector spec must cover every qubit")
    v = s.amps.reshape([2] * s.num_qubits)
    for choice in spec:
        b = _PROJ_VECS[choice]
        v = b[0].conjugate() * v[0] + b[1].conjugate() * v[1]
    return float(abs(complex(v)) ** 2)


def measure_qubit(s: StateVec, q: int, basis: MeasureBasis, rng) -> tuple[int, StateVec]:
    """Sample one qubit; returns (outcome, collapsed state).

    Outcome 0 means |0> in the computational basis and |+i> in the circular
    one; outcome 1 means |1> resp. |-i>.
    """
    n = s.num_qubits
    if not 1 <= q <= n:
        raise ValueError(f"qubit {q} out of range 1..{n}")
    view = s.amps.reshape([2] * n)
    a = q - 1
    ix0, ix1 = _slot(n, (a, 0)), _slot(n, (a, 1))
    lo, hi = view[ix0], view[ix1]
    if basis is MeasureBasis.Comp:
        branches = (lo, hi)
    else:
        branches = ((lo - 1j * hi) * _SQRT_HALF, (lo + 1j * hi) * _SQRT_HALF)
    p = [float(np.sum(np.abs(b) ** 2)) for b in branches]
    if abs(p[0] + p[1] - 1) > TOL:
        raise ValueError("branch probabilities do not sum to 1")
    outcome = 1 if rng.random() < p[1] else 0
    kept = branches[outcome] / math.sqrt(p[outcome])
    amps = np.zeros_like(view)
    if basis is MeasureBasis.Comp:
        amps[_slot(n, (a, outcome))] = kept
    else:
        sign = 1j if outcome == 0 else -1j
        amps[ix0] = kept * _SQRT_HALF
        amps[ix1] = kept * sign * _SQRT_HALF
    return outcome, StateVec(n, amps.reshape(-1))
