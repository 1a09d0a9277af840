"""Exact linear algebra over GF(2).

Bit vectors, RREF, orthogonal complements, subspace enumeration, coset
machinery and q-binomial coefficients. Coordinates are 1-based and MSB-first:
coordinate 1 of a length-n vector is the most significant bit of its packed
integer word, so the word of a vector doubles as the index of the matching
computational basis state.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Iterator


@dataclass(frozen=True)
class BitVec:
    """Vector in F2^n packed into an int; addition is XOR, dot is AND-parity."""

    n: int
    word: int

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("negative length")
        if self.word < 0 or self.word >> self.n:
            raise ValueError(f"word {self.word:#b} does not fit in {self.n} bits")

    @classmethod
    def from_string(cls, s: str) -> BitVec:
        if not s or set(s) - {"0", "1"}:
            raise ValueError(f"not a binary string: {s!r}")
        return cls(len(s), int(s, 2))

    @classmethod
    def from_coords(cls, n: int, coords: Iterable[int]) -> BitVec:
        """Vector with 1s exactly at the given 1-based coordinates."""
        word = 0
        for i in coords:
            if not 1 <= i <= n:
                raise ValueError(f"coordinate {i} out of range 1..{n}")
            word |= 1 << (n - i)
        return cls(n, word)

    @classmethod
    def zero(cls, n: int) -> BitVec:
        return cls(n, 0)

    @classmethod
    def e(cls, n: int, i: int) -> BitVec:
        """Standard basis vector e_i."""
        return cls.from_coords(n, (i,))

    def get(self, i: int) -> int:
        if not 1 <= i <= self.n:
            raise ValueError(f"coordinate {i} out of range 1..{self.n}")
        return self.word >> (self.n - i) & 1

    def __add__(self, other: BitVec) -> BitVec:
        if self.n != other.n:
            raise ValueError("length mismatch")
        return BitVec(self.n, self.word ^ other.word)

    def dot(self, other: BitVec) -> int:
        if self.n != other.n:
            raise ValueError("length mismatch")
        return (self.word & other.word).bit_count() & 1

    def support(self) -> tuple[int, ...]:
        return tuple(i for i in range(1, self.n + 1) if self.get(i))

    def is_zero(self) -> bool:
        return self.word == 0

    def __str__(self) -> str:
        return format(self.word, f"0{self.n}b") if self.n else ""

    def __repr__(self) -> str:
        return f"BitVec({str(self)!r})"


@dataclass(frozen=True)
class BitMat:
    """Matrix over F2 stored as a tuple of row vectors."""

    rows: tuple[BitVec, ...]
    cols: int

    def __post_init__(self):
        for r in self.rows:
            if r.n != self.cols:
                raise ValueError("row length differs from cols")

    @classmethod
    def from_rows(cls, rows: Iterable[BitVec]) -> BitMat:
        rows = tuple(rows)
        if not rows:
            raise ValueError("cannot infer cols from an empty row list")
        return cls(rows, rows[0].n)

    def get(self, r: int, c: int) -> int:
        """Entry at 1-based row r, column c."""
        return self.rows[r - 1].get(c)

    def __str__(self) -> str:
        return format_matrix(self)

    def __repr__(self) -> str:
        return f"BitMat({format_matrix(self)!r})"


def parse_matrix(text: str) -> BitMat:
    """Parse rows of binary digits joined by commas, e.g. "101001,011101"."""
    parts = text.split(",")
    rows = tuple(BitVec.from_string(p.strip()) for p in parts)
    if len({r.n for r in rows}) != 1:
        raise ValueError("rows have differing lengths")
    return BitMat(rows, rows[0].n)


def format_matrix(mat: BitMat) -> str:
    return ",".join(str(r) for r in mat.rows)


def _pivot_bit(word: int) -> int:
    # bit position of the leading (leftmost) 1
    return word.bit_length() - 1


def rref(mat: BitMat) -> tuple[BitMat, tuple[int, ...]]:
    """Reduced row echelon form; zero rows are dropped, pivots are 1-based."""
    n = mat.cols
    rows = [r.word for r in mat.rows]
    pivots = []
    r = 0
    for c in range(n):
        bit = n - 1 - c
        src = next((i for i in range(r, len(rows)) if rows[i] >> bit & 1), None)
        if src is None:
            continue
        rows[r], rows[src] = rows[src], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i] >> bit & 1:
                rows[i] ^= rows[r]
        pivots.append(c + 1)
        r += 1
    return BitMat(tuple(BitVec(n, w) for w in rows[:r]), n), tuple(pivots)


def _cross_pairs(gen: BitMat, pivots: tuple[int, ...]) -> tuple[tuple[int, int], ...]:
    # (pivot, target) for every off-pivot 1; in RREF all such targets are
    # non-pivot columns to the right of the pivot
    pairs = []
    for row, piv in zip(gen.rows, pivots):
        for j in row.support():
            if j != piv:
                pairs.append((piv, j))
    return tuple(sorted(pairs))


@dataclass(frozen=True)
class Subspace:
    """A subspace of F2^n held as its unique RREF generator matrix.

    pivots is the ordered set I of pivot columns; cross_pairs is
    J = {(i, j) : i in I, j not in I, entry 1 at (row of i, j)}.
    """

    gen: BitMat
    pivots: tuple[int, ...]
    cross_pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        reduced, piv = rref(self.gen)
        if reduced != self.gen or piv != self.pivots:
            raise ValueError("generator matrix is not in RREF with these pivots")
        if len(self.gen.rows) != len(self.pivots):
            raise ValueError("rank deficient generator matrix")
        if _cross_pairs(self.gen, self.pivots) != self.cross_pairs:
            raise ValueError("cross_pairs do not match the generator matrix")

    @classmethod
    def from_matrix(cls, mat: BitMat) -> Subspace:
        gen, pivots = rref(mat)
        return cls(gen, pivots, _cross_pairs(gen, pivots))

    @classmethod
    def from_string(cls, text: str) -> Subspace:
        return cls.from_matrix(parse_matrix(text))

    @property
    def n(self) -> int:
        return self.gen.cols

    @property
    def dim(self) -> int:
        return len(self.pivots)

    @property
    def m(self) -> int:
        if self.n != 2 * self.dim:
            raise ValueError(f"dim {self.dim} is not half of {self.n} coordinates")
        return self.dim

    @property
    def copivots(self) -> tuple[int, ...]:
        piv = set(self.pivots)
        return tuple(c for c in range(1, self.n + 1) if c not in piv)

    def elements(self) -> list[BitVec]:
        """All 2^dim members of the subspace."""
        words = [0]
        for row in self.gen.rows:
            words += [w ^ row.word for w in words]
        return [BitVec(self.n, w) for w in words]

    def reduce(self, v: BitVec) -> BitVec:
        """Coset representative of v supported on the non-pivot coordinates."""
        word = v.word
        for row in self.gen.rows:
            if word >> _pivot_bit(row.word) & 1:
                word ^= row.word
        return BitVec(self.n, word)

    def contains(self, v: BitVec) -> bool:
        return self.reduce(v).is_zero()


def orthogonal_complement(W: Subspace) -> Subspace:
    """All vectors with zero dot product against every generator of W."""
    n = W.n
    piv = W.pivots
    free = [c for c in range(1, n + 1) if c not in set(piv)]
    basis = []
    for f in free:
        # kernel vector: 1 at the free column, matching entries at the pivots
        word = 1 << (n - f)
        for row, p in zip(W.gen.rows, piv):
            if row.get(f):
                word |= 1 << (n - p)
        basis.append(BitVec(n, word))
    return Subspace.from_matrix(BitMat(tuple(basis), n))


def enumerate_subspaces(n: int, k: int) -> Iterator[Subspace]:
    """Each k-dim subspace of F2^n exactly once, as RREF matrices.

    Order: pivot column sets lexicographically, then free entries counted as
    binary integers with the lowest (column, row) position varying fastest.
    """
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got ({n}, {k})")
    for pivots in itertools.combinations(range(1, n + 1), k):
        base = [1 << (n - p) for p in pivots]
        pivset = set(pivots)
        positions = sorted(
            ((r, c) for r in range(k) for c in range(pivots[r] + 1, n + 1)
             if c not in pivset),
            key=lambda rc: (rc[1], rc[0]),
        )
        for assign in range(1 << len(positions)):
            rows = list(base)
            for b, (r, c) in enumerate(positions):
                if assign >> b & 1:
                    rows[r] |= 1 << (n - c)
            gen = BitMat(tuple(BitVec(n, w) for w in rows), n)
            yield Subspace(gen, pivots, _cross_pairs(gen, pivots))


def gaussian_binomial(n: int, k: int) -> int:
    """Number of k-dim subspaces of F2^n, as an exact integer."""
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got ({n}, {k})")
    num = math.prod(2 ** (n - j) - 1 for j in range(k))
    den = math.prod(2 ** (k - j) - 1 for j in range(k))
    assert num % den == 0
    return num // den


def matvec(mat: BitMat, v: BitVec) -> BitVec:
    """Matrix-vector product over F2; row r of the result is row_r . v."""
    if v.n != mat.cols:
        raise ValueError("dimension mismatch")
    k = len(mat.rows)
    word = 0
    for r, row in enumerate(mat.rows):
        word |= ((row.word & v.word).bit_count() & 1) << (k - 1 - r)
    return BitVec(k, word)


def invert(mat: BitMat) -> BitMat:
    """Inverse of a square matrix over F2; raises on singular input."""
    k = len(mat.rows)
    if mat.cols != k:
        raise ValueError("matrix is not square")
    rows = [r.word for r in mat.rows]
    aug = [1 << (k - 1 - r) for r in range(k)]
    for c in range(k):
        bit = k - 1 - c
        src = next((i for i in range(c, k) if rows[i] >> bit & 1), None)
        if src is None:
            raise ValueError("matrix is singular")
        rows[c], rows[src] = rows[src], rows[c]
        aug[c], aug[src] = aug[src], aug[c]
        for i in range(k):
            if i != c and rows[i] >> bit & 1:
                rows[i] ^= rows[c]
                aug[i] ^= aug[c]
    return BitMat(tuple(BitVec(k, w) for w in aug), k)


def rank_of_words(words: Iterable[int]) -> int:
    """Rank of a set of packed row vectors."""
    echelon: list[int] = []
    for w in words:
        for row in echelon:
            if w >> _pivot_bit(row) & 1:
                w ^= row
        if w:
            echelon.append(w)
    return len(echelon)


def intersection_dim(W: Subspace, coords: Iterable[int]) -> int:
    """Dimension of the intersection with the span of the given e_i."""
    inside = set(coords)
    mask = 0
    for c in range(1, W.n + 1):
        if c not in inside:
            mask |= 1 << (W.n - c)
    # members supported inside coords = kernel of the projection killing them
    outside_rank = rank_of_words(r.word & mask for r in W.gen.rows)
    return W.dim - outside_rank


def coset_reps(W: Subspace) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Generator indices for the coset transversals: x side I^c, z side I."""
    return W.copivots, W.pivots


def same_coset(W: Subspace, a: BitVec, b: BitVec) -> bool:
    """Whether a + b lies in W."""
    return W.contains(a + b)


def in_dual(W: Subspace, v: BitVec) -> bool:
    """Membership in the dual: v is orthogonal to every generator of W."""
    return all((row.word & v.word).bit_count() % 2 == 0 for row in W.gen.rows)
