"""Dense linear algebra over GF(2) with rows packed into Python ints.

Bit i of a row int is column i.  Elimination is deterministic (leftmost
pivot column, topmost row) so every witness this module returns is
reproducible across runs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple


@dataclass(frozen=True)
class BitMatrix:
    """Immutable GF(2) matrix; ``rows[i]`` holds row i, bit j = entry (i, j)."""

    nrows: int
    ncols: int
    rows: Tuple[int, ...]

    def __post_init__(self):
        if len(self.rows) != self.nrows:
            raise ValueError("row count mismatch")
        for r in self.rows:
            if r < 0 or r >> self.ncols:
                raise ValueError("row has bits outside the column range")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "BitMatrix":
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        packed = []
        for row in rows:
            if len(row) != ncols:
                raise ValueError("ragged rows")
            packed.append(sum(1 << j for j, v in enumerate(row) if v & 1))
        return cls(nrows, ncols, tuple(packed))

    @classmethod
    def zero(cls, nrows: int, ncols: int) -> "BitMatrix":
        return cls(nrows, ncols, (0,) * nrows)

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls(n, n, tuple(1 << i for i in range(n)))

    def entry(self, i: int, j: int) -> int:
        if not (0 <= i < self.nrows and 0 <= j < self.ncols):
            raise IndexError((i, j))
        return (self.rows[i] >> j) & 1

    def transpose(self) -> "BitMatrix":
        cols = []
        for j in range(self.ncols):
            c = 0
            for i in range(self.nrows):
                c |= ((self.rows[i] >> j) & 1) << i
            cols.append(c)
        return BitMatrix(self.ncols, self.nrows, tuple(cols))

    def matvec(self, v: int) -> int:
        """Product m·v with v a column vector packed as an int (bit j = coord j)."""
        out = 0
        for i, row in enumerate(self.rows):
            out |= (bit_parity(row & v)) << i
        return out


def bit_parity(x: int) -> int:
    return x.bit_count() & 1


def _echelon(rows: Sequence[int], ncols: int) -> Tuple[List[int], List[int]]:
    """Row echelon form; returns (reduced nonzero rows, pivot columns).

    Pivot search scans columns left to right and rows top to bottom; back
    substitution makes the result fully reduced (RREF).
    """
    work = [r for r in rows]
    out: List[int] = []
    pivots: List[int] = []
    row_at = 0
    for col in range(ncols):
        bit = 1 << col
        pivot = None
        for r in range(row_at, len(work)):
            if work[r] & bit:
                pivot = r
                break
        if pivot is None:
            continue
        work[row_at], work[pivot] = work[pivot], work[row_at]
        for r in range(len(work)):
            if r != row_at and work[r] & bit:
                work[r] ^= work[row_at]
        pivots.append(col)
        row_at += 1
        if row_at == len(work):
            break
    out = work[: len(pivots)]
    return out, pivots


def rank(m: BitMatrix) -> int:
    """GF(2) rank of m."""
    reduced, _ = _echelon(m.rows, m.ncols)
    return len(reduced)


def kernel_basis(m: BitMatrix) -> List[int]:
    """Basis of {v : m·v = 0}, vectors packed as ints over the columns of m.

    One basis vector per non-pivot column, in column order.
    """
    reduced, pivots = _echelon(m.rows, m.ncols)
    pivot_set = set(pivots)
    basis = []
    for free in range(m.ncols):
        if free in pivot_set:
            continue
        v = 1 << free
        for row, p in zip(reduced, pivots):
            if (row >> free) & 1:
                v |= 1 << p
        basis.append(v)
    return basis


def membership(v: int, span: Sequence[int], ncols: int) -> Optional[int]:
    """Express v in the GF(2) span of the given vectors, if possible.

    Returns a coefficient vector packed as an int (bit i set iff span[i] is
    used), or None when v is not in the span.  Vectors are ints over ncols
    columns; bits outside that range are rejected.
    """
    for w in (v, *span):
        if w < 0 or w >> ncols:
            raise ValueError("vector has bits outside the column range")
    nspan = len(span)
    # Augment each spanning vector with a coefficient tag above the column range.
    tagged = [w | (1 << (ncols + i)) for i, w in enumerate(span)]
    residue = v
    coeffs = 0
    # Eliminate left to right against an echelonized span, tracking tags.
    reduced, pivots = _echelon(tagged, ncols)
    for row, p in zip(reduced, pivots):
        if (residue >> p) & 1:
            residue ^= row & ((1 << ncols) - 1)
            coeffs ^= row >> ncols
    if residue:
        return None
    return coeffs & ((1 << nspan) - 1)


def span_rank(span: Sequence[int], ncols: int) -> int:
    reduced, _ = _echelon(span, ncols)
    return len(reduced)


def vec_from_bits(bits: Sequence[int]) -> int:
    return sum(1 << i for i, b in enumerate(bits) if b & 1)


def vec_to_bits(v: int, ncols: int) -> List[int]:
    return [(v >> i) & 1 for i in range(ncols)]
