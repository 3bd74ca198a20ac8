"""Exact sparse linear algebra over the rationals.

Elimination is fraction-free: every row is scaled to a primitive integer
vector, row operations use integer multipliers, and the content (gcd of the
entries) is divided out after each update to keep coefficients small.
Pivots are chosen column by column, preferring the smallest magnitude entry
and then the sparsest row.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

Vector = list  # dense list of Fraction


@dataclass(frozen=True)
class SparseRationalMatrix:
    rows: int
    cols: int
    entries: dict = field(default_factory=dict)  # (r, c) -> nonzero Fraction

    @classmethod
    def from_triplets(cls, rows: int, cols: int, triplets: Iterable) -> "SparseRationalMatrix":
        """Build from ``(row, col, value)``; colliding positions are summed."""
        acc: dict = defaultdict(Fraction)
        for r, c, v in triplets:
            if not (0 <= r < rows and 0 <= c < cols):
                raise IndexError(f"entry ({r}, {c}) outside {rows}x{cols}")
            acc[(r, c)] += Fraction(v)
        return cls(rows, cols, {k: v for k, v in acc.items() if v != 0})

    @classmethod
    def from_dense(cls, data: Sequence[Sequence]) -> "SparseRationalMatrix":
        nrows = len(data)
        ncols = len(data[0]) if nrows else 0
        trip = ((r, c, v) for r, row in enumerate(data) for c, v in enumerate(row) if v != 0)
        return cls.from_triplets(nrows, ncols, trip)

    @classmethod
    def from_row_vectors(cls, vectors: Sequence[Sequence], cols: int | None = None) -> "SparseRationalMatrix":
        if cols is None:
            cols = len(vectors[0]) if vectors else 0
        trip = ((r, c, v) for r, vec in enumerate(vectors) for c, v in enumerate(vec) if v != 0)
        return cls.from_triplets(len(vectors), cols, trip)

    @classmethod
    def from_column_vectors(cls, vectors: Sequence[Sequence], rows: int | None = None) -> "SparseRationalMatrix":
        return cls.from_row_vectors(vectors, rows).transpose()

    def transpose(self) -> "SparseRationalMatrix":
        return SparseRationalMatrix(self.cols, self.rows, {(c, r): v for (r, c), v in self.entries.items()})

    def row_dicts(self) -> list[dict]:
        out: list[dict] = [dict() for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def to_dense(self) -> list[list[Fraction]]:
        out = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def matvec(self, vec: Sequence) -> list[Fraction]:
        if len(vec) != self.cols:
            raise ValueError(f"vector length {len(vec)} != {self.cols} columns")
        out = [Fraction(0)] * self.rows
        for (r, c), v in self.entries.items():
            if vec[c]:
                out[r] += v * vec[c]
        return out

    @property
    def nnz(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class NullspaceBasis:
    dim_domain: int
    vectors: tuple  # tuple of tuples of Fraction

    @property
    def dim(self) -> int:
        return len(self.vectors)


def _primitive(row: dict) -> dict:
    """Scale a rational sparse row to a primitive integer row, positive leading entry."""
    if not row:
        return {}
    den = 1
    for v in row.values():
        den = lcm(den, Fraction(v).denominator)
    ints = {c: int(Fraction(v) * den) for c, v in row.items() if v != 0}
    return _normalize(ints)


def _normalize(row: dict) -> dict:
    if not row:
        return row
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            break
    lead = row[min(row)]
    if lead < 0:
        g = -g
    if g != 1:
        row = {c: v // g for c, v in row.items()}
    return row


def _combine(row: dict, prow: dict, col: int) -> dict:
    """Integer combination of ``row`` and ``prow`` that cancels ``col``."""
    f, p = row[col], prow[col]
    g = gcd(p, f)
    a, b = p // g, f // g
    new = {c: a * v for c, v in row.items()} if a != 1 else dict(row)
    for c, v in prow.items():
        nv = new.get(c, 0) - b * v
        if nv:
            new[c] = nv
        else:
            new.pop(c, None)
    return _normalize(new)


def echelon(rows: Sequence[dict], ncols: int) -> list[tuple[int, dict]]:
    """Fraction-free row echelon form of sparse rows.

    Returns ``(pivot_col, row)`` pairs in increasing pivot column; every
    returned row is a primitive integer dict whose support lies in columns
    ``>= pivot_col``.
    """
    work: list[dict] = []
    colidx: dict[int, set] = defaultdict(set)
    for r in rows:
        pr = _primitive(r)
        if pr:
            rid = len(work)
            work.append(pr)
            for c in pr:
                colidx[c].add(rid)

    pivots: list[tuple[int, dict]] = []
    for c in range(ncols):
        cand = colidx.get(c)
        if not cand:
            continue
        pid = min(cand, key=lambda r: (abs(work[r][c]), len(work[r]), r))
        prow = work[pid]
        for cc in prow:
            colidx[cc].discard(pid)
        for rid in list(cand):
            old = work[rid]
            new = _combine(old, prow, c)
            for cc in old:
                if cc not in new:
                    colidx[cc].discard(rid)
            for cc in new:
                if cc not in old:
                    colidx[cc].add(rid)
            work[rid] = new
        pivots.append((c, prow))
    return pivots


def rank(m: SparseRationalMatrix) -> int:
    """Exact rank over the rationals."""
    # eliminate along the shorter side
    if m.cols <= m.rows:
        return len(echelon(m.row_dicts(), m.cols))
    t = m.transpose()
    return len(echelon(t.row_dicts(), t.cols))


def _back_substitute(pivots: list[tuple[int, dict]], ncols: int, free_values: dict) -> list[Fraction]:
    x = [Fraction(0)] * ncols
    for c, v in free_values.items():
        x[c] = Fraction(v)
    for c, row in reversed(pivots):
        s = Fraction(0)
        for cc, v in row.items():
            if cc != c and x[cc]:
                s += v * x[cc]
        x[c] = -s / row[c]
    return x


def _integer_scaled(vec: list[Fraction]) -> tuple:
    den = 1
    for v in vec:
        den = lcm(den, v.denominator)
    ints = [int(v * den) for v in vec]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if g > 1:
        ints = [v // g for v in ints]
    return tuple(Fraction(v) for v in ints)


def nullspace(m: SparseRationalMatrix) -> NullspaceBasis:
    """Basis of ker(m), one primitive integer vector per free column."""
    int_rows = [r for r in (_primitive(d) for d in m.row_dicts()) if r]
    pivots = echelon(int_rows, m.cols)
    pivot_cols = {c for c, _ in pivots}
    free = [c for c in range(m.cols) if c not in pivot_cols]
    vectors = tuple(_integer_scaled(_back_substitute(pivots, m.cols, {f: 1})) for f in free)
    assert len(pivots) + len(vectors) == m.cols, "rank-nullity violated"
    # check M v = 0 in integers (rows and vectors are both integral)
    for vec in vectors:
        iv = [int(x) for x in vec]
        for row in int_rows:
            if sum(v * iv[c] for c, v in row.items()):
                raise AssertionError("nullspace vector fails M v = 0")
    return NullspaceBasis(m.cols, vectors)


def solve(m: SparseRationalMatrix, rhs: Sequence) -> list[Fraction] | None:
    """One solution x of m x = rhs (free variables set to zero), or None."""
    if len(rhs) != m.rows:
        raise ValueError("right-hand side length mismatch")
    # augmented column last; a pivot landing there means inconsistency
    rowsd = m.row_dicts()
    for r, v in enumerate(rhs):
        if v != 0:
            rowsd[r][m.cols] = -Fraction(v)
    pivots = echelon(rowsd, m.cols + 1)
    if any(c == m.cols for c, _ in pivots):
        return None
    x = _back_substitute(pivots, m.cols + 1, {m.cols: 1})
    sol = x[: m.cols]
    assert m.matvec(sol) == [Fraction(v) for v in rhs]
    return sol


def span_rank(vectors: Sequence[Sequence]) -> int:
    if not vectors:
        return 0
    return rank(SparseRationalMatrix.from_row_vectors(vectors))


def quotient_dimension(z: NullspaceBasis, b: Sequence[Sequence]) -> int:
    """dim span(Z) - dim span(B), asserting span(B) is contained in span(Z)."""
    zvecs = list(z.vectors)
    rz = span_rank(zvecs)
    if b:
        if span_rank(zvecs + list(b)) != rz:
            raise ValueError("B is not contained in span(Z)")
    return rz - span_rank(b)


class IncrementalBasis:
    """Greedy independent set: ``add`` keeps a vector only if it raises the rank."""

    def __init__(self, dim: int):
        self.dim = dim
        self._pivots: dict[int, dict] = {}
        self.kept: list[tuple] = []

    def reduce(self, vec: Sequence) -> dict:
        row = _primitive({c: v for c, v in enumerate(vec) if v != 0})
        while row:
            lead = min(row)
            prow = self._pivots.get(lead)
            if prow is None:
                break
            row = _combine(row, prow, lead)
        return row

    def contains(self, vec: Sequence) -> bool:
        return not self.reduce(vec)

    def add(self, vec: Sequence) -> bool:
        if len(vec) != self.dim:
            raise ValueError("vector length mismatch")
        row = self.reduce(vec)
        if not row:
            return False
        self._pivots[min(row)] = row
        self.kept.append(tuple(Fraction(v) for v in vec))
        return True

    @property
    def rank(self) -> int:
        return len(self._pivots)
