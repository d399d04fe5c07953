"""Exact sparse linear algebra over Q.

Rows are dicts column -> number (int or Fraction).  Elimination is
fraction-free: rows are scaled to primitive integer vectors and combined with
integer multipliers; pivots are always the lowest column index, so results do
not depend on dict or hash ordering.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence

Vec = dict  # column -> number


def _primitive(row: Mapping[int, int | Fraction]) -> dict[int, int]:
    den = 1
    for v in row.values():
        if isinstance(v, Fraction):
            den = lcm(den, v.denominator)
    out = {c: int(v * den) for c, v in row.items() if v}
    g = 0
    for v in out.values():
        g = gcd(g, v)
    if g > 1:
        out = {c: v // g for c, v in out.items()}
    if out and out[min(out)] < 0:
        out = {c: -v for c, v in out.items()}
    return out


def _combine(r: dict[int, int], p: dict[int, int], col: int) -> dict[int, int]:
    """Eliminate column ``col`` of r using pivot row p (integer arithmetic)."""
    a, b = p[col], r[col]
    g = gcd(a, b)
    a, b = a // g, b // g
    out = {c: a * v for c, v in r.items()}
    for c, v in p.items():
        out[c] = out.get(c, 0) - b * v
    return _primitive({c: v for c, v in out.items() if v})


class Echelon:
    """Incremental row-echelon form; supports rank, membership and nullspace."""

    def __init__(self):
        self.pivots: dict[int, dict[int, int]] = {}

    def reduce(self, row: Mapping) -> dict[int, int]:
        r = _primitive(row)
        while r:
            lead = min(r)
            p = self.pivots.get(lead)
            if p is None:
                return r
            r = _combine(r, p, lead)
        return r

    def add(self, row: Mapping) -> bool:
        r = self.reduce(row)
        if not r:
            return False
        self.pivots[min(r)] = r
        return True

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def rref(self) -> dict[int, dict[int, int]]:
        cols = sorted(self.pivots)
        rows = {c: dict(self.pivots[c]) for c in cols}
        for c in reversed(cols):
            pr = rows[c]
            for c2 in cols:
                if c2 != c and c in rows[c2]:
                    rows[c2] = _combine(rows[c2], pr, c)
                    if rows[c2] and min(rows[c2]) != c2:
                        raise ArithmeticError("pivot structure broken during back substitution")
        return rows

    def nullspace(self, ncols: int | Iterable[int]) -> list[dict[int, Fraction]]:
        cols = range(ncols) if isinstance(ncols, int) else list(ncols)
        rows = self.rref()
        basis = []
        for f in cols:
            if f in rows:
                continue
            v = {f: Fraction(1)}
            for pc, pr in rows.items():
                if f in pr:
                    v[pc] = Fraction(-pr[f], pr[pc])
            basis.append(v)
        return basis


def rank(rows: Iterable[Mapping]) -> int:
    e = Echelon()
    for r in rows:
        e.add(r)
    return e.rank


def nullspace(rows: Iterable[Mapping], ncols: int | Iterable[int]) -> list[dict[int, Fraction]]:
    e = Echelon()
    for r in rows:
        e.add(r)
    return e.nullspace(ncols)


def primitive_vector(v: Mapping[int, Fraction]) -> dict[int, int]:
    """Scale a rational vector to coprime integers with positive leading entry."""
    return _primitive(v)


def dense_rows(M: Sequence[Sequence]) -> list[dict[int, Fraction]]:
    return [{j: Fraction(x) for j, x in enumerate(row) if x} for row in M]


def matrix_rank(M: Sequence[Sequence]) -> int:
    return rank(dense_rows(M))


def matrix_kernel(M: Sequence[Sequence]) -> list[list[Fraction]]:
    """Kernel of a dense matrix (columns = unknowns) as dense vectors."""
    n = len(M[0]) if M else 0
    basis = nullspace(dense_rows(M), n)
    return [[v.get(j, Fraction(0)) for j in range(n)] for v in basis]
