"""Composition algebras by Cayley-Dickson doubling, with integer structure constants.

Elements are coordinate tuples over the real basis 1, eps_1, ..., eps_p.  The
doubling rule is (a, b)(c, d) = (ac - conj(d) b, d a + b conj(c)).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product


def _conj(x):
    return (x[0],) + tuple(-v for v in x[1:])


def _mul(x, y):
    n = len(x)
    if n == 1:
        return (x[0] * y[0],)
    h = n // 2
    a, b, c, d = x[:h], x[h:], y[:h], y[h:]
    left = tuple(u - v for u, v in zip(_mul(a, c), _mul(_conj(d), b)))
    right = tuple(u + v for u, v in zip(_mul(d, a), _mul(b, _conj(c))))
    return left + right


@dataclass(frozen=True)
class CompAlgebra:
    dim: int

    def __post_init__(self):
        if self.dim not in (1, 2, 4, 8):
            raise ValueError(f"composition algebras exist only in dimensions 1, 2, 4, 8 (got {self.dim})")

    @property
    def p(self) -> int:
        return self.dim - 1

    def unit(self, k: int) -> tuple:
        return tuple(int(i == k) for i in range(self.dim))

    def mul(self, x, y) -> tuple:
        return _mul(tuple(x), tuple(y))

    def conj(self, x) -> tuple:
        return _conj(tuple(x))

    def norm(self, x):
        return sum(v * v for v in x)

    @cached_property
    def table(self) -> tuple:
        """table[i][j] = (sign, k) with eps_i eps_j = sign * eps_k (eps_0 = 1)."""
        rows = []
        for i in range(self.dim):
            row = []
            for j in range(self.dim):
                z = self.mul(self.unit(i), self.unit(j))
                k = next(t for t, v in enumerate(z) if v)
                row.append((z[k], k))
            rows.append(tuple(row))
        return tuple(rows)

    def associator(self, x, y, z) -> tuple:
        a = self.mul(self.mul(x, y), z)
        b = self.mul(x, self.mul(y, z))
        return tuple(u - v for u, v in zip(a, b))

    def is_associative(self) -> bool:
        units = [self.unit(i) for i in range(self.dim)]
        return all(not any(self.associator(x, y, z)) for x, y, z in product(units, repeat=3))

    def is_commutative(self) -> bool:
        return all(self.table[i][j] == self.table[j][i] for i in range(self.dim) for j in range(self.dim))


def composition_algebra(dim: int) -> CompAlgebra:
    return CompAlgebra(dim)
