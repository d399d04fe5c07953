"""Fundamental forms read off a graph chart.

In graph coordinates x^mu = f^mu(x^alpha), the degree-k homogeneous part of f^mu
is the k-th fundamental form in that section.  Coefficients are stored in the
monomial convention (coefficient of x^alpha x^beta ... in f^mu); the polarized
tensor entry differs by the multinomial factor and is available separately.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from math import factorial
from typing import Sequence

from .models import GraphChart


@dataclass(frozen=True)
class FundForm:
    order: int
    tangent: tuple
    normal: tuple
    coeffs: tuple  # sorted ((mu index, sorted tangent index tuple), Fraction) pairs, nonzero only

    @property
    def table(self) -> dict:
        return dict(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, mu: int, idx: Sequence[int]) -> Fraction:
        return self.table.get((mu, tuple(sorted(idx))), Fraction(0))

    def polarized(self, mu: int, idx: Sequence[int]) -> Fraction:
        """Entry of the symmetric tensor: coefficient / (number of distinct orderings)."""
        key = tuple(sorted(idx))
        c = self.table.get((mu, key), Fraction(0))
        if not c:
            return c
        orderings = factorial(len(key))
        for m in Counter(key).values():
            orderings //= factorial(m)
        return c / orderings

    def serialize(self) -> list[tuple[str, str, str]]:
        out = []
        for (mu, idx), c in self.coeffs:
            out.append((self.normal[mu], "".join(self.tangent[i] for i in idx), str(c)))
        return sorted(out)


def extract(chart: GraphChart, k: int) -> FundForm:
    if k not in (2, 3, 4):
        raise ValueError("only F_2, F_3 and F_4 are extracted")
    coeffs = {}
    for mu, poly in enumerate(chart.polys):
        for mono, c in poly.items():
            if len(mono) == k and c:
                key = (mu, tuple(sorted(mono)))
                coeffs[key] = coeffs.get(key, 0) + Fraction(c)
    items = tuple(sorted((k2, v) for k2, v in coeffs.items() if v))
    return FundForm(k, chart.tangent, chart.normal, items)


def evaluate(F: FundForm, *vectors: Sequence, covector: Sequence | None = None):
    """Fully polarized evaluation F(v_1, ..., v_j, ., ...).

    With j = order the result is a normal vector (list over normal labels), or a
    scalar if a normal covector is supplied.  With j < order the result is the
    partially applied form as a FundForm of order order - j (polarized
    entries, stored back in the monomial convention)."""
    n = len(F.tangent)
    for v in vectors:
        if len(v) != n:
            raise ValueError(f"tangent vectors must have length {n}")
    if len(vectors) > F.order:
        raise ValueError("more vectors than the order of the form")
    if covector is not None and len(covector) != len(F.normal):
        raise ValueError(f"normal covector must have length {len(F.normal)}")
    j = len(vectors)
    rest = F.order - j
    out: dict = {}
    for (mu, idx), _ in F.coeffs:
        entry = F.polarized(mu, idx)
        # sum over all orderings of the index multiset
        for perm in _distinct_perms(idx):
            w = entry
            for v, a in zip(vectors, perm[:j]):
                w *= v[a]
                if not w:
                    break
            if not w:
                continue
            key = (mu, tuple(sorted(perm[j:])))
            out[key] = out.get(key, 0) + w
    if rest == 0:
        vec = [Fraction(0)] * len(F.normal)
        for (mu, _), c in out.items():
            vec[mu] += c
        if covector is not None:
            return sum(Fraction(a) * b for a, b in zip(covector, vec))
        return vec
    # convert polarized partial entries back to monomial coefficients
    coeffs = {}
    for (mu, idx), c in out.items():
        if c:
            coeffs[(mu, idx)] = coeffs.get((mu, idx), 0) + c
    if covector is not None:
        merged = {}
        for (mu, idx), c in coeffs.items():
            merged[(0, idx)] = merged.get((0, idx), 0) + Fraction(covector[mu]) * c
        coeffs = merged
        normal = ("q",)
    else:
        normal = F.normal
    items = tuple(sorted((k, Fraction(v)) for k, v in coeffs.items() if v))
    return FundForm(rest, F.tangent, normal, items)


def _distinct_perms(idx):
    seen = set()
    for p in permutations(idx):
        if p not in seen:
            seen.add(p)
            yield p


def form_from_hessians(frame) -> FundForm:
    """F_2 built directly from stored Hessians, for comparison with extract(chart, 2)."""
    coeffs = {}
    n = frame.n
    for mu, H in enumerate(frame.quadrics):
        for i in range(n):
            if H[i][i]:
                coeffs[(mu, (i, i))] = Fraction(H[i][i]) / 2
            for j in range(i + 1, n):
                if H[i][j]:
                    coeffs[(mu, (i, j))] = Fraction(H[i][j])
    return FundForm(2, frame.tangent, frame.normal, tuple(sorted(coeffs.items())))
