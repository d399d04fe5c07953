"""Formal characters and the decomposition algorithms behind every table.

Freudenthal multiplicities, the Weyl dimension formula, Klimyk tensor
products, Adams operations and Newton's identities for symmetric/exterior
powers.  All multiplicities are Python integers.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import prod
from typing import Iterable, Iterator, Mapping

from .weights import (FactorRootData, ReductiveRank, RootData, Weight, WeightError,
                      build_root_data, dot_dominant, format_weight, is_dominant)

Key = tuple  # (coords, charges)


class CharacterError(ValueError):
    pass


def _key(w: Weight) -> Key:
    return (w.coords, w.charges)


class FormalCharacter:
    """Finite multiset of weights with nonzero integer multiplicities."""

    __slots__ = ("rank", "data")

    def __init__(self, rank: ReductiveRank, data: Mapping[Key, int] | None = None):
        self.rank = rank
        self.data: dict[Key, int] = {k: v for k, v in (data or {}).items() if v}

    @classmethod
    def from_weights(cls, rank: ReductiveRank, weights: Iterable[Weight]) -> "FormalCharacter":
        d: dict[Key, int] = defaultdict(int)
        for w in weights:
            d[_key(w)] += 1
        return cls(rank, d)

    def weight(self, k: Key) -> Weight:
        return Weight(k[0], k[1], self.rank)

    def items(self) -> Iterator[tuple[Weight, int]]:
        for k, v in self.data.items():
            yield self.weight(k), v

    def __getitem__(self, w: Weight) -> int:
        return self.data.get(_key(w), 0)

    def __len__(self) -> int:
        return len(self.data)

    def __eq__(self, other) -> bool:
        return isinstance(other, FormalCharacter) and self.data == other.data

    def mass(self) -> int:
        return sum(self.data.values())

    def is_virtual(self) -> bool:
        return any(v < 0 for v in self.data.values())

    def __add__(self, other: "FormalCharacter") -> "FormalCharacter":
        d = dict(self.data)
        for k, v in other.data.items():
            d[k] = d.get(k, 0) + v
        return FormalCharacter(self.rank, d)

    def __neg__(self) -> "FormalCharacter":
        return FormalCharacter(self.rank, {k: -v for k, v in self.data.items()})

    def __sub__(self, other: "FormalCharacter") -> "FormalCharacter":
        return self + (-other)

    def scale(self, c: int) -> "FormalCharacter":
        return FormalCharacter(self.rank, {k: c * v for k, v in self.data.items()})

    def __mul__(self, other: "FormalCharacter") -> "FormalCharacter":
        d: dict[Key, int] = defaultdict(int)
        for (c1, q1), m1 in self.data.items():
            for (c2, q2), m2 in other.data.items():
                k = (tuple(a + b for a, b in zip(c1, c2)), tuple(a + b for a, b in zip(q1, q2)))
                d[k] += m1 * m2
        return FormalCharacter(self.rank, d)

    def dual(self) -> "FormalCharacter":
        return FormalCharacter(self.rank, {(tuple(-a for a in c), tuple(-a for a in q)): v
                                           for (c, q), v in self.data.items()})

    def exact_div(self, k: int) -> "FormalCharacter":
        d = {}
        for key, v in self.data.items():
            if v % k:
                raise CharacterError(f"Newton recursion: multiplicity {v} not divisible by {k}")
            d[key] = v // k
        return FormalCharacter(self.rank, d)

    def dominant_part(self) -> dict[Key, int]:
        return {k: v for k, v in self.data.items() if all(c >= 0 for c in k[0])}

    def is_weyl_invariant(self, rd: RootData | None = None) -> bool:
        rd = rd or build_root_data(self.rank)
        for (c, q), v in self.data.items():
            for i in range(self.rank.semisimple_rank):
                a = rd.simple_root(i).coords
                s = tuple(x - c[i] * y for x, y in zip(c, a))
                if self.data.get((s, q), 0) != v:
                    return False
        return True


def trivial_character(rank: ReductiveRank, charges=None) -> FormalCharacter:
    z = rank.zero()
    if charges is not None:
        z = z.with_charges(charges)
    return FormalCharacter(rank, {_key(z): 1})


# ---------------------------------------------------------------- per-factor kernels

def _to_root_coords(fr: FactorRootData, v) -> tuple[Fraction, ...]:
    g = fr.gram  # inverse Cartan matrix
    n = fr.rank
    return tuple(sum((g[i][j] * v[j] for j in range(n)), Fraction(0)) for i in range(n))


def _height(fr: FactorRootData, v) -> Fraction:
    return sum(_to_root_coords(fr, v), Fraction(0))


def _reflect_plain(fr: FactorRootData, coords) -> tuple[int, ...]:
    c = list(coords)
    n = fr.rank
    A = fr.cartan
    while True:
        i = next((k for k in range(n) if c[k] < 0), None)
        if i is None:
            return tuple(c)
        x = c[i]
        for j in range(n):
            c[j] -= x * A[j][i]


@lru_cache(maxsize=None)
def dominant_multiplicities(fr: FactorRootData, lam: tuple[int, ...]) -> dict[tuple[int, ...], int]:
    """Freudenthal recursion for the dominant weights of the simple-factor irrep lam."""
    if any(c < 0 for c in lam):
        raise WeightError(f"highest weight {lam} is not dominant")
    n = fr.rank
    pos = fr.positive_roots
    # collect dominant weights below lam by subtracting positive roots
    seen = {lam}
    stack = [lam]
    while stack:
        mu = stack.pop()
        for a in pos:
            nu = tuple(x - y for x, y in zip(mu, a))
            if all(x >= 0 for x in nu) and nu not in seen:
                seen.add(nu)
                stack.append(nu)
    order = sorted(seen, key=lambda mu: (-_height(fr, mu), mu), reverse=True)
    order.sort(key=lambda mu: _height(fr, mu), reverse=True)
    rho = fr.rho
    lr = tuple(x + 1 for x in lam)
    top = fr.inner(lr, lr)
    mult: dict[tuple[int, ...], int] = {lam: 1}

    def m_of(v):
        return mult.get(_reflect_plain(fr, v), 0)

    for mu in order:
        if mu == lam:
            continue
        mr = tuple(x + 1 for x in mu)
        denom = top - fr.inner(mr, mr)
        num = Fraction(0)
        for a in pos:
            k = 1
            while True:
                v = tuple(x + k * y for x, y in zip(mu, a))
                m = m_of(v)
                if not m:
                    break
                num += m * fr.inner(v, a)
                k += 1
        val = 2 * num / denom
        if val.denominator != 1:
            raise CharacterError(f"Freudenthal produced non-integer multiplicity {val}")
        if val:
            mult[mu] = int(val)
    return mult


def weyl_orbit(fr: FactorRootData, mu: tuple[int, ...]) -> list[tuple[int, ...]]:
    A = fr.cartan
    n = fr.rank
    orbit = {mu}
    queue = [mu]
    while queue:
        w = queue.pop()
        for i in range(n):
            if w[i] > 0:
                s = tuple(w[j] - w[i] * A[j][i] for j in range(n))
                if s not in orbit:
                    orbit.add(s)
                    queue.append(s)
    return sorted(orbit)


@lru_cache(maxsize=None)
def factor_character(fr: FactorRootData, lam: tuple[int, ...]) -> dict[tuple[int, ...], int]:
    full: dict[tuple[int, ...], int] = {}
    for mu, m in dominant_multiplicities(fr, lam).items():
        for w in weyl_orbit(fr, mu):
            full[w] = m
    return full


def factor_dimension(fr: FactorRootData, lam: tuple[int, ...]) -> int:
    num = Fraction(1)
    lr = tuple(x + 1 for x in lam)
    for a in fr.positive_roots:
        num *= fr.inner(lr, a) / fr.inner(fr.rho, a)
    if num.denominator != 1:
        raise CharacterError("Weyl dimension formula gave a non-integer")
    return int(num)


# ---------------------------------------------------------------- public operations

def _check_dominant(lam: Weight):
    if not is_dominant(lam):
        raise WeightError(f"{format_weight(lam) if lam.rank else lam} is not dominant")


def weyl_dimension(rd: RootData, lam: Weight) -> int:
    _check_dominant(lam)
    blocks = rd.rank.split(lam.coords)
    return prod(factor_dimension(fr, b) for fr, b in zip(rd.factors, blocks))


def _product_over_factors(rd: RootData, per_factor: list[dict], charges) -> dict[Key, int]:
    out: dict[Key, int] = {((), charges): 1}
    for table in per_factor:
        nxt: dict[Key, int] = {}
        for (c, q), m in out.items():
            for w, mw in table.items():
                nxt[(c + w, q)] = m * mw
        out = nxt
    return out


def irr_character(rd: RootData, lam: Weight) -> FormalCharacter:
    _check_dominant(lam)
    blocks = rd.rank.split(lam.coords)
    tables = [factor_character(fr, b) for fr, b in zip(rd.factors, blocks)]
    return FormalCharacter(rd.rank, _product_over_factors(rd, tables, lam.charges))


def irr_dominant(rd: RootData, lam: Weight) -> dict[Key, int]:
    _check_dominant(lam)
    blocks = rd.rank.split(lam.coords)
    tables = [dominant_multiplicities(fr, b) for fr, b in zip(rd.factors, blocks)]
    return _product_over_factors(rd, tables, lam.charges)


def decomposition_key(rd: RootData, k: Key):
    """Total order for peeling: rho-height (strictly monotone for dominance), then lex, then charges."""
    blocks = rd.rank.split(k[0])
    h = sum((_height(fr, b) for fr, b in zip(rd.factors, blocks)), Fraction(0))
    return (h, k[0], k[1])


@dataclass
class IrrSum:
    """Multiset of irreducibles: dominant weight -> positive multiplicity."""
    rank: ReductiveRank
    data: dict[Key, int] = field(default_factory=dict)

    def __post_init__(self):
        self.data = {k: v for k, v in self.data.items() if v}
        for k, v in self.data.items():
            if any(c < 0 for c in k[0]):
                raise CharacterError(f"IrrSum key {k} is not dominant")
            if v < 0:
                raise CharacterError(f"IrrSum multiplicity {v} is negative")

    @classmethod
    def of(cls, rank: ReductiveRank, weights: Iterable[Weight]) -> "IrrSum":
        d: dict[Key, int] = defaultdict(int)
        for w in weights:
            d[_key(w)] += 1
        return cls(rank, dict(d))

    def weights(self) -> list[Weight]:
        rd = build_root_data(self.rank)
        return [Weight(k[0], k[1], self.rank)
                for k in sorted(self.data, key=lambda k: decomposition_key(rd, k), reverse=True)]

    def items(self) -> list[tuple[Weight, int]]:
        return [(w, self.data[_key(w)]) for w in self.weights()]

    def __getitem__(self, w: Weight) -> int:
        return self.data.get(_key(w), 0)

    def __contains__(self, w: Weight) -> bool:
        return _key(w) in self.data

    def __eq__(self, other) -> bool:
        return isinstance(other, IrrSum) and self.data == other.data

    def __len__(self) -> int:
        return len(self.data)

    def count(self) -> int:
        """Number of irreducible summands, with multiplicity."""
        return sum(self.data.values())

    def __add__(self, other: "IrrSum") -> "IrrSum":
        d = dict(self.data)
        for k, v in other.data.items():
            d[k] = d.get(k, 0) + v
        return IrrSum(self.rank, d)

    def minus(self, other: "IrrSum") -> "IrrSum":
        d = dict(self.data)
        for k, v in other.data.items():
            d[k] = d.get(k, 0) - v
            if d[k] < 0:
                raise CharacterError(f"cannot remove {v} copies of {format_weight(Weight(k[0], k[1], self.rank))}")
        return IrrSum(self.rank, d)

    def intersect(self, other: "IrrSum") -> "IrrSum":
        return IrrSum(self.rank, {k: min(v, other.data[k]) for k, v in self.data.items() if k in other.data})

    def dimension(self, rd: RootData | None = None) -> int:
        rd = rd or build_root_data(self.rank)
        return sum(v * weyl_dimension(rd, Weight(k[0], k[1], self.rank)) for k, v in self.data.items())

    def character(self, rd: RootData | None = None) -> FormalCharacter:
        rd = rd or build_root_data(self.rank)
        out = FormalCharacter(self.rank)
        for w, m in self.items():
            out = out + irr_character(rd, w).scale(m)
        return out

    def serialize(self, rd: RootData | None = None) -> list[tuple[str, int, int]]:
        """Sorted (weight string, multiplicity, dimension) triples."""
        rd = rd or build_root_data(self.rank)
        rows = [(format_weight(w), m, weyl_dimension(rd, w)) for w, m in self.items()]
        return sorted(rows)

    def semisimple(self) -> "IrrSum":
        d: dict[Key, int] = defaultdict(int)
        for (c, q), v in self.data.items():
            d[(c, tuple(Fraction(0) for _ in q))] += v
        return IrrSum(self.rank, dict(d))


def decompose(chi: FormalCharacter, rd: RootData | None = None) -> IrrSum:
    """Peel off maximal dominant weights until nothing remains."""
    rd = rd or build_root_data(chi.rank)
    if chi.is_virtual():
        raise CharacterError("not a genuine character: negative multiplicities in input")
    rem = chi.dominant_part()
    out: dict[Key, int] = {}
    while rem:
        top = max(rem, key=lambda k: decomposition_key(rd, k))
        m = rem[top]
        if m < 0:
            raise CharacterError("not a genuine character: remainder went negative")
        out[top] = m
        for k, v in irr_dominant(rd, Weight(top[0], top[1], chi.rank)).items():
            r = rem.get(k, 0) - m * v
            if r < 0:
                raise CharacterError("not a genuine character: remainder went negative")
            if r:
                rem[k] = r
            else:
                rem.pop(k, None)
    return IrrSum(chi.rank, out)


def tensor_decompose(rd: RootData, lam: Weight, mu: Weight) -> IrrSum:
    """Klimyk's formula: reflect mu + nu + rho over the weights nu of irr(lam)."""
    _check_dominant(lam)
    _check_dominant(mu)
    if weyl_dimension(rd, lam) > weyl_dimension(rd, mu):
        lam, mu = mu, lam
    acc: dict[Key, int] = defaultdict(int)
    charges = tuple(a + b for a, b in zip(lam.charges, mu.charges))
    for (c, _), m in irr_character(rd, lam).data.items():
        res = dot_dominant(tuple(a + b for a, b in zip(mu.coords, c)), rd)
        if res is None:
            continue
        dom, sign = res
        acc[(dom, charges)] += sign * m
    if any(v < 0 for v in acc.values()):
        raise CharacterError("Klimyk produced a negative multiplicity")
    return IrrSum(rd.rank, dict(acc))


def tensor_irrsums(rd: RootData, a: IrrSum, b: IrrSum) -> IrrSum:
    out = IrrSum(rd.rank)
    for w1, m1 in a.items():
        for w2, m2 in b.items():
            t = tensor_decompose(rd, w1, w2)
            out = out + IrrSum(rd.rank, {k: v * m1 * m2 for k, v in t.data.items()})
    return out


def adams(chi: FormalCharacter, k: int) -> FormalCharacter:
    if k < 1:
        raise ValueError("Adams operation needs k >= 1")
    return FormalCharacter(chi.rank, {(tuple(k * a for a in c), tuple(k * a for a in q)): v
                                      for (c, q), v in chi.data.items()})


def _newton(chi: FormalCharacter, k: int, signed: bool) -> FormalCharacter:
    if k < 0:
        raise ValueError("power must be >= 0")
    powers = [trivial_character(chi.rank)]
    for j in range(1, k + 1):
        acc = FormalCharacter(chi.rank)
        for i in range(1, j + 1):
            term = adams(chi, i) * powers[j - i]
            acc = acc - term if (signed and i % 2 == 0) else acc + term
        powers.append(acc.exact_div(j))
    return powers[k]


def sym_power(chi: FormalCharacter, k: int) -> FormalCharacter:
    return _newton(chi, k, signed=False)


def ext_power(chi: FormalCharacter, k: int) -> FormalCharacter:
    return _newton(chi, k, signed=True)


def sym_power_decompose(rd: RootData, src: Weight | IrrSum, k: int) -> IrrSum:
    chi = irr_character(rd, src) if isinstance(src, Weight) else src.character(rd)
    return decompose(sym_power(chi, k), rd)


def cartan_component(lam: Weight, mu: Weight) -> Weight:
    _check_dominant(lam)
    _check_dominant(mu)
    return lam + mu
