"""Singular and base loci of quadric systems and the higher order Bertini rules.

Subspaces handed to ``bertini_vanishings`` are coordinate subspaces, given by
tangent basis labels, so that every emitted identity is a statement about
named coefficients r^mu_{alpha beta ...}.
"""
from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Callable, Iterable, Sequence

from .linalg import matrix_kernel, matrix_rank
from .models import Frame

DEFAULT_SAMPLES = 32
DEFAULT_SEED = 20240601


class BertiniHypothesisError(ValueError):
    pass


# ---------------------------------------------------------------------------
# loci


def quadric_singular_space(H) -> list[list[Fraction]]:
    return matrix_kernel(H)


def polar(H, v, w) -> Fraction:
    n = len(H)
    return sum(Fraction(H[i][j]) * v[i] * w[j] for i in range(n) if v[i] for j in range(n) if w[j]) / 2


def in_base_locus(quadrics, v) -> bool:
    return all(polar(H, v, v) == 0 for H in quadrics)


def base_contains_span(quadrics, vectors) -> bool:
    vs = list(vectors)
    return all(polar(H, v, w) == 0 for H in quadrics for i, v in enumerate(vs) for w in vs[i:])


def in_singular_space(H, v) -> bool:
    n = len(H)
    nz = [j for j in range(n) if v[j]]
    if len(nz) == 1:
        (k,) = nz
        return not any(H[i][k] for i in range(n))
    return all(sum(Fraction(H[i][j]) * v[j] for j in range(n)) == 0 for i in range(n))


def unit(n, k):
    return [Fraction(int(i == k)) for i in range(n)]


def coordinate_singular_labels(frame: Frame, q: str) -> list[str]:
    """Tangent basis vectors lying in Sing(q) (zero rows of the Hessian)."""
    H = frame.quadric(q)
    return [lab for k, lab in enumerate(frame.tangent) if not any(H[k])]


# ---------------------------------------------------------------------------
# genericity


@dataclass(frozen=True)
class Genericity:
    q: str
    generic: bool
    rank_q: int
    max_rank: int
    witness: tuple  # coefficients of a max-rank combination
    seed: int
    samples: int

    def describe(self) -> str:
        verdict = "generic" if self.generic else "not generic"
        return (f"q^{{{strip(self.q)}}} {verdict}: rank {self.rank_q}, max sampled rank {self.max_rank} "
                f"({self.samples} samples, seed {self.seed})")


def is_generic_quadric(frame: Frame, q: str, seed: int = DEFAULT_SEED, samples: int = DEFAULT_SAMPLES) -> Genericity:
    rng = random.Random(f"{seed}:{q}:{frame.n}:{frame.a}")
    a = frame.a
    Hq = frame.quadric(q)
    rq = matrix_rank(Hq)
    best, witness = -1, None
    candidates = [tuple(int(i == k) for i in range(a)) for k in range(a)]
    candidates += [tuple(rng.randint(-97, 97) for _ in range(a)) for _ in range(samples)]
    n = frame.n
    for coeffs in candidates:
        M = [[0] * n for _ in range(n)]
        for c, H in zip(coeffs, frame.quadrics):
            if not c:
                continue
            for i in range(n):
                row, Hi = M[i], H[i]
                for j in range(n):
                    if Hi[j]:
                        row[j] += c * Hi[j]
        r = matrix_rank(M)
        if r > best:
            best, witness = r, coeffs
    return Genericity(q, rq == best, rq, best, witness, seed, samples)


# ---------------------------------------------------------------------------
# vanishing statements


def strip(label: str) -> str:
    return label[1:-1] if label.startswith("(") and label.endswith(")") else label


def vec_name(label: str) -> str:
    return f"e{label}" if label.startswith("(") else f"e_{label}"


def monomial_string(normal: str | None, tangent: Sequence[str]) -> str:
    top = "*" if normal is None else strip(normal)
    return f"r^{{{top}}}_{{{''.join(tangent)}}}"


@dataclass(frozen=True)
class Identity:
    order: int
    normal: str | None          # None: every normal direction
    slots: tuple                # tangent labels; None = wildcard
    part: int
    q: str
    L: tuple

    def covers(self, normal: str, tangent: Sequence[str]) -> bool:
        if len(tangent) != self.order:
            return False
        if self.normal is not None and self.normal != normal:
            return False
        need = Counter(s for s in self.slots if s is not None)
        have = Counter(tangent)
        return all(have[k] >= v for k, v in need.items())

    def __str__(self) -> str:
        slots = [s if s is not None else "*" for s in self.slots]
        span = ",".join(vec_name(l) for l in self.L)
        return f"{monomial_string(self.normal, slots)} = 0 [Bertini part {self.part}, q=q^{{{strip(self.q)}}}, L=<{span}>]"


@dataclass
class VanishingSet:
    identities: list = field(default_factory=list)
    hypotheses: list = field(default_factory=list)

    def add(self, other: "VanishingSet"):
        seen = set(self.identities)
        for i in other.identities:
            if i not in seen:
                self.identities.append(i)
                seen.add(i)
        self.hypotheses.extend(h for h in other.hypotheses if h not in self.hypotheses)

    def covers(self, normal: str, tangent: Sequence[str]) -> Identity | None:
        for ident in self.identities:
            if ident.covers(normal, tangent):
                return ident
        return None

    def strings(self) -> list[str]:
        return [str(i) for i in self.identities]

    def monomials(self, frame: Frame, order: int) -> set:
        """Expand to concrete (normal, sorted tangent tuple) pairs."""
        pos = {l: k for k, l in enumerate(frame.tangent)}
        out = set()
        for ident in self.identities:
            if ident.order != order:
                continue
            fixed = [s for s in ident.slots if s is not None]
            free = len(ident.slots) - len(fixed)
            normals = frame.normal if ident.normal is None else (ident.normal,)
            for rest in combinations_with_replacement(frame.tangent, free):
                t = tuple(sorted(fixed + list(rest), key=pos.__getitem__))
                for mu in normals:
                    out.add((mu, t))
        return out

    def __len__(self):
        return len(self.identities)


def _patterns(L: Sequence[str], k: int, wild: int):
    for combo in combinations_with_replacement(L, k):
        yield tuple(combo) + (None,) * wild


def bertini_vanishings(frame: Frame, q: str, L: Sequence[str], max_order: int = 3, parts: Iterable[int] = (1, 2),
                       *, f3_vanishes: Callable[[str, tuple], bool] | None = None,
                       seed: int = DEFAULT_SEED, samples: int = DEFAULT_SAMPLES,
                       genericity: Genericity | None = None) -> VanishingSet:
    """Identities licensed by the requested parts of the theorem.

    Part 1 needs q generic and L inside Sing(q); part 2 needs L inside
    Sing(q) and the base locus; parts 3 and 4 (order 4) reuse L and need
    ``f3_vanishes(normal, tangent_tuple)`` to certify the order-3 hypotheses on
    L (base locus of F_3, resp. singular locus of F_3^q)."""
    parts = sorted(set(parts))
    if q not in frame.normal:
        raise BertiniHypothesisError(f"q^{{{strip(q)}}} is not a quadric of the system")
    unknown = [l for l in L if l not in frame.tangent]
    if unknown:
        raise BertiniHypothesisError(f"unknown tangent labels {unknown}")
    n = frame.n
    H = frame.quadric(q)
    vecs = [unit(n, frame.tangent.index(l)) for l in L]
    out = VanishingSet()
    not_sing = [l for l, v in zip(L, vecs) if not in_singular_space(H, v)]
    if not_sing:
        raise BertiniHypothesisError(f"L is not inside Sing(q^{{{strip(q)}}}): {', '.join(vec_name(l) for l in not_sing)}")
    span = "<" + ",".join(vec_name(l) for l in L) + ">"
    out.hypotheses.append(f"{span} in Sing(q^{{{strip(q)}}})")
    if 1 in parts:
        g = genericity or is_generic_quadric(frame, q, seed, samples)
        if not g.generic:
            raise BertiniHypothesisError(f"part 1 needs a generic quadric; {g.describe()}")
        out.hypotheses.append(g.describe())
        for k in range(3, max_order + 1):
            for pat in _patterns(L, k, 0):
                out.identities.append(Identity(k, None, pat, 1, q, tuple(L)))
    if parts and max(parts) >= 2:
        if not base_contains_span(frame.quadrics, vecs):
            raise BertiniHypothesisError(f"L = {span} is not inside the base locus of |II|")
        out.hypotheses.append(f"{span} in Base|II|")
    if 2 in parts and max_order >= 3:
        for pat in _patterns(L, 2, 1):
            out.identities.append(Identity(3, q, pat, 2, q, tuple(L)))
    if (3 in parts or 4 in parts) and max_order >= 4:
        if f3_vanishes is None:
            raise BertiniHypothesisError("parts 3 and 4 need the order-3 vanishing facts")
        # part 3: L' = L inside Base{II, F_3}: F_3(u, v, w) = 0 for u, v, w in L
        missing = [(mu, t) for t in combinations_with_replacement(L, 3) for mu in frame.normal
                   if not f3_vanishes(mu, t)]
        if missing:
            mu, t = missing[0]
            raise BertiniHypothesisError(f"L is not in Base(F_3): {monomial_string(mu, t)} is not known to vanish")
        out.hypotheses.append(f"{span} in Base(F_3)")
        if 3 in parts:
            for pat in _patterns(L, 3, 1):
                out.identities.append(Identity(4, q, pat, 3, q, tuple(L)))
        if 4 in parts:
            missing = [(l, t) for l in L for t in combinations_with_replacement(frame.tangent, 2)
                       if not f3_vanishes(q, tuple([l]) + t)]
            if missing:
                l, t = missing[0]
                raise BertiniHypothesisError(
                    f"L is not in Sing(F_3^q): {monomial_string(q, (l,) + t)} is not known to vanish")
            out.hypotheses.append(f"{span} in Sing(F_3^{{{strip(q)}}})")
            for pat in _patterns(L, 2, 2):
                out.identities.append(Identity(4, q, pat, 4, q, tuple(L)))
    return out


def coordinate_cliques(frame: Frame, q: str) -> list[tuple[str, ...]]:
    """Maximal coordinate subspaces of Sing(q) contained in the base locus."""
    import networkx as nx

    sing = coordinate_singular_labels(frame, q)
    pos = {l: k for k, l in enumerate(frame.tangent)}
    n = frame.n
    ok = [l for l in sing if in_base_locus(frame.quadrics, unit(n, pos[l]))]
    G = nx.Graph()
    G.add_nodes_from(ok)
    for i, u in enumerate(ok):
        for v in ok[i + 1:]:
            if all(H[pos[u]][pos[v]] == 0 for H in frame.quadrics):
                G.add_edge(u, v)
    cliques = [tuple(sorted(c, key=pos.__getitem__)) for c in nx.find_cliques(G)]
    return sorted(cliques, key=lambda c: (-len(c), [pos[x] for x in c]))
