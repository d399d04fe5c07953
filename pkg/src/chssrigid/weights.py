"""Root data and weight-lattice arithmetic for (A/D simple factors) + central torus.

Weights are stored in the fundamental-weight basis (Bourbaki numbering), one
integer block per simple factor, followed by exact rational central charges.
Nothing in this module touches floating point.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, Sequence


class WeightError(ValueError):
    pass


@dataclass(frozen=True)
class SimpleFactor:
    series: str
    rank: int
    name: str | None = None

    def __post_init__(self):
        if self.series not in ("A", "D"):
            raise WeightError(f"unsupported series {self.series!r} (only A and D)")
        if self.rank < 1:
            raise WeightError(f"rank must be positive, got {self.rank}")
        if self.series == "D" and self.rank < 3:
            raise WeightError(f"type D needs rank >= 3, got D{self.rank}")

    @property
    def type_label(self) -> str:
        return f"{self.series}{self.rank}"

    @property
    def label(self) -> str:
        return f"{self.name}({self.type_label})" if self.name else self.type_label


@dataclass(frozen=True)
class ReductiveRank:
    factors: tuple[SimpleFactor, ...]
    torus_dim: int = 0

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        if self.torus_dim < 0:
            raise WeightError("torus_dim must be nonnegative")

    @property
    def semisimple_rank(self) -> int:
        return sum(f.rank for f in self.factors)

    @property
    def length(self) -> int:
        return self.semisimple_rank + self.torus_dim

    def offsets(self) -> list[int]:
        out, k = [], 0
        for f in self.factors:
            out.append(k)
            k += f.rank
        return out

    def split(self, coords: Sequence[int]) -> list[tuple[int, ...]]:
        out, k = [], 0
        for f in self.factors:
            out.append(tuple(coords[k:k + f.rank]))
            k += f.rank
        return out

    def factor_of(self, i: int) -> tuple[int, int]:
        """Global simple-root index -> (factor index, local index)."""
        for fi, f in enumerate(self.factors):
            if i < f.rank:
                return fi, i
            i -= f.rank
        raise IndexError(i)

    def weight(self, *blocks: Sequence[int], charges: Sequence = ()) -> "Weight":
        if len(blocks) != len(self.factors):
            raise WeightError(f"expected {len(self.factors)} factor blocks, got {len(blocks)}")
        coords: list[int] = []
        for f, b in zip(self.factors, blocks):
            if len(b) != f.rank:
                raise WeightError(f"factor {f.label} needs {f.rank} coordinates, got {len(b)}")
            coords.extend(int(c) for c in b)
        return Weight(tuple(coords), tuple(Fraction(c) for c in charges), self)

    def zero(self) -> "Weight":
        return Weight((0,) * self.semisimple_rank, (Fraction(0),) * self.torus_dim, self)

    def fingerprint(self) -> str:
        return ";".join(f.label for f in self.factors) + f"|t{self.torus_dim}"


@dataclass(frozen=True)
class Weight:
    coords: tuple[int, ...]
    charges: tuple[Fraction, ...] = ()
    rank: ReductiveRank | None = field(default=None, compare=False, hash=False, repr=False)

    def __post_init__(self):
        if self.rank is not None:
            if len(self.coords) != self.rank.semisimple_rank or len(self.charges) != self.rank.torus_dim:
                raise WeightError("weight coordinate lengths do not match the reductive rank")

    def __add__(self, other: "Weight") -> "Weight":
        return Weight(tuple(a + b for a, b in zip(self.coords, other.coords)),
                      tuple(a + b for a, b in zip(self.charges, other.charges)),
                      self.rank or other.rank)

    def __sub__(self, other: "Weight") -> "Weight":
        return self + (-other)

    def __neg__(self) -> "Weight":
        return Weight(tuple(-a for a in self.coords), tuple(-a for a in self.charges), self.rank)

    def scale(self, k: int) -> "Weight":
        return Weight(tuple(k * a for a in self.coords), tuple(k * a for a in self.charges), self.rank)

    def with_charges(self, charges: Sequence) -> "Weight":
        return Weight(self.coords, tuple(Fraction(c) for c in charges), self.rank)

    def semisimple(self) -> "Weight":
        """Forget central charges (zeroes them)."""
        return Weight(self.coords, tuple(Fraction(0) for _ in self.charges), self.rank)

    def sort_key(self):
        return (self.coords, self.charges)

    def __str__(self) -> str:
        if self.rank is None:
            return f"{list(self.coords)} @ {format_charges(self.charges)}"
        return format_weight(self)


def is_dominant(w: Weight) -> bool:
    return all(c >= 0 for c in w.coords)


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_charges(charges: Sequence[Fraction]) -> str:
    return "(" + ",".join(format_rational(c) for c in charges) + ")"


def format_weight(w: Weight) -> str:
    rank = w.rank
    blocks = [f"{f.label}[{','.join(str(c) for c in b)}]"
              for f, b in zip(rank.factors, rank.split(w.coords))]
    s = " * ".join(blocks)
    if rank.torus_dim:
        s = (s + " @ " if s else "@ ") + format_charges(w.charges)
    return s


_BLOCK = re.compile(r"^(?:(?P<name>[A-Za-z_][\w']*)\((?P<t1>[AD])(?P<r1>\d+)\)|(?P<t2>[AD])(?P<r2>\d+))"
                    r"\[(?P<coords>[-\d,\s]*)\]$")


def parse_weight(text: str) -> Weight:
    """Parse ``A1[j] * B(A2)[i,k] @ (c1,...)``; inverse of :func:`format_weight`."""
    text = text.strip()
    charges: tuple[Fraction, ...] = ()
    if "@" in text:
        head, _, tail = text.partition("@")
        tail = tail.strip()
        if not (tail.startswith("(") and tail.endswith(")")):
            raise WeightError(f"bad charge block in {text!r}")
        inner = tail[1:-1].strip()
        charges = tuple(Fraction(p.strip()) for p in inner.split(",")) if inner else ()
        text = head.strip()
    factors, coords = [], []
    if text:
        for block in text.split("*"):
            m = _BLOCK.match(block.strip())
            if not m:
                raise WeightError(f"cannot parse factor block {block.strip()!r}")
            series = m["t1"] or m["t2"]
            r = int(m["r1"] or m["r2"])
            f = SimpleFactor(series, r, m["name"])
            cs = [int(c) for c in m["coords"].split(",") if c.strip()]
            if len(cs) != r:
                raise WeightError(f"factor {f.label} needs {r} coordinates, got {len(cs)}")
            factors.append(f)
            coords.extend(cs)
    rank = ReductiveRank(tuple(factors), len(charges))
    return Weight(tuple(coords), charges, rank)


# ---------------------------------------------------------------- root data

def cartan_matrix(series: str, n: int) -> tuple[tuple[int, ...], ...]:
    """Bourbaki-numbered Cartan matrix, A[i][j] = <alpha_i^vee, alpha_j>."""
    A = [[0] * n for _ in range(n)]
    for i in range(n):
        A[i][i] = 2
    if series == "A":
        for i in range(n - 1):
            A[i][i + 1] = A[i + 1][i] = -1
    elif series == "D":
        for i in range(n - 2):
            A[i][i + 1] = A[i + 1][i] = -1
        # node n is attached to node n-2
        A[n - 3][n - 1] = A[n - 1][n - 3] = -1
    else:
        raise WeightError(f"unsupported series {series!r}")
    return tuple(tuple(r) for r in A)


def _invert(M: Sequence[Sequence[int]]) -> list[list[Fraction]]:
    n = len(M)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    for c in range(n):
        p = next(r for r in range(c, n) if a[r][c] != 0)
        a[c], a[p] = a[p], a[c]
        piv = a[c][c]
        a[c] = [x / piv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c] != 0:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [row[n:] for row in a]


@dataclass(frozen=True)
class FactorRootData:
    factor: SimpleFactor
    cartan: tuple[tuple[int, ...], ...]

    @cached_property
    def rank(self) -> int:
        return self.factor.rank

    @cached_property
    def simple_roots(self) -> tuple[tuple[int, ...], ...]:
        # in fundamental-weight coordinates alpha_j = sum_i A[i][j] omega_i
        n = self.rank
        return tuple(tuple(self.cartan[i][j] for i in range(n)) for j in range(n))

    @cached_property
    def fundamental_weights(self) -> tuple[tuple[int, ...], ...]:
        n = self.rank
        return tuple(tuple(int(i == j) for i in range(n)) for j in range(n))

    @cached_property
    def rho(self) -> tuple[int, ...]:
        return (1,) * self.rank

    @cached_property
    def gram(self) -> tuple[tuple[Fraction, ...], ...]:
        """(omega_i, omega_j) with roots normalised to length 2 (simply laced)."""
        return tuple(tuple(r) for r in _invert(self.cartan))

    @cached_property
    def positive_roots_simple(self) -> tuple[tuple[int, ...], ...]:
        """Positive roots in simple-root coordinates, sorted by height then lex."""
        n, A = self.rank, self.cartan
        simple = [tuple(int(i == j) for i in range(n)) for j in range(n)]
        roots = set(simple)
        layer = list(simple)
        while layer:
            nxt = []
            for r in layer:
                for j in range(n):
                    # <r, alpha_j^vee>
                    p = sum(r[i] * A[j][i] for i in range(n))
                    # simply laced: r + alpha_j is a root iff <r, alpha_j^vee> = -1
                    if p < 0:
                        s = tuple(r[i] + (i == j) for i in range(n))
                        if s not in roots:
                            roots.add(s)
                            nxt.append(s)
            layer = nxt
        return tuple(sorted(roots, key=lambda r: (sum(r), r)))

    @cached_property
    def positive_roots(self) -> tuple[tuple[int, ...], ...]:
        """Positive roots in fundamental-weight coordinates."""
        n = self.rank
        sr = self.simple_roots
        return tuple(tuple(sum(c * sr[j][i] for j, c in enumerate(r)) for i in range(n))
                     for r in self.positive_roots_simple)

    def inner(self, a: Sequence, b: Sequence) -> Fraction:
        g = self.gram
        n = self.rank
        return sum((a[i] * g[i][j] * b[j] for i in range(n) for j in range(n) if a[i] and b[j]), Fraction(0))

    def pairing_check(self) -> bool:
        """<alpha_i^vee, omega_j> = delta_ij, computed as 2(alpha_i, omega_j)/(alpha_i, alpha_i)."""
        n = self.rank
        for i in range(n):
            ai = self.simple_roots[i]
            norm = self.inner(ai, ai)
            for j in range(n):
                if 2 * self.inner(ai, self.fundamental_weights[j]) / norm != (i == j):
                    return False
        return True


@dataclass(frozen=True)
class RootData:
    rank: ReductiveRank
    factors: tuple[FactorRootData, ...]

    @property
    def fingerprint(self) -> str:
        return self.rank.fingerprint()

    def simple_root(self, i: int) -> Weight:
        """Global simple root i as a (charge-zero) weight."""
        fi, li = self.rank.factor_of(i)
        blocks = [(0,) * f.rank for f in self.rank.factors]
        blocks[fi] = self.factors[fi].simple_roots[li]
        coords = tuple(c for b in blocks for c in b)
        return Weight(coords, (Fraction(0),) * self.rank.torus_dim, self.rank)

    @cached_property
    def rho(self) -> Weight:
        return Weight((1,) * self.rank.semisimple_rank, (Fraction(0),) * self.rank.torus_dim, self.rank)

    def node_diagram(self) -> str:
        lines = []
        for fr in self.factors:
            f, n = fr.factor, fr.rank
            if f.series == "A":
                d = "-".join(str(i + 1) for i in range(n))
            else:
                d = "-".join(str(i + 1) for i in range(n - 1)) + f"  (node {n} attached to node {n - 2})"
            lines.append(f"{f.label}: {d}")
        return "\n".join(lines)


@lru_cache(maxsize=None)
def build_root_data(rank: ReductiveRank) -> RootData:
    frs = tuple(FactorRootData(f, cartan_matrix(f.series, f.rank)) for f in rank.factors)
    return RootData(rank, frs)


def _reflect_to_dominant(coords: list[int], cartan) -> tuple[list[int], int]:
    sign = 1
    n = len(coords)
    while True:
        i = next((k for k in range(n) if coords[k] < 0), None)
        if i is None:
            return coords, sign
        c = coords[i]
        # s_i(mu) = mu - <mu, alpha_i^vee> alpha_i ; alpha_i row i of the Cartan matrix
        for j in range(n):
            coords[j] -= c * cartan[j][i]
        sign = -sign


def dot_dominant(coords: Sequence[int], rd: RootData) -> tuple[tuple[int, ...], int] | None:
    """Raw-tuple form of :func:`to_dominant_with_sign` (hot path of Klimyk)."""
    out: list[int] = []
    sign = 1
    k = 0
    for fr in rd.factors:
        n = fr.rank
        shifted = [coords[k + j] + 1 for j in range(n)]
        dom, s = _reflect_to_dominant(shifted, fr.cartan)
        if any(x == 0 for x in dom):
            return None
        out.extend(x - 1 for x in dom)
        sign *= s
        k += n
    return tuple(out), sign


def to_dominant_with_sign(w: Weight, rd: RootData | None = None) -> tuple[Weight, int] | None:
    """Dot-action reflection: move w + rho into the dominant chamber.

    Returns None when w + rho lies on a wall, otherwise (dominant weight, det sign).
    """
    rd = rd or build_root_data(w.rank)
    res = dot_dominant(w.coords, rd)
    if res is None:
        return None
    coords, sign = res
    return Weight(coords, w.charges, w.rank), sign


def weight_key(w: Weight):
    """Fixed total order used to pick 'a maximal dominant weight': lex on coordinates then charges."""
    return (w.coords, w.charges)


def parse_many(texts: Iterable[str]) -> list[Weight]:
    return [parse_weight(t) for t in texts]
