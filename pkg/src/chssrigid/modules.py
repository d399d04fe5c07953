"""Concrete based modules with Chevalley generators.

A module knows, for each basis index, its weight and the sparse images under
the raising operators e_i and lowering operators f_i (global simple-root index
i over all simple factors).  Everything is built from defining representations
with the functors dual, tensor, Sym^k, Ext^k and direct sum.  Large functor
modules act lazily: nothing is materialized beyond the basis list.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations, combinations_with_replacement
from typing import Callable, Hashable, Iterable, Sequence

from .characters import FormalCharacter, decompose
from .linalg import Echelon, primitive_vector
from .weights import ReductiveRank, Weight, build_root_data

Sparse = dict  # basis index -> coefficient

E, F = 0, 1


def _add_into(acc: dict, idx, c):
    v = acc.get(idx, 0) + c
    if v:
        acc[idx] = v
    else:
        acc.pop(idx, None)


class ExplicitModule:
    """Base class.  Subclasses fill ``rank``, ``dim`` and implement
    ``label``, ``weight_key`` and ``act``."""

    rank: ReductiveRank
    dim: int
    name: str = "M"

    def label(self, j: int) -> Hashable:
        raise NotImplementedError

    def weight_key(self, j: int) -> tuple:
        """(coords, charges) of basis vector j."""
        raise NotImplementedError

    def act(self, op: int, i: int, j: int) -> Sparse:
        raise NotImplementedError

    # -- derived API --------------------------------------------------
    def weight(self, j: int) -> Weight:
        c, q = self.weight_key(j)
        return Weight(c, q, self.rank)

    def labels(self) -> list:
        return [self.label(j) for j in range(self.dim)]

    @cached_property
    def index(self) -> dict:
        return {self.label(j): j for j in range(self.dim)}

    @cached_property
    def weight_spaces(self) -> dict[tuple, list[int]]:
        out: dict[tuple, list[int]] = {}
        for j in range(self.dim):
            out.setdefault(self.weight_key(j), []).append(j)
        return out

    def character(self) -> FormalCharacter:
        return FormalCharacter(self.rank, {k: len(v) for k, v in self.weight_spaces.items()})

    def e(self, i: int, j: int) -> Sparse:
        return self.act(E, i, j)

    def f(self, i: int, j: int) -> Sparse:
        return self.act(F, i, j)

    def apply(self, op: int, i: int, vec: Sparse) -> Sparse:
        out: dict = {}
        for j, c in vec.items():
            for k, d in self.act(op, i, j).items():
                _add_into(out, k, c * d)
        return out

    @property
    def n_simple(self) -> int:
        return self.rank.semisimple_rank


def _weight_from_list(rank: ReductiveRank, coords, charges) -> tuple:
    return (tuple(coords), tuple(Fraction(c) for c in charges))


class MatrixModule(ExplicitModule):
    """Module given by explicit sparse operator tables."""

    def __init__(self, rank, labels, weights, ops, name="M"):
        # ops[op][i][j] -> Sparse
        self.rank = rank
        self._labels = list(labels)
        self._weights = list(weights)
        self._ops = ops
        self.dim = len(self._labels)
        self.name = name

    def label(self, j):
        return self._labels[j]

    def weight_key(self, j):
        return self._weights[j]

    def act(self, op, i, j):
        return self._ops[op][i][j]


def materialize(M: ExplicitModule, name=None) -> MatrixModule:
    ops = [[[dict(M.act(op, i, j)) for j in range(M.dim)] for i in range(M.n_simple)] for op in (E, F)]
    return MatrixModule(M.rank, M.labels(), [M.weight_key(j) for j in range(M.dim)], ops, name or M.name)


# ---------------------------------------------------------------------------
# defining representations


def _local_block(rank: ReductiveRank, factor: int, local: Sequence[int]) -> tuple[int, ...]:
    coords = [0] * rank.semisimple_rank
    off = rank.offsets()[factor]
    for k, v in enumerate(local):
        coords[off + k] = v
    return tuple(coords)


def _ops_from_edges(rank, dim, factor, edges):
    """edges: list over local root index r of [(source, target, coeff)] for e_r;
    f_r is the transpose (contravariant diagonal form)."""
    n = rank.semisimple_rank
    off = rank.offsets()[factor]
    ops = [[[{} for _ in range(dim)] for _ in range(n)] for _ in (E, F)]
    for r, lst in enumerate(edges):
        for s, t, c in lst:
            ops[E][off + r][s][t] = c
            ops[F][off + r][t][s] = c
    return ops


def defining_module(rank: ReductiveRank, factor: int = 0, kind: str = "vector", charges=None,
                    labels=None, name=None) -> MatrixModule:
    """kind: 'vector' (C^{n+1} for A_n, C^{2n} for D_n), 'spinor_even' or
    'spinor_odd' (half spins of D_n as Lambda^even/odd C^n), or 'trivial'."""
    charges = tuple(Fraction(c) for c in (charges if charges is not None else (0,) * rank.torus_dim))
    if kind == "trivial":
        ops = [[[{}] for _ in range(rank.semisimple_rank)] for _ in (E, F)]
        return MatrixModule(rank, labels or ["1"], [(rank.zero().coords, charges)], ops, name or "1")
    fac = rank.factors[factor]
    n = fac.rank
    if fac.series == "A" and kind == "vector":
        dim = n + 1
        local = []
        for k in range(dim):
            w = [0] * n
            if k < n:
                w[k] += 1
            if k > 0:
                w[k - 1] -= 1
            local.append(w)
        # e_r : v_{r+1} -> v_r
        edges = [[(r + 1, r, 1)] for r in range(n)]
    elif fac.series == "D" and kind == "vector":
        dim = 2 * n
        # basis order v_1..v_n, v_{-n}..v_{-1}; weights +-eps_k
        def eps(k):  # k in 1..n
            w = [0] * n
            for i in range(n - 1):
                w[i] = (i + 1 == k) - (i + 2 == k)
            w[n - 1] = (k == n - 1) + (k == n)
            return w
        pos = {k: k - 1 for k in range(1, n + 1)}
        neg = {k: 2 * n - k for k in range(1, n + 1)}
        local = [None] * dim
        for k in range(1, n + 1):
            local[pos[k]] = eps(k)
            local[neg[k]] = [-x for x in eps(k)]
        edges = []
        for r in range(1, n):
            edges.append([(pos[r + 1], pos[r], 1), (neg[r], neg[r + 1], -1)])
        edges.append([(neg[n], pos[n - 1], 1), (neg[n - 1], pos[n], -1)])
    elif fac.series == "D" and kind in ("spinor_even", "spinor_odd"):
        parity = 0 if kind == "spinor_even" else 1
        subsets = [S for k in range(parity, n + 1, 2) for S in combinations(range(1, n + 1), k)]
        subsets.sort(key=lambda S: (-len(S), S))
        idx = {S: j for j, S in enumerate(subsets)}
        dim = len(subsets)
        local = []
        for S in subsets:
            half = [Fraction(1, 2) if k in S else Fraction(-1, 2) for k in range(1, n + 1)]
            w = [int(half[i] - half[i + 1]) for i in range(n - 1)] + [int(half[n - 2] + half[n - 1])]
            local.append(w)
        edges = []
        for r in range(1, n):
            # gl_n raising E_{r,r+1}: replace r+1 by r
            lst = []
            for S in subsets:
                if r + 1 in S and r not in S:
                    T = tuple(sorted((set(S) - {r + 1}) | {r}))
                    lst.append((idx[S], idx[T], 1))
            edges.append(lst)
        lst = []
        for S in subsets:
            if n - 1 not in S and n not in S:
                T = tuple(sorted(set(S) | {n - 1, n}))
                lst.append((idx[S], idx[T], 1))
        edges.append(lst)
        default = ["{" + "".join(map(str, S)) + "}" for S in subsets]
        labels = labels or default
    else:
        raise ValueError(f"no defining module of kind {kind!r} for {fac.label}")
    weights = [(_local_block(rank, factor, w), charges) for w in local]
    ops = _ops_from_edges(rank, dim, factor, edges)
    labels = labels or [f"v{k + 1}" for k in range(dim)]
    if len(labels) != dim:
        raise ValueError("label count does not match module dimension")
    return MatrixModule(rank, labels, weights, ops, name or f"{fac.label}:{kind}")


def with_charges(M: ExplicitModule, charges) -> MatrixModule:
    """Same operators, central charges replaced."""
    q = tuple(Fraction(c) for c in charges)
    mm = materialize(M)
    mm._weights = [(c, q) for c, _ in mm._weights]
    return mm


def relabel(M: ExplicitModule, labels: Sequence, name=None) -> MatrixModule:
    mm = materialize(M, name)
    if len(labels) != mm.dim or len(set(labels)) != mm.dim:
        raise ValueError("relabel needs one distinct label per basis vector")
    mm._labels = list(labels)
    return mm


def restrict_order(M: ExplicitModule, order: Sequence[int], name=None) -> MatrixModule:
    """Reorder the basis (order[k] = old index of new vector k)."""
    inv = {old: new for new, old in enumerate(order)}
    ops = [[[{inv[t]: c for t, c in M.act(op, i, old).items()} for old in order]
            for i in range(M.n_simple)] for op in (E, F)]
    return MatrixModule(M.rank, [M.label(o) for o in order], [M.weight_key(o) for o in order],
                        ops, name or M.name)


# ---------------------------------------------------------------------------
# functors


class DualModule(ExplicitModule):
    """Dual basis, same labels; e acts by minus the transpose."""

    def __init__(self, M: ExplicitModule, name=None):
        self.base = M
        self.rank = M.rank
        self.dim = M.dim
        self.name = name or f"{M.name}*"
        tr = [[[{} for _ in range(M.dim)] for _ in range(M.n_simple)] for _ in (E, F)]
        for op in (E, F):
            for i in range(M.n_simple):
                for j in range(M.dim):
                    for k, c in M.act(op, i, j).items():
                        tr[op][i][k][j] = -c
        self._tr = tr

    def label(self, j):
        return self.base.label(j)

    def weight_key(self, j):
        c, q = self.base.weight_key(j)
        return tuple(-x for x in c), tuple(-x for x in q)

    def act(self, op, i, j):
        return self._tr[op][i][j]


def dual_module(M: ExplicitModule, name=None) -> ExplicitModule:
    if isinstance(M, DualModule):
        return M.base
    return DualModule(M, name)


class TensorModule(ExplicitModule):
    def __init__(self, A: ExplicitModule, B: ExplicitModule, name=None):
        if A.rank != B.rank:
            raise ValueError("tensor factors live over different root data")
        self.A, self.B = A, B
        self.rank = A.rank
        self.dim = A.dim * B.dim
        self.name = name or f"({A.name}⊗{B.name})"

    def split(self, j):
        return divmod(j, self.B.dim)

    def join(self, a, b):
        return a * self.B.dim + b

    def label(self, j):
        a, b = self.split(j)
        return (self.A.label(a), self.B.label(b))

    @cached_property
    def index(self):
        ia, ib = self.A.index, self.B.index
        return {(la, lb): self.join(a, b) for la, a in ia.items() for lb, b in ib.items()}

    def weight_key(self, j):
        a, b = self.split(j)
        (ca, qa), (cb, qb) = self.A.weight_key(a), self.B.weight_key(b)
        return tuple(x + y for x, y in zip(ca, cb)), tuple(x + y for x, y in zip(qa, qb))

    def act(self, op, i, j):
        a, b = self.split(j)
        out: dict = {}
        for a2, c in self.A.act(op, i, a).items():
            _add_into(out, self.join(a2, b), c)
        for b2, c in self.B.act(op, i, b).items():
            _add_into(out, self.join(a, b2), c)
        return out


def tensor_module(A, B, name=None) -> TensorModule:
    return TensorModule(A, B, name)


class _PowerModule(ExplicitModule):
    """Shared code for Sym^k and Ext^k: basis = index tuples into M."""

    alternating = False

    def __init__(self, M: ExplicitModule, k: int, name=None):
        if k < 0:
            raise ValueError("power must be nonnegative")
        self.M, self.k = M, k
        self.rank = M.rank
        gen = combinations if self.alternating else combinations_with_replacement
        self.tuples = list(gen(range(M.dim), k))
        self.dim = len(self.tuples)
        sym = "Λ" if self.alternating else "S"
        self.name = name or f"{sym}{k}({M.name})"

    @cached_property
    def tuple_index(self):
        return {t: j for j, t in enumerate(self.tuples)}

    def label(self, j):
        return tuple(self.M.label(x) for x in self.tuples[j])

    @cached_property
    def index(self):
        return {self.label(j): j for j in range(self.dim)}

    def weight_key(self, j):
        t = self.tuples[j]
        n, m = self.rank.semisimple_rank, self.rank.torus_dim
        c = [0] * n
        q = [Fraction(0)] * m
        for x in t:
            cx, qx = self.M.weight_key(x)
            for r in range(n):
                c[r] += cx[r]
            for r in range(m):
                q[r] += qx[r]
        return tuple(c), tuple(q)

    def act(self, op, i, j):
        t = self.tuples[j]
        out: dict = {}
        ti = self.tuple_index
        for p, x in enumerate(t):
            if p > 0 and t[p - 1] == x:
                continue  # repeated symmetric factor: counted once with multiplicity
            for y, c in self.M.act(op, i, x).items():
                rest = list(t)
                rest[p] = y
                if self.alternating:
                    if y in t:
                        continue
                    lo, hi = min(x, y), max(x, y)
                    between = sum(1 for z in t if lo < z < hi)
                    _add_into(out, ti[tuple(sorted(rest))], -c if between % 2 else c)
                else:
                    _add_into(out, ti[tuple(sorted(rest))], t.count(x) * c)
        return out


class SymModule(_PowerModule):
    alternating = False


class ExtModule(_PowerModule):
    alternating = True


def sym_module(M, k, name=None) -> SymModule:
    return SymModule(M, k, name)


def ext_module(M, k, name=None) -> ExtModule:
    return ExtModule(M, k, name)


class DirectSum(ExplicitModule):
    def __init__(self, parts: Sequence[ExplicitModule], tags: Sequence = None, name=None):
        self.parts = list(parts)
        self.rank = self.parts[0].rank
        self.tags = list(tags) if tags is not None else list(range(len(self.parts)))
        self.offsets = []
        k = 0
        for P in self.parts:
            self.offsets.append(k)
            k += P.dim
        self.dim = k
        self.name = name or "⊕".join(P.name for P in self.parts)

    def locate(self, j):
        for s in range(len(self.parts) - 1, -1, -1):
            if j >= self.offsets[s]:
                return s, j - self.offsets[s]
        raise IndexError(j)

    def label(self, j):
        s, a = self.locate(j)
        return (self.tags[s], self.parts[s].label(a))

    def weight_key(self, j):
        s, a = self.locate(j)
        return self.parts[s].weight_key(a)

    def act(self, op, i, j):
        s, a = self.locate(j)
        off = self.offsets[s]
        return {off + b: c for b, c in self.parts[s].act(op, i, a).items()}


# ---------------------------------------------------------------------------
# checks


def bracket_defect(M: ExplicitModule, limit: int | None = None) -> list[tuple]:
    """Basis vectors where [e_i, f_j] != delta_ij h_i, or where e_i/f_i move
    weights by something other than +-alpha_i.  Empty list = all good."""
    rd = build_root_data(M.rank)
    bad = []
    roots = [rd.simple_root(i).coords for i in range(M.n_simple)]
    rng = range(M.dim) if limit is None else range(min(limit, M.dim))
    for j in rng:
        wc, _ = M.weight_key(j)
        for i in range(M.n_simple):
            for op, sgn in ((E, 1), (F, -1)):
                for k in M.act(op, i, j):
                    if M.weight_key(k)[0] != tuple(a + sgn * b for a, b in zip(wc, roots[i])):
                        bad.append(("weight", op, i, j, k))
            for i2 in range(M.n_simple):
                ef = M.apply(E, i, M.act(F, i2, j))
                fe = M.apply(F, i2, M.act(E, i, j))
                comm = dict(ef)
                for k, c in fe.items():
                    _add_into(comm, k, -c)
                want = {j: wc[i]} if (i == i2 and wc[i]) else {}
                if comm != want:
                    bad.append(("bracket", i, i2, j))
    return bad


def is_contravariant_diagonal(M: ExplicitModule) -> bool:
    """f_i is the transpose of e_i in the given basis, up to positive diagonal
    rescaling; we test the strict version (f = e^T), which holds for all
    defining modules here and is inherited by tensors and powers up to the
    positive monomial norms."""
    for i in range(M.n_simple):
        for j in range(M.dim):
            for k, c in M.act(E, i, j).items():
                if M.act(F, i, k).get(j) != c:
                    return False
            for k, c in M.act(F, i, j).items():
                if M.act(E, i, k).get(j) != c:
                    return False
    return True


# ---------------------------------------------------------------------------
# highest weight vectors


@dataclass
class HwvSpace:
    weight: Weight
    module: ExplicitModule
    vectors: list[dict] = field(default_factory=list)  # basis index -> Fraction
    multiplicity: int = 0

    @property
    def dim(self) -> int:
        return len(self.vectors)

    @property
    def absent(self) -> bool:
        return self.multiplicity == 0

    def labelled(self) -> list[dict]:
        return [{self.module.label(j): c for j, c in sorted(v.items())} for v in self.vectors]


def highest_weight_space(M: ExplicitModule, lam: Weight, expected: int | None = None) -> HwvSpace:
    key = (tuple(lam.coords), tuple(lam.charges))
    cols = M.weight_spaces.get(key, [])
    if not cols:
        return HwvSpace(lam, M, [], 0)
    pos = {j: p for p, j in enumerate(cols)}
    # rows: for every raising operator and every target basis index, the
    # linear functional sum_j c_j <e_i(b_j), target> = 0
    rows: dict[tuple, dict] = {}
    for i in range(M.n_simple):
        for j in cols:
            for t, c in M.act(E, i, j).items():
                rows.setdefault((i, t), {})[pos[j]] = c
    ech = Echelon()
    for key2 in sorted(rows):
        ech.add(rows[key2])
    basis = ech.nullspace(len(cols))
    vectors = []
    for v in basis:
        prim = primitive_vector(v)
        vectors.append({cols[p]: Fraction(c) for p, c in prim.items()})
    vectors.sort(key=lambda v: sorted(v))
    h = HwvSpace(lam, M, vectors, len(vectors))
    if expected is not None and expected != h.dim:
        raise ArithmeticError(f"hwv space at {lam} has dim {h.dim}, character says {expected}")
    return h


def support_monomials(h: HwvSpace) -> set:
    out = set()
    for v in h.vectors:
        out.update(h.module.label(j) for j, c in v.items() if c)
    return out


def check_hwv_dimensions(M: ExplicitModule) -> list[tuple[Weight, int, int]]:
    """Compare dim of every hwv space against the character multiplicity.
    Returns the list of mismatches (empty = consistent)."""
    rd = build_root_data(M.rank)
    dec = decompose(M.character(), rd)
    bad = []
    for lam, m in dec.items():
        d = highest_weight_space(M, lam).dim
        if d != m:
            bad.append((lam, m, d))
    return bad
