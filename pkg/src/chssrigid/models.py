"""Coordinate models of the rank-two minuscule varieties.

Each model carries a weight frame (tangent and normal modules with Chevalley
operators, quadrics and graph chart written in weight-vector coordinates).
The composition-algebra models also carry the (a, b)-coordinate presentation
with |II| = {a conj(a), b conj(b), a conj(b)}.

Quadrics are stored as integer Hessians H, so q(v, v) = v^T H v / 2 and the
polarization is q(v, w) = v^T H w / 2.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from .algebra import CompAlgebra, composition_algebra
from .characters import IrrSum, decompose, tensor_decompose
from .linalg import nullspace, primitive_vector
from .modules import (ExplicitModule, SymModule, TensorModule, defining_module, dual_module,
                      ext_module, highest_weight_space, relabel, restrict_order, sym_module,
                      tensor_module, with_charges, materialize, DirectSum, E, F)
from .weights import ReductiveRank, SimpleFactor, Weight, build_root_data


class ModelError(ValueError):
    pass


QUADRIC_MESSAGE = ("the smooth quadric hypersurface is excluded: order-two rigidity fails for it "
                   "(its fundamental forms are not determined by |II|), so no model is built")


# ---------------------------------------------------------------------------
# polynomials in tangent coordinates: dict sorted-index-tuple -> Fraction


def poly_add(p, q, c=1):
    out = dict(p)
    for k, v in q.items():
        s = out.get(k, 0) + c * v
        if s:
            out[k] = Fraction(s)
        else:
            out.pop(k, None)
    return out


def poly_mul(p, q):
    out = {}
    for k1, v1 in p.items():
        for k2, v2 in q.items():
            k = tuple(sorted(k1 + k2))
            s = out.get(k, 0) + v1 * v2
            if s:
                out[k] = Fraction(s)
            else:
                out.pop(k, None)
    return out


def var(i):
    return {(i,): Fraction(1)}


def hessian(poly, n):
    """Integer-or-rational Hessian of a homogeneous quadratic polynomial."""
    H = [[Fraction(0)] * n for _ in range(n)]
    for k, c in poly.items():
        if len(k) != 2:
            raise ModelError("hessian needs a quadratic form")
        i, j = k
        if i == j:
            H[i][i] += 2 * c
        else:
            H[i][j] += c
            H[j][i] += c
    return tuple(tuple(row) for row in H)


def quadratic_from_hessian(H):
    n = len(H)
    out = {}
    for i in range(n):
        if H[i][i]:
            out[(i, i)] = Fraction(H[i][i]) / 2
        for j in range(i + 1, n):
            if H[i][j]:
                out[(i, j)] = Fraction(H[i][j])
    return out


@dataclass(frozen=True)
class GraphChart:
    """x^mu = polys[mu](x^alpha) near the base point."""
    tangent: tuple
    normal: tuple
    polys: tuple  # one dict per normal coordinate

    def degree(self) -> int:
        return max((len(k) for p in self.polys for k in p), default=0)

    def min_degree(self) -> int:
        return min((len(k) for p in self.polys for k in p), default=0)

    def homogeneous(self, mu: int, k: int) -> dict:
        return {m: c for m, c in self.polys[mu].items() if len(m) == k}

    def with_terms(self, extra: dict) -> "GraphChart":
        """Add terms: extra[normal index] = polynomial."""
        polys = [dict(p) for p in self.polys]
        for mu, p in extra.items():
            polys[mu] = poly_add(polys[mu], p)
        return GraphChart(self.tangent, self.normal, tuple(polys))


@dataclass(frozen=True)
class Frame:
    tangent: tuple
    normal: tuple
    quadrics: tuple  # Hessians, one per normal label
    chart: GraphChart

    @property
    def n(self):
        return len(self.tangent)

    @property
    def a(self):
        return len(self.normal)

    def quadric(self, label):
        return self.quadrics[self.normal.index(label)]


def frame_from_chart(chart: GraphChart) -> Frame:
    n = len(chart.tangent)
    qs = tuple(hessian(chart.homogeneous(mu, 2), n) for mu in range(len(chart.normal)))
    return Frame(chart.tangent, chart.normal, qs, chart)


@dataclass
class Model:
    name: str
    rank: ReductiveRank
    T: ExplicitModule
    N: ExplicitModule
    frame: Frame                     # weight frame (T, N bases)
    presentation: Frame              # the printed coordinates (same as frame except for the A-models)
    algebra: CompAlgebra | None = None
    symbols: dict = field(default_factory=dict)   # extra named semisimple weights for tables
    swap: tuple | None = None        # outer symmetry permuting simple roots (Segre)
    borel: str = ""
    notes: tuple = ()

    @property
    def n(self):
        return self.T.dim

    @property
    def a(self):
        return self.N.dim

    @property
    def rd(self):
        return build_root_data(self.rank)

    @property
    def Tdual(self):
        return dual_module(self.T)

    @property
    def Ndual(self):
        return dual_module(self.N)

    def irr(self, M: ExplicitModule) -> IrrSum:
        return decompose(M.character(), self.rd)

    def t_weight(self) -> Weight:
        return self.irr(self.T).weights()[0]

    def summary(self) -> dict:
        return {
            "name": self.name,
            "n": self.n,
            "a": self.a,
            "rank": self.rank.fingerprint(),
            "T": [str(w) for w in self.irr(self.T).weights()],
            "N": [str(w) for w in self.irr(self.N).weights()],
            "tangent_basis": list(self.frame.tangent),
            "normal_basis": list(self.frame.normal),
            "quadrics": {mu: [[str(x) for x in row] for row in H]
                         for mu, H in zip(self.presentation.normal, self.presentation.quadrics)},
            "borel": self.borel,
            "conventions": ("|II| = {a conj(a), b conj(b), a conj(b)} with the conjugate on the b factor"
                            if self.algebra is not None else ""),
        }


# ---------------------------------------------------------------------------
# invariance of II


def ii_vector(model: Model) -> tuple[ExplicitModule, dict]:
    """II as a vector of S^2 T* (x) N in the weight frame."""
    S2 = sym_module(model.Tdual, 2)
    M = tensor_module(S2, model.N)
    vec = {}
    for mu, label in enumerate(model.frame.normal):
        for mono, c in model.frame.chart.homogeneous(mu, 2).items():
            s = S2.tuple_index[tuple(sorted(mono))]
            vec[M.join(s, mu)] = c
    return M, vec


def ii_defect(model: Model) -> list[str]:
    """Chevalley generators (and the grading) that fail to annihilate II."""
    M, vec = ii_vector(model)
    bad = []
    for i in range(M.n_simple):
        for op, tag in ((E, "e"), (F, "f")):
            if M.apply(op, i, vec):
                bad.append(f"{tag}_{i + 1}")
    for j in vec:
        if any(M.weight_key(j)[1]):
            bad.append("charge")
            break
    return bad


def invariant_quadrics(T: ExplicitModule, N: ExplicitModule) -> list[dict]:
    """The R-invariant element of S^2T* (x) N, as one polynomial per normal basis vector."""
    Td = dual_module(T)
    S2 = sym_module(Td, 2)
    M = tensor_module(S2, N)
    zero = build_root_data(T.rank)
    lam = Weight((0,) * T.rank.semisimple_rank, (Fraction(0),) * T.rank.torus_dim, T.rank)
    h = highest_weight_space(M, lam)
    if h.dim != 1:
        raise ModelError(f"expected a unique invariant quadric system, found {h.dim}")
    polys = [dict() for _ in range(N.dim)]
    for j, c in h.vectors[0].items():
        s, mu = M.split(j)
        polys[mu][S2.tuples[s]] = c
    return polys


# ---------------------------------------------------------------------------
# the models


def _pluecker_model(m: int, name: str | None = None) -> Model:
    if m < 4:
        raise ModelError("G(2,m) needs m >= 4")
    rank = ReductiveRank((SimpleFactor("A", 1, "A"), SimpleFactor("A", m - 3, "B")), 1)
    A = defining_module(rank, 0, "vector", charges=(0,), labels=["a1", "a2"])
    Bstd = defining_module(rank, 1, "vector", charges=(1,))
    # reversed basis: label 3 is the lowest weight vector of B
    B = relabel(restrict_order(Bstd, list(range(m - 3, -1, -1))), [str(j) for j in range(3, m + 1)])
    tlabels = [f"({i}{j})" for i in (1, 2) for j in range(3, m + 1)]
    T = relabel(tensor_module(dual_module(A), B), tlabels, "T")
    nlabels = [f"({j}{k})" for j, k in combinations(range(3, m + 1), 2)]
    N = relabel(ext_module(B, 2), nlabels, "N")
    tix = {l: k for k, l in enumerate(tlabels)}
    polys = []
    for j, k in combinations(range(3, m + 1), 2):
        p = poly_mul(var(tix[f"(1{j})"]), var(tix[f"(2{k})"]))
        p = poly_add(p, poly_mul(var(tix[f"(1{k})"]), var(tix[f"(2{j})"])), -1)
        polys.append(p)
    chart = GraphChart(tuple(tlabels), tuple(nlabels), tuple(polys))
    frame = frame_from_chart(chart)
    return Model(name or f"G(2,{m})", rank, T, N, frame, frame,
                 borel=("A = <a1, a2> with a1 highest; B = <b3..bm> with b_m highest and b_3 lowest; "
                        "so e_(13) is the lowest tangent weight vector (omega^(13) highest in T*) "
                        f"and e_({m - 1}{m}) spans the highest normal weight"))


def _spinor_model() -> Model:
    rank = ReductiveRank((SimpleFactor("A", 4),), 1)
    Wstd = defining_module(rank, 0, "vector", charges=(Fraction(1, 2),))
    W = relabel(restrict_order(Wstd, [4, 3, 2, 1, 0]), [str(j) for j in range(1, 6)])
    tl = [f"({s}{t})" for s, t in combinations(range(1, 6), 2)]
    T = relabel(ext_module(W, 2), tl, "T")
    # basis of Lambda^4 W in sorted order omits 5, 4, 3, 2, 1 respectively
    L4 = ext_module(W, 4)
    omitted = [str(({1, 2, 3, 4, 5} - {int(x) for x in L4.label(j)}).pop()) for j in range(L4.dim)]
    order = sorted(range(L4.dim), key=lambda j: int(omitted[j]))
    N = relabel(restrict_order(L4, order), [omitted[j] for j in order], "N")
    tix = {l: k for k, l in enumerate(tl)}

    def x(a, b):
        return var(tix[f"({a}{b})"])

    polys = []
    for j in range(1, 6):
        a, b, c, d = [t for t in range(1, 6) if t != j]
        p = poly_mul(x(a, b), x(c, d))
        p = poly_add(p, poly_mul(x(a, c), x(b, d)), -1)
        p = poly_add(p, poly_mul(x(a, d), x(b, c)))
        polys.append(p)
    chart = GraphChart(tuple(tl), tuple(N.labels()), tuple(polys))
    frame = frame_from_chart(chart)
    return Model("S10", rank, T, N, frame, frame,
                 borel=("W = <w1..w5> with w1 lowest; T = Lambda^2 W with basis e_(st); N = Lambda^4 W "
                        "labelled by the omitted index j; e_(12) is the lowest tangent weight vector "
                        "and the normal vector labelled 1 spans the highest normal weight"))


# -- composition algebra models -------------------------------------------


def algebra_chart(A: CompAlgebra) -> GraphChart:
    d = A.dim
    tl = tuple([f"a{i}" for i in range(d)] + [f"b{i}" for i in range(d)])
    na = ["a", "b", "0"] + [f"eps_{j}" for j in range(1, d)]
    pa = {(i, i): Fraction(1) for i in range(d)}
    pb = {(d + i, d + i): Fraction(1) for i in range(d)}
    # a * conj(b): coefficient of eps_k
    ab = [dict() for _ in range(d)]
    for i in range(d):
        for j in range(d):
            sign, k = A.table[i][j]
            cj = 1 if j == 0 else -1
            key = (i, d + j)
            ab[k][key] = ab[k].get(key, 0) + Fraction(sign * cj)
    polys = [pa, pb] + [{k: v for k, v in p.items() if v} for p in ab]
    return GraphChart(tl, tuple(na), tuple(polys))


def _segre_weight_frame():
    rank = ReductiveRank((SimpleFactor("A", 1, "U"), SimpleFactor("A", 1, "W")), 1)
    U = defining_module(rank, 0, "vector", charges=(1,), labels=["u1", "u2"])
    W = defining_module(rank, 1, "vector", charges=(1,), labels=["w1", "w2"])
    T = relabel(DirectSum([U, W]), ["u1", "u2", "w1", "w2"], "T")
    N = relabel(tensor_module(with_charges(U, (1,)), W), ["u1w1", "u1w2", "u2w1", "u2w2"], "N")
    return rank, T, N


def _octonion_weight_frame():
    rank = ReductiveRank((SimpleFactor("D", 5),), 1)
    S = defining_module(rank, 0, "spinor_even", charges=(-1,))
    # T = dual of the even half-spin Lambda^even C^5, so T* = Lambda^even C^5
    T = relabel(dual_module(S), [f"s{l}" for l in S.labels()], "T")
    V = defining_module(rank, 0, "vector", charges=(2,))
    nl = [f"v{k}" for k in range(1, 6)] + [f"v-{k}" for k in range(5, 0, -1)]
    N = relabel(V, nl, "N")
    return rank, T, N


def _weight_frame_from_invariant(T, N) -> Frame:
    polys = invariant_quadrics(T, N)
    prim = []
    for p in polys:
        prim.append(p)
    # scale the whole system to coprime integers
    flat = {}
    for mu, p in enumerate(prim):
        for k, c in p.items():
            flat[(mu, k)] = c
    keys = sorted(flat)
    col = {k: i for i, k in enumerate(keys)}
    pv = primitive_vector({col[k]: flat[k] for k in keys})
    polys = [dict() for _ in prim]
    for k in keys:
        polys[k[0]][k[1]] = Fraction(pv[col[k]])
    chart = GraphChart(tuple(T.labels()), tuple(N.labels()), tuple(polys))
    return frame_from_chart(chart)


def _algebra_model(name: str) -> Model:
    if name == "SEG_P2xP2":
        A = composition_algebra(2)
        rank, T, N = _segre_weight_frame()
        frame = _weight_frame_from_invariant(T, N)
        model = Model(name, rank, T, N, frame, frame_from_chart(algebra_chart(A)), A,
                      symbols={}, swap=(1, 0),
                      borel=("U = <u1, u2>, W = <w1, w2> with u1, w1 highest; T = U + W, N = U (x) W; "
                             "the factor swap U <-> W is an outer symmetry and components are "
                             "counted up to it"))
        return model
    if name == "G(2,6)_AP2":
        base = _pluecker_model(6)
        A = composition_algebra(4)
        return Model(name, base.rank, base.T, base.N, base.frame, frame_from_chart(algebra_chart(A)), A,
                     symbols={"g": "A(A1)[0]*B(A3)[1,0,1]"}, borel=base.borel)
    if name == "OP2":
        A = composition_algebra(8)
        rank, T, N = _octonion_weight_frame()
        frame = _weight_frame_from_invariant(T, N)
        return Model(name, rank, T, N, frame, frame_from_chart(algebra_chart(A)), A,
                     symbols={"g": "D5[0,1,0,0,0]"},
                     borel=("T* = Lambda^even C^5 (Clifford model of the half spin), basis s{S} for even "
                            "subsets S; T is its dual; N = C^10 with basis v1..v5, v-5..v-1; v1 spans "
                            "the highest normal weight"))
    raise ModelError(name)


MODEL_NAMES = ("G(2,5)", "S10", "SEG_P2xP2", "G(2,6)_AP2", "OP2")
_G2M = re.compile(r"^G\(2,(\d+)\)$")


def canonical_name(name: str) -> str:
    key = name.strip()
    low = key.lower().replace(" ", "")
    if low in ("quadric", "q", "quadric_hypersurface") or low.startswith("q^") or low.startswith("quadric"):
        raise ModelError(QUADRIC_MESSAGE)
    aliases = {"s10": "S10", "s_10": "S10", "seg": "SEG_P2xP2", "seg_p2xp2": "SEG_P2xP2",
               "g(2,6)_ap2": "G(2,6)_AP2", "op2": "OP2"}
    if low in aliases:
        return aliases[low]
    m = _G2M.match(key.replace(" ", ""))
    if m:
        if int(m.group(1)) < 5:
            raise ModelError("G(2,m) is supported for m >= 5 (G(2,4) is the quadric in P^5)")
        return f"G(2,{int(m.group(1))})"
    raise ModelError(f"unknown model {name!r}; known: {', '.join(MODEL_NAMES)} or G(2,m) with m >= 5")


def build_model(name: str) -> Model:
    return _build(canonical_name(name))


@lru_cache(maxsize=None)
def _build(key: str) -> Model:
    if key == "S10":
        return _spinor_model()
    if key in ("SEG_P2xP2", "G(2,6)_AP2", "OP2"):
        return _algebra_model(key)
    m = int(_G2M.match(key).group(1))
    return _pluecker_model(m)


def graph_chart(model: Model) -> GraphChart:
    return model.presentation.chart


# ---------------------------------------------------------------------------
# null frame of the A-models (Gaussian rationals as pairs re, im)


@dataclass(frozen=True)
class GaussVec:
    re: tuple
    im: tuple

    def __add__(self, o):
        return GaussVec(tuple(a + b for a, b in zip(self.re, o.re)), tuple(a + b for a, b in zip(self.im, o.im)))


def bilinear(H, v: GaussVec, w: GaussVec) -> tuple[Fraction, Fraction]:
    """Polarized q(v, w) = v^T H w / 2 over Q(i), returned as (re, im)."""
    def b(x, y):
        return sum(Fraction(H[i][j]) * x[i] * y[j] for i in range(len(x)) for j in range(len(y)) if x[i] and y[j]) / 2
    return b(v.re, w.re) - b(v.im, w.im), b(v.re, w.im) + b(v.im, w.re)


@dataclass(frozen=True)
class NullFrame:
    e1: GaussVec
    e1bar: GaussVec
    e2: GaussVec
    e2_isotropic: GaussVec
    covectors: dict  # normal label -> description


def null_frame(model: Model) -> NullFrame:
    if model.algebra is None:
        raise ModelError(f"null frames are defined only for the composition-algebra models, not {model.name}")
    A = model.algebra
    n = 2 * A.dim
    if A.dim < 4:
        raise ModelError("e_2 = 1 + i eps_2 needs dim A >= 4")

    def vec(re_idx, im_idx, im_sign=1, re_sign=1):
        re = [Fraction(0)] * n
        im = [Fraction(0)] * n
        for k in re_idx:
            re[k] = Fraction(re_sign)
        for k in im_idx:
            im[k] = Fraction(im_sign)
        return GaussVec(tuple(re), tuple(im))

    e1 = vec([0], [1])
    e1bar = vec([0], [1], -1)
    e2 = vec([0], [2])
    # eps_2 + i eps_3 is null and orthogonal to e1 (a partner that keeps <e1, e2'> inside the null cone)
    e2iso = vec([2], [3])
    cov = {"a": "q^a = a conj(a)", "b": "q^b = b conj(b)", "0": "q^0 = Re(a conj(b))"}
    for j in range(1, A.dim):
        cov[f"eps_{j}"] = f"q^eps_{j} = eps_{j}-coefficient of a conj(b)"
    return NullFrame(e1, e1bar, e2, e2iso, cov)


def in_base_gauss(frame: Frame, v: GaussVec) -> bool:
    return all(bilinear(H, v, v) == (0, 0) for H in frame.quadrics)


def symmetry_dimension(frame: Frame) -> int:
    """dim of {(A, B) in gl(T) + gl(N) : B.q - q(A., .) - q(., A.) = 0}: the infinitesimal
    stabilizer of the quadric system.  Used to compare the two presentations."""
    n, a = frame.n, frame.a
    H = frame.quadrics
    # unknown index: A[r][s] -> r*n+s ; B[mu][nu] -> n*n + mu*a + nu
    rows = []
    for mu in range(a):
        for i in range(n):
            for j in range(i, n):
                row = {}
                for nu in range(a):
                    if H[nu][i][j]:
                        row[n * n + mu * a + nu] = row.get(n * n + mu * a + nu, 0) + Fraction(H[nu][i][j])
                # -(A^T H + H A)_{ij} = -sum_r A[r][i] H[r][j] - sum_r H[i][r] A[r][j]
                for r in range(n):
                    if H[mu][r][j]:
                        k = r * n + i
                        row[k] = row.get(k, 0) - Fraction(H[mu][r][j])
                    if H[mu][i][r]:
                        k = r * n + j
                        row[k] = row.get(k, 0) - Fraction(H[mu][i][r])
                row = {k: v for k, v in row.items() if v}
                if row:
                    rows.append(row)
    return len(nullspace(rows, n * n + a * a))
