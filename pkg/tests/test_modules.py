from fractions import Fraction

import pytest

from chssrigid.characters import decompose, irr_character, weyl_dimension
from chssrigid.models import build_model
from chssrigid.modules import (E, F, bracket_defect, check_hwv_dimensions, defining_module, dual_module,
                               ext_module, highest_weight_space, is_contravariant_diagonal,
                               support_monomials, sym_module, tensor_module)
from chssrigid.orchestrator import sk_module
from chssrigid.weights import ReductiveRank, SimpleFactor, Weight, build_root_data

FIVE = ("G(2,5)", "S10", "SEG_P2xP2", "G(2,6)_AP2", "OP2")


def rank_of(t, r, torus=1):
    return ReductiveRank((SimpleFactor(t, r),), torus)


@pytest.mark.parametrize("t,r,kind,dim", [
    ("A", 1, "vector", 2), ("A", 3, "vector", 4), ("D", 4, "vector", 8), ("D", 5, "vector", 10),
    ("D", 5, "spinor_even", 16), ("D", 5, "spinor_odd", 16),
])
def test_defining_modules(t, r, kind, dim):
    rank = rank_of(t, r)
    M = defining_module(rank, 0, kind, charges=(1,))
    assert M.dim == dim
    assert not bracket_defect(M)
    assert is_contravariant_diagonal(M)
    rd = build_root_data(rank)
    (lam,) = decompose(M.character(), rd).weights()
    assert weyl_dimension(rd, lam) == dim


def test_constructions_keep_the_bracket_relations():
    rank = rank_of("A", 2)
    V = defining_module(rank, 0, "vector", charges=(1,))
    for M in (dual_module(V), tensor_module(V, dual_module(V)), sym_module(V, 3), ext_module(V, 2),
              tensor_module(sym_module(dual_module(V), 2), ext_module(V, 2))):
        assert not bracket_defect(M)
        assert M.character().mass() == M.dim


@pytest.mark.parametrize("name", FIVE)
def test_model_modules_bracket(name):
    m = build_model(name)
    for M in (m.T, m.N, m.Tdual, m.Ndual):
        assert not bracket_defect(M)


@pytest.mark.parametrize("name", FIVE)
def test_sk_modules_bracket(name):
    # full check on the cubic module; the quartic is checked on a prefix of the basis
    assert not bracket_defect(sk_module(name, 3), limit=None if name != "OP2" else 3000)
    assert not bracket_defect(sk_module(name, 4), limit=1500)


@pytest.mark.parametrize("name", FIVE)
@pytest.mark.parametrize("k", [3, 4])
def test_hwv_dimension_is_multiplicity(name, k):
    assert check_hwv_dimensions(sk_module(name, k)) == []


def test_hwv_of_sym_cube():
    rank = rank_of("A", 2, torus=0)
    V = defining_module(rank, 0, "vector", charges=())
    S3 = sym_module(V, 3)
    lam = Weight((3, 0), (), rank)
    h = highest_weight_space(S3, lam)
    assert h.dim == 1
    # the highest vector is the cube of the highest basis vector
    (j,) = h.vectors[0]
    assert len(set(S3.label(j))) == 1
    assert highest_weight_space(S3, Weight((1, 1), (), rank)).absent


def test_hwv_vectors_are_annihilated():
    m = build_model("G(2,5)")
    X = sk_module(m.name, 3)
    for lam in decompose(X.character(), m.rd).weights():
        for v in highest_weight_space(X, lam).vectors:
            for i in range(X.n_simple):
                assert not X.apply(E, i, v)


def test_support_monomials_are_labels():
    m = build_model("G(2,5)")
    X = sk_module(m.name, 3)
    lam = decompose(X.character(), m.rd).weights()[0]
    sup = support_monomials(highest_weight_space(X, lam))
    assert sup and sup <= set(X.labels())


def test_f_lowers_weight():
    rank = rank_of("A", 1, torus=0)
    V = sym_module(defining_module(rank, 0, "vector", charges=()), 2)
    top = max(range(V.dim), key=lambda j: V.weight_key(j)[0])
    v = {top: Fraction(1)}
    seen = [V.weight_key(top)[0]]
    while v:
        v = V.apply(F, 0, v)
        if v:
            seen.append(V.weight_key(next(iter(v)))[0])
    assert seen == [(2,), (0,), (-2,)]
    assert irr_character(build_root_data(rank), Weight((2,), (), rank)).mass() == 3
