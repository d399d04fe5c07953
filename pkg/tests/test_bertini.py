from itertools import combinations_with_replacement

import pytest

from chssrigid.bertini import (BertiniHypothesisError, bertini_vanishings, coordinate_cliques,
                               coordinate_singular_labels, in_base_locus, is_generic_quadric, unit)
from chssrigid.models import build_model


def expected_g25_example(frame):
    t3 = ("(13)", "(13)", "(13)")
    out = {(mu, t3) for mu in frame.normal}
    pos = {l: k for k, l in enumerate(frame.tangent)}
    for beta in frame.tangent:
        out.add(("(45)", tuple(sorted(("(13)", "(13)", beta), key=pos.__getitem__))))
    return out


def test_grassmannian_example(g25):
    vs = bertini_vanishings(g25.frame, "(45)", ("(13)",))
    assert vs.monomials(g25.frame, 3) == expected_g25_example(g25.frame)
    assert {i.part for i in vs.identities} == {1, 2}


def test_part_one_needs_generic_quadric():
    m = build_model("G(2,7)")
    f = m.frame
    assert not is_generic_quadric(f, "(67)").generic
    with pytest.raises(BertiniHypothesisError, match="generic"):
        bertini_vanishings(f, "(67)", ("(13)",), parts=(1, 2))
    vs = bertini_vanishings(f, "(67)", ("(13)",), parts=(2,))
    assert {i.part for i in vs.identities} == {2}


def test_all_spinor_quadrics_generic(s10):
    assert all(is_generic_quadric(s10.frame, q).generic for q in s10.frame.normal)


def test_grassmannian_quadrics_generic_only_for_m5():
    f = build_model("G(2,5)").frame
    assert all(is_generic_quadric(f, q).generic for q in f.normal)
    f6 = build_model("G(2,6)").frame
    assert not any(is_generic_quadric(f6, q).generic for q in f6.normal)


def test_genericity_is_seeded(g25):
    a = is_generic_quadric(g25.frame, "(34)", seed=3, samples=10)
    b = is_generic_quadric(g25.frame, "(34)", seed=3, samples=10)
    assert a == b
    assert "seed 3" in a.describe()


def test_rejects_space_outside_singular_locus(g25):
    with pytest.raises(BertiniHypothesisError, match="Sing"):
        bertini_vanishings(g25.frame, "(45)", ("(14)",))


def test_rejects_unknown_labels(g25):
    with pytest.raises(BertiniHypothesisError):
        bertini_vanishings(g25.frame, "(99)", ("(13)",))
    with pytest.raises(BertiniHypothesisError):
        bertini_vanishings(g25.frame, "(45)", ("(77)",))


def test_singular_labels(g25):
    assert coordinate_singular_labels(g25.frame, "(45)") == ["(13)", "(23)"]


def test_cliques_lie_in_singular_and_base_locus(model):
    f = model.frame
    pos = {l: k for k, l in enumerate(f.tangent)}
    for q in f.normal:
        sing = set(coordinate_singular_labels(f, q))
        for c in coordinate_cliques(f, q):
            assert set(c) <= sing
            for u, v in combinations_with_replacement(c, 2):
                w = [x + y for x, y in zip(unit(f.n, pos[u]), unit(f.n, pos[v]))]
                assert in_base_locus(f.quadrics, w)


def test_order_four_needs_cubic_facts(g25):
    with pytest.raises(BertiniHypothesisError, match="order-3"):
        bertini_vanishings(g25.frame, "(45)", ("(13)",), max_order=4, parts=(3,))
    vs = bertini_vanishings(g25.frame, "(45)", ("(13)", "(23)"), max_order=4, parts=(1, 3, 4),
                            f3_vanishes=lambda mu, t: True)
    parts = {i.part for i in vs.identities if i.order == 4}
    assert parts == {1, 3, 4}
    assert vs.covers("(45)", ("(13)", "(23)", "(14)", "(25)"))
    assert not vs.covers("(34)", ("(14)", "(14)", "(14)", "(14)"))


def test_part_four_reports_missing_fact(g25):
    with pytest.raises(BertiniHypothesisError, match="Sing"):
        bertini_vanishings(g25.frame, "(45)", ("(13)",), max_order=4, parts=(4,),
                           f3_vanishes=lambda mu, t: mu != "(45)" or len(set(t)) == 1)
