import pytest

from chssrigid.expr import ExprError, evaluate, expected_dimension
from chssrigid.models import build_model
from chssrigid.tables import (compare_with_golden, golden_slug, load_golden, match_symbols, regenerate_tables,
                              render_tables, symbol_weights)

FIVE = ("G(2,5)", "S10", "SEG_P2xP2", "G(2,6)_AP2", "OP2")


@pytest.mark.parametrize("name", FIVE)
def test_rows_conserve_mass(name):
    for row in regenerate_tables(name):
        assert row.mass_ok, row.name


@pytest.mark.parametrize("name", FIVE)
def test_goldens_match(name):
    bad = [c for c in compare_with_golden(name) if not c.ok]
    assert not bad, [(c.row, c.detail) for c in bad]


@pytest.mark.parametrize("name,dim", [("G(2,5)", 168), ("S10", 1100), ("G(2,6)_AP2", 120 * 6),
                                      ("OP2", 816 * 10), ("SEG_P2xP2", 20 * 4)])
def test_cubic_row_dimensions(name, dim):
    rows = {r.name: r for r in regenerate_tables(name)}
    assert rows["S³T*⊗N"].dimension == dim


def test_documented_discrepancies_are_flagged():
    statuses = {c.row: c.status for c in compare_with_golden("G(2,5)")}
    assert statuses["S⁴T*⊗N"] == "paper-table discrepancy"
    assert statuses["S³T*⊗N"] == "match"


def test_golden_files_present():
    for name in FIVE:
        g = load_golden(name)
        assert g["rows"]
    assert golden_slug("G(2,6)_AP2") == "G_2_6_AP2"


def test_symbols(g25):
    (w,) = symbol_weights(g25, "T*3N")
    assert str(w).startswith("A(A1)[3] * B(A2)[0,4]")
    assert symbol_weights(g25, "T_2") is None
    assert len(symbol_weights(g25, "gT*")) == 2
    with pytest.raises(ValueError):
        symbol_weights(g25, "Q")


def test_match_symbols_reports_differences(g25):
    dec = evaluate(g25, "S2 T*")
    assert match_symbols(g25, dec, ["T*2", "N*"])[1:] == ({}, {})
    _, missing, extra = match_symbols(g25, dec, ["T*2"])
    assert not missing and sum(extra.values()) == 1


@pytest.mark.parametrize("expr,dim", [
    ("T", 6), ("T* ⊗ N", 18), ("S3 T* x N", 168), ("Λ2 T", 15), ("L2 T + C", 16), ("(T ⊗ T*)^frc", 24),
    ("(T ⊗ N*)^T*c ⊗ T*", 72), ("S0 T", 1),
])
def test_expressions(g25, expr, dim):
    assert evaluate(g25, expr).dimension(g25.rd) == dim == expected_dimension(g25, expr)


@pytest.mark.parametrize("bad", ["", "T ⊗", "X", "S T", "(T", "T ^ q", "S-1 T"])
def test_expression_errors(g25, bad):
    with pytest.raises(ExprError):
        evaluate(g25, bad)


def test_render_mentions_every_row(s10):
    text = render_tables(s10)
    for row in regenerate_tables(s10):
        assert row.name in text
