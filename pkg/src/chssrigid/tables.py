"""Decomposition tables for a model, and their comparison against the golden
expectation files shipped in ``chssrigid/goldens``.

Golden rows name components in the usual shorthand: products of T, T*, N, N*,
g (adjoints of the simple factors) with exponents, meaning the Cartan
component (sum of highest weights).  ``T_2`` is an unnamed module and matches
any one leftover component.  Central charges are fixed by the row, so the
comparison is on semisimple parts.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from importlib import resources

from .characters import IrrSum, decompose
from .expr import evaluate, expected_dimension
from .models import Model, build_model
from .orchestrator import adjoint_weight, orbit_count, active_factors
from .weights import Weight, format_weight

SECTION4_ROWS = [
    ("T", "T"), ("T*", "T*"), ("N", "N"),
    ("S²T*", "S2 T*"), ("S³T*", "S3 T*"), ("S³T*⊗N", "S3 T* ⊗ N"),
    ("T⊗N*", "T ⊗ N*"), ("(T⊗N*)^{T*c}⊗T*", "(T ⊗ N*)^T*c ⊗ T*"),
    ("S⁴T*", "S4 T*"), ("S⁴T*⊗N", "S4 T* ⊗ N"),
]
SECTION5_ROWS = [
    ("T", "T"), ("T*", "T*"), ("N", "N"), ("N*", "N*"),
    ("S²T*", "S2 T*"), ("S³T*", "S3 T*"), ("S³T*⊗N", "S3 T* ⊗ N"),
    ("T⊗N*", "T ⊗ N*"),
    ("(N⊗N*)^{rc}⊗T*", "(N ⊗ N*)^frc ⊗ T*"),
    ("(T⊗T*)^{rc}⊗T*", "(T ⊗ T*)^frc ⊗ T*"),
    ("S⁴T*⊗N", "S4 T* ⊗ N"),
    ("S¹T*", "S1 T*"),
]


def row_specs(model: Model):
    return SECTION4_ROWS + [("S¹T*", "S1 T*")] if model.name in ("G(2,5)", "S10") else SECTION5_ROWS


@dataclass
class TableRow:
    name: str
    expr: str
    decomposition: IrrSum
    dimension: int
    expected_dimension: int
    orbits: int

    @property
    def mass_ok(self) -> bool:
        return self.dimension == self.expected_dimension


def regenerate_tables(model: Model | str) -> list[TableRow]:
    if isinstance(model, str):
        model = build_model(model)
    rows = []
    for name, expr in row_specs(model):
        dec = evaluate(model, expr)
        rows.append(TableRow(name, expr, dec, dec.dimension(model.rd), expected_dimension(model, expr),
                             orbit_count(model, dec)))
    return rows


# ---------------------------------------------------------------------------
# symbolic names


_SYM = re.compile(r"(T_2|T\*|N\*|T|N|g\[\d\]|g)(\d*)")


def base_weights(model: Model) -> dict:
    def top(M):
        ws = decompose(M.character(), model.rd).weights()
        return ws[0].semisimple() if len(ws) == 1 else None
    out = {"T": top(model.T), "T*": top(model.Tdual), "N": top(model.N), "N*": top(model.Ndual)}
    out["g"] = [adjoint_weight(model.rank, fi) for fi in active_factors(model, model.T.character())]
    return out


def symbol_weights(model: Model, symbol: str) -> list[Weight] | None:
    """Semisimple highest weights named by a shorthand symbol; None for T_2.

    A symbol containing g names one component per simple factor."""
    text = symbol.replace("(", "").replace(")", "").replace("𝔤", "g").replace("₂", "_2")
    base = base_weights(model)
    pos, parts = 0, []
    while pos < len(text):
        m = _SYM.match(text, pos)
        if not m:
            raise ValueError(f"cannot read symbol {symbol!r} at {text[pos:]!r}")
        parts.append((m.group(1), int(m.group(2) or 1)))
        pos = m.end()
    if any(p == "T_2" for p, _ in parts):
        return None
    total = model.rank.zero()
    gcount = 0
    for p, e in parts:
        if p == "g":
            gcount += e
            continue
        if p.startswith("g["):
            total = total + adjoint_weight(model.rank, int(p[2])).scale(e)
            continue
        if base[p] is None:
            raise ValueError(f"{p} is reducible for {model.name}; shorthand does not apply")
        total = total + base[p].scale(e)
    if not gcount:
        return [total]
    out = []
    for a in base["g"]:
        out.append(total + a.scale(gcount))
    return out


def _ss_counts(s: IrrSum) -> dict:
    d = {}
    for w, m in s.items():
        k = w.semisimple().coords
        d[k] = d.get(k, 0) + m
    return d


def match_symbols(model: Model, computed: IrrSum, symbols: list[str]) -> tuple[list, dict, dict]:
    """Compare a list of shorthand symbols with a decomposition.

    Returns (unmatched symbols, missing {coords: count}, extra {coords: count})."""
    have = _ss_counts(computed)
    wild = 0
    unknown = []
    for s in symbols:
        ws = symbol_weights(model, s)
        if ws is None:
            wild += 1
            continue
        for w in ws:
            if have.get(w.coords, 0) > 0:
                have[w.coords] -= 1
            else:
                unknown.append((s, w.coords))
    extra = {k: v for k, v in have.items() if v}
    # wildcards absorb leftovers
    for k in sorted(extra):
        while wild and extra[k]:
            extra[k] -= 1
            wild -= 1
    extra = {k: v for k, v in extra.items() if v}
    missing = {}
    for s, k in unknown:
        missing[k] = missing.get(k, 0) + 1
    if wild:
        missing[("T_2",)] = wild
    return unknown, missing, extra


def name_component(model: Model, w: Weight, candidates: list[str]) -> str:
    for s in candidates:
        ws = symbol_weights(model, s)
        if ws and any(x.coords == w.coords for x in ws):
            return s
    return ""


# ---------------------------------------------------------------------------
# goldens


def golden_slug(name: str) -> str:
    return re.sub(r"[^A-Za-z0-9]+", "_", name).strip("_")


def load_golden(model_name: str) -> dict:
    path = resources.files("chssrigid") / "goldens" / f"{golden_slug(model_name)}.json"
    return json.loads(path.read_text(encoding="utf-8"))


@dataclass
class RowComparison:
    row: str
    status: str            # "match", "paper-table discrepancy" (documented), "mismatch"
    detail: str = ""
    published: list = field(default_factory=list)
    expected: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.status != "mismatch"


def _fmt(model, d):
    out = []
    for k, v in sorted(d.items()):
        if k == ("T_2",):
            out.append(f"T_2 x{v}")
        else:
            out.append(f"{format_weight(Weight(k, tuple(0 for _ in range(model.rank.torus_dim)), model.rank)).split(' @')[0]} x{v}")
    return ", ".join(out)


def compare_with_golden(model: Model | str, rows: list[TableRow] | None = None) -> list[RowComparison]:
    if isinstance(model, str):
        model = build_model(model)
    rows = rows or regenerate_tables(model)
    by_name = {r.name: r for r in rows}
    golden = load_golden(model.name)
    errata = {e["row"]: e for e in golden.get("errata", [])}
    out = []
    for g in golden["rows"]:
        r = by_name.get(g["row"])
        if r is None:
            out.append(RowComparison(g["row"], "mismatch", "row not generated"))
            continue
        if "orbits" in g:
            ok = r.orbits == g["orbits"]
            out.append(RowComparison(g["row"], "match" if ok else "mismatch",
                                     f"{r.orbits} components up to the swap, expected {g['orbits']}"))
            continue
        published = g["published"]
        _, miss, extra = match_symbols(model, r.decomposition, published)
        if not miss and not extra:
            out.append(RowComparison(g["row"], "match", "", published, published))
            continue
        detail = f"table lists {published}; missing [{_fmt(model, miss)}], unlisted [{_fmt(model, extra)}]"
        e = errata.get(g["row"])
        if e is not None:
            _, miss2, extra2 = match_symbols(model, r.decomposition, e["corrected"])
            if not miss2 and not extra2:
                out.append(RowComparison(g["row"], "paper-table discrepancy", detail + "; " + e["note"],
                                         published, e["corrected"]))
                continue
            detail += f"; documented correction {e['corrected']} does not match either"
        out.append(RowComparison(g["row"], "mismatch", detail, published, e["corrected"] if e else published))
    return out


# ---------------------------------------------------------------------------
# markdown


def render_tables(model: Model | str) -> str:
    if isinstance(model, str):
        model = build_model(model)
    rows = regenerate_tables(model)
    try:
        golden = {g["row"]: g for g in load_golden(model.name)["rows"]}
        errata = {e["row"]: e["corrected"] for e in load_golden(model.name).get("errata", [])}
    except FileNotFoundError:
        golden, errata = {}, {}
    lines = [f"## {model.name}", "", f"n = {model.n}, a = {model.a}", "",
             "| row | component | shorthand | mult | dim |", "|---|---|---|---|---|"]
    for r in rows:
        names = errata.get(r.name) or golden.get(r.name, {}).get("published", [])
        first = True
        for w, m in r.decomposition.items():
            lab = r.name if first else ""
            lines.append(f"| {lab} | {format_weight(w)} | {name_component(model, w, names)} | {m} | "
                         f"{m * _dim(model, w)} |")
            first = False
        lines.append(f"| {r.name} total | | | {r.decomposition.count()} | {r.dimension} "
                     f"(expected {r.expected_dimension}{'' if r.mass_ok else ', MISMATCH'}) |")
    lines.append("")
    for c in compare_with_golden(model, rows):
        if c.status != "match":
            lines.append(f"- {c.row}: {c.status}: {c.detail}")
    return "\n".join(lines) + "\n"


def _dim(model, w):
    from .characters import weyl_dimension
    return weyl_dimension(model.rd, w)
