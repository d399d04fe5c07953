"""Markdown rendering of verification reports."""
from __future__ import annotations

from .models import build_model
from .tables import load_golden, name_component
from .weights import parse_weight

ROW_FOR_ORDER = {3: "S³T*⊗N", 4: "S⁴T*⊗N"}


def _shorthand(model, k):
    try:
        g = load_golden(model.name)
    except FileNotFoundError:
        return []
    row = ROW_FOR_ORDER.get(k)
    for e in g.get("errata", []):
        if e["row"] == row:
            return e["corrected"]
    for r in g["rows"]:
        if r["row"] == row:
            return r.get("published", [])
    return []


def render_markdown(report: dict) -> str:
    model = build_model(report["model"])
    out = [f"# {report['model']}: {report['verdict']}", "",
           f"seed {report['seed']}, {report['samples']} genericity samples", ""]
    for order in report["orders"]:
        k = order["k"]
        names = _shorthand(model, k)
        out += [f"## order {k}", "", f"S^{k}T*⊗N has dimension {order['dimension']}.", "",
                "| component | shorthand | mult | dim | fate |", "|---|---|---|---|---|"]
        fate = {}
        for e in order["eliminations"]:
            fate.setdefault(e["weight"], []).append(f"{e['reason']} x{e['count']}"
                                                    + (f" ({e['evidence']['stage']})" if "stage" in e["evidence"] else ""))
        for s in order["survivors"]:
            fate.setdefault(s["weight"], []).append(f"SURVIVES x{s['mult']}")
        for row in order["decomposition"]:
            w = row["weight"]
            short = name_component(model, parse_weight(w), names) if names else ""
            out.append(f"| {w} | {short} | {row['mult']} | {row['dim']} | {'; '.join(fate.get(w, []))} |")
        out.append("")
        for st in order["stages"]:
            out.append(f"- after {st['stage']}: {len(st['survivors'])} left")
        for note in order["notes"]:
            out.append(f"- {note}")
        for key, val in sorted(order["checks"].items()):
            out.append(f"- {key}: {val}")
        hwv = [e for e in order["eliminations"] if e["reason"] == "hwv-bertini"]
        if hwv:
            out += ["", "Highest weight vector eliminations:", ""]
            for e in hwv:
                ev = e["evidence"]
                shape = "single monomial" if ev.get("decomposable") else f"{len(ev['support'])} monomials, flagged"
                out.append(f"- {e['weight']}: {ev['rule']} (hwv support: {shape})")
                for ident in ev.get("identities", []):
                    out.append(f"  - {ident}")
        out.append("")
    out += ["## Bertini certificates", ""]
    for c in report["bertini_certificates"]:
        out.append(f"- {c['stage']}: q^{{{c['q']}}}, L = <{', '.join(c['L'])}>, parts {c['parts']}")
        for h in c["hypotheses"]:
            out.append(f"  - {h}")
    out += ["", "## Checks", ""]
    for c in report["dimension_checks"]:
        out.append(f"- [{'ok' if c['ok'] else 'FAILED'}] {c['check']}" + (f" ({c['detail']})" if c["detail"] else ""))
    if report["notes"]:
        out += [""] + [f"- {n}" for n in report["notes"]]
    return "\n".join(out) + "\n"
