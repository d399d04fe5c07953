"""A small expression language over the modules of a model.

    expr   := term ('+' term)*
    term   := factor (('⊗' | 'x' | '*') factor)*         # '*' only between factors
    factor := primary ('^frc' | '^T*c')*
    primary:= 'T' | 'T*' | 'N' | 'N*' | 'C'
            | ('S' | 'Λ' | 'L') k '(' expr ')'  | ('S' | 'Λ' | 'L') k primary
            | '(' expr ')'

``^frc`` removes the symmetry algebra (adjoints of the active factors plus one
trivial summand) and ``^T*c`` removes one copy of T*.  Both act on the
decomposition, so they are evaluated on IrrSums.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from math import comb

from .characters import CharacterError, IrrSum, decompose, ext_power, sym_power, trivial_character


class ExprError(ValueError):
    pass


_TOKEN = re.compile(r"\s*(\^frc|\^T\*c|T\*|N\*|⊗|\+|\(|\)|[SΛL]\d+|[TNCx*])")


def tokenize(text: str) -> list[str]:
    out, pos = [], 0
    text = text.replace("^𝔯ᶜ", "^frc").replace("^rc", "^frc").replace("^{T*c}", "^T*c")
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ExprError(f"unexpected input at {text[pos:]!r}")
        out.append(m.group(1))
        pos = m.end()
    return out


@dataclass
class Node:
    op: str
    args: tuple = ()
    k: int = 0
    name: str = ""


class _Parser:
    def __init__(self, tokens):
        self.t, self.i = tokens, 0

    def peek(self):
        return self.t[self.i] if self.i < len(self.t) else None

    def take(self, tok=None):
        cur = self.peek()
        if cur is None or (tok is not None and cur != tok):
            raise ExprError(f"expected {tok or 'a token'}, got {cur!r}")
        self.i += 1
        return cur

    def expr(self):
        parts = [self.term()]
        while self.peek() == "+":
            self.take()
            parts.append(self.term())
        return parts[0] if len(parts) == 1 else Node("sum", tuple(parts))

    def term(self):
        parts = [self.factor()]
        while self.peek() in ("⊗", "x", "*"):
            self.take()
            parts.append(self.factor())
        return parts[0] if len(parts) == 1 else Node("tensor", tuple(parts))

    def factor(self):
        node = self.primary()
        while self.peek() in ("^frc", "^T*c"):
            node = Node(self.take(), (node,))
        return node

    def primary(self):
        tok = self.take()
        if tok in ("T", "T*", "N", "N*", "C"):
            return Node("atom", name=tok)
        if tok[0] in "SΛL" and tok[1:].isdigit():
            k = int(tok[1:])
            arg = self.primary() if self.peek() != "(" else self.paren()
            return Node("sym" if tok[0] == "S" else "ext", (arg,), k=k)
        if tok == "(":
            self.i -= 1
            return self.paren()
        raise ExprError(f"unexpected token {tok!r}")

    def paren(self):
        self.take("(")
        node = self.expr()
        self.take(")")
        return node


def parse(text: str) -> Node:
    p = _Parser(tokenize(text))
    if p.peek() is None:
        raise ExprError("empty expression")
    node = p.expr()
    if p.peek() is not None:
        raise ExprError(f"trailing input {p.t[p.i:]}")
    return node


def _atom_module(model, name):
    return {"T": model.T, "T*": model.Tdual, "N": model.N, "N*": model.Ndual}[name]


def evaluate(model, text_or_node) -> IrrSum:
    """Decomposition of the expression into irreducibles."""
    from .orchestrator import r_summands

    node = parse(text_or_node) if isinstance(text_or_node, str) else text_or_node
    rd = model.rd

    def ev(n):
        if n.op == "atom":
            if n.name == "C":
                return decompose(trivial_character(model.rank), rd)
            return decompose(_atom_module(model, n.name).character(), rd)
        if n.op == "sum":
            out = ev(n.args[0])
            for a in n.args[1:]:
                out = out + ev(a)
            return out
        if n.op == "tensor":
            chi = ev(n.args[0]).character(rd)
            for a in n.args[1:]:
                chi = chi * ev(a).character(rd)
            return decompose(chi, rd)
        if n.op in ("sym", "ext"):
            chi = ev(n.args[0]).character(rd)
            return decompose(sym_power(chi, n.k) if n.op == "sym" else ext_power(chi, n.k), rd)
        inner = ev(n.args[0])
        try:
            if n.op == "^frc":
                return inner.minus(r_summands(model, inner.character(rd)))
            return inner.minus(decompose(model.Tdual.character(), rd))
        except CharacterError as exc:
            raise ExprError(f"complement {n.op} not defined here: {exc}") from exc

    return ev(node)


def expected_dimension(model, text_or_node) -> int:
    """Dimension by binomial arithmetic alone (complements use Weyl dimensions
    of the removed summands)."""
    from .orchestrator import r_summands

    node = parse(text_or_node) if isinstance(text_or_node, str) else text_or_node
    dims = {"T": model.n, "T*": model.n, "N": model.a, "N*": model.a, "C": 1}

    def d(n):
        if n.op == "atom":
            return dims[n.name]
        if n.op == "sum":
            return sum(d(a) for a in n.args)
        if n.op == "tensor":
            out = 1
            for a in n.args:
                out *= d(a)
            return out
        if n.op == "sym":
            m = d(n.args[0])
            return comb(m + n.k - 1, n.k)
        if n.op == "ext":
            return comb(d(n.args[0]), n.k)
        base = d(n.args[0])
        if n.op == "^T*c":
            return base - model.n
        inner = evaluate(model, n.args[0])
        return base - r_summands(model, inner.character(model.rd)).dimension(model.rd)

    return d(node)
