"""Recursive-descent parser for polynomial, map, matrix and word text.

Grammar (whitespace ignored)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*        division only by constants
    unary  := ('+' | '-') unary | power
    power  := atom (('^' | '**') INT)?
    atom   := INT | VAR | '(' expr ')'

Juxtaposition such as ``2x`` or ``x y`` is rejected.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Sequence

from ..errors import DegreeMismatch, ParseError
from .poly import HomogPoly, Poly, as_homog, rat

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^():\[\];,]))")


def tokenize(text: str) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[bad]!r}", bad)
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            out.append(("num", m.group(1), start))
        elif m.group(2) is not None:
            out.append(("name", m.group(2), start))
        else:
            out.append(("op", m.group(3), start))
        pos = m.end()
    out.append(("end", "", n))
    return out


class _Parser:
    def __init__(self, text: str, names: Sequence[str]):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0
        self.names = list(names)
        self.nvars = len(names)

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, value: str):
        kind, v, pos = self.take()
        if v != value or kind == "end":
            found = "end of input" if kind == "end" else repr(v)
            raise ParseError(f"expected {value!r}, found {found}", pos)

    def expr(self) -> Poly:
        acc = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self) -> Poly:
        acc = self.unary()
        while True:
            kind, v, pos = self.peek()
            if kind == "op" and v == "*":
                self.take()
                acc = acc * self.unary()
            elif kind == "op" and v == "/":
                self.take()
                rhs = self.unary()
                if not rhs.is_constant or rhs.is_zero:
                    raise ParseError("division is only allowed by nonzero constants", pos)
                acc = acc.scale(Fraction(1) / Fraction(rhs.constant_value()))
            elif kind in ("num", "name") or (kind == "op" and v == "("):
                raise ParseError("implicit multiplication is not allowed; use '*'", pos)
            else:
                return acc

    def unary(self) -> Poly:
        kind, v, _ = self.peek()
        if kind == "op" and v in ("+", "-"):
            self.take()
            inner = self.unary()
            return -inner if v == "-" else inner
        return self.power()

    def power(self) -> Poly:
        base = self.atom()
        kind, v, _ = self.peek()
        if kind == "op" and v in ("^", "**"):
            self.take()
            kind, num, pos = self.take()
            if kind != "num":
                raise ParseError("exponent must be a non-negative integer", pos)
            return base ** int(num)
        return base

    def atom(self) -> Poly:
        kind, v, pos = self.take()
        if kind == "num":
            return Poly.const(int(v), self.nvars)
        if kind == "name":
            if v not in self.names:
                raise ParseError(f"unknown variable {v!r}; expected one of {', '.join(self.names)}", pos)
            return Poly.var(self.names.index(v), self.nvars)
        if kind == "op" and v == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        found = "end of input" if kind == "end" else repr(v)
        raise ParseError(f"expected a number, variable or '(', found {found}", pos)


def parse_poly(text: str, names: Sequence[str] = ("x", "y", "z")) -> Poly:
    p = _Parser(text, names)
    out = p.expr()
    kind, v, pos = p.peek()
    if kind != "end":
        raise ParseError(f"unexpected {v!r}", pos)
    return out


def parse_homog(text: str) -> HomogPoly:
    p = parse_poly(text)
    if not p.is_homogeneous():
        raise DegreeMismatch(f"{text.strip()!r} is not homogeneous")
    return as_homog(p) if p.terms else HomogPoly.zero(0)


def parse_components(text: str, count: int, names: Sequence[str]) -> list[Poly]:
    """Parse ``(p0 : p1 : ...)`` with exactly ``count`` components."""
    p = _Parser(text, names)
    p.expect("(")
    comps = [p.expr()]
    while True:
        kind, v, pos = p.peek()
        if kind == "op" and v == ":":
            p.take()
            comps.append(p.expr())
        elif kind == "op" and v == ")":
            p.take()
            break
        else:
            found = "end of input" if kind == "end" else repr(v)
            raise ParseError(f"expected ':' or ')', found {found}", pos)
    kind, v, pos = p.peek()
    if kind != "end":
        raise ParseError(f"unexpected {v!r} after the closing parenthesis", pos)
    if len(comps) != count:
        raise ParseError(f"expected {count} components separated by ':', found {len(comps)}", 0)
    return comps


def parse_map_components(text: str) -> list[HomogPoly]:
    comps = parse_components(text, 3, ("x", "y", "z"))
    out = []
    degs = set()
    for c in comps:
        if not c.is_homogeneous():
            raise DegreeMismatch(f"component {c} is not homogeneous")
        if c.terms:
            degs.add(c.total_degree())
    if len(degs) > 1:
        raise DegreeMismatch(f"components have different degrees {sorted(degs)}")
    d = degs.pop() if degs else 0
    for c in comps:
        out.append(as_homog(c) if c.terms else HomogPoly.zero(d))
    return out


_RAT = re.compile(r"\s*([-+]?\d+(?:\s*/\s*\d+)?)\s*")


def parse_rational(text: str, offset: int = 0):
    m = _RAT.fullmatch(text)
    if not m:
        raise ParseError(f"malformed rational {text.strip()!r}", offset)
    s = m.group(1).replace(" ", "")
    try:
        return rat(Fraction(s))
    except ZeroDivisionError:
        raise ParseError("zero denominator", offset) from None


def parse_matrix(text: str, offset: int = 0, size: int | None = None) -> list[list]:
    """``[[a,b,c],[d,e,f],[g,h,i]]`` with integer or ``a/b`` entries."""
    s = text.strip()
    lead = offset + (len(text) - len(text.lstrip()))
    if not (s.startswith("[[") and s.endswith("]]")):
        raise ParseError("a matrix must look like [[r,r,r],[r,r,r],[r,r,r]]", lead)
    body = s[2:-2]
    rows = re.split(r"\]\s*,\s*\[", body)
    out = []
    for r in rows:
        if "[" in r or "]" in r:
            raise ParseError("malformed matrix rows", lead)
        out.append([parse_rational(e, lead) for e in r.split(",")])
    n = len(out)
    if any(len(r) != n for r in out) or (size is not None and n != size):
        want = f"{size}x{size}" if size else "square"
        raise ParseError(f"matrix must be {want}", lead)
    return out


def parse_word_letters(text: str) -> list:
    """Semicolon-separated letters: ``sigma`` or a 3x3 matrix.

    Returns a list of ``"SIGMA"`` tokens and matrices (lists of rows).
    """
    letters = []
    pos = 0
    for chunk in text.split(";"):
        stripped = chunk.strip()
        if not stripped:
            raise ParseError("empty letter in word", pos)
        if stripped.lower() == "sigma":
            letters.append("SIGMA")
        elif stripped.startswith("["):
            letters.append(parse_matrix(chunk, pos, size=3))
        else:
            raise ParseError(f"unknown letter {stripped!r}; expected 'sigma' or a matrix", pos)
        pos += len(chunk) + 1
    return letters
