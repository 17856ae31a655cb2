"""Dense univariate polynomials over the rationals.

Coefficient lists are ascending (index = power) with no trailing zeros; the
zero polynomial is the empty list.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .poly import Poly, Rat, _canon, _div, rat

UPoly = list


def trim(a: Sequence) -> list:
    a = list(a)
    while a and not a[-1]:
        a.pop()
    return a


def degree(a: Sequence) -> int:
    return len(a) - 1


def add(a, b) -> list:
    n = max(len(a), len(b))
    return trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def sub(a, b) -> list:
    n = max(len(a), len(b))
    return trim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])


def mul(a, b) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim([_canon(c) if isinstance(c, Fraction) else c for c in out])


def scale(a, c) -> list:
    return trim([x * c for x in a])


def divmod_(a, b) -> tuple[list, list]:
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    if len(a) - 1 < db:
        return [], trim(a)
    q = [0] * (len(a) - db)
    for k in range(len(a) - 1 - db, -1, -1):
        c = _div(a[k + db], lb) if a[k + db] else 0
        q[k] = c
        if c:
            for j in range(db + 1):
                a[k + j] -= c * b[j]
    return trim(q), trim(a[:db])


def monic(a) -> list:
    if not a:
        return []
    lc = a[-1]
    return [_div(c, lc) for c in a]


def gcd(a, b) -> list:
    """Monic greatest common divisor (Euclid over the rationals)."""
    a, b = trim(a), trim(b)
    while b:
        _, r = divmod_(a, b)
        a, b = b, monic(r) if r else r
    return monic(a)


def derivative(a) -> list:
    return trim([a[i] * i for i in range(1, len(a))])


def squarefree_part(a) -> list:
    a = trim(a)
    if len(a) <= 2:
        return monic(a)
    g = gcd(a, derivative(a))
    q, _ = divmod_(a, g)
    return monic(q)


def evaluate(a, x):
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


def compose(a, b) -> list:
    """a(b(t))."""
    acc: list = []
    for c in reversed(a):
        acc = add(mul(acc, b), [c] if c else [])
    return acc


def interpolate(xs: Sequence[Rat], ys: Sequence[Rat]) -> list:
    """Newton divided differences through the given nodes."""
    n = len(xs)
    coef = [rat(y) for y in ys]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = _div(coef[i] - coef[i - 1], xs[i] - xs[i - j])
    out: list = [coef[-1]] if coef[-1] else []
    for i in range(n - 2, -1, -1):
        out = add(mul(out, [-xs[i], 1]), [coef[i]])
    return out


def from_poly(p: Poly, var: int = 0) -> list:
    """Coefficients of a polynomial that only involves variable ``var``."""
    out: dict[int, Rat] = {}
    for e, c in p.terms.items():
        if any(k for i, k in enumerate(e) if i != var):
            raise ValueError("polynomial involves more than one variable")
        out[e[var]] = c
    if not out:
        return []
    return trim([out.get(i, 0) for i in range(max(out) + 1)])


def to_poly(a, var: int = 0, nvars: int = 1) -> Poly:
    terms = {}
    for i, c in enumerate(a):
        if c:
            e = [0] * nvars
            e[var] = i
            terms[tuple(e)] = c
    return Poly(terms, nvars)


def binary_to_univariate(p: Poly, first: int, second: int) -> tuple[list, int]:
    """Dehomogenize a binary form in ``first``, ``second`` by setting ``second = 1``.

    Returns the coefficient list in ``first`` and the degree of the form;
    ``second`` divides the form ``form_degree - len(list) + 1`` times.
    """
    out: dict[int, Rat] = {}
    d = -1
    for e, c in p.terms.items():
        if any(k for i, k in enumerate(e) if i not in (first, second)):
            raise ValueError("not a binary form in the requested variables")
        out[e[first]] = c
        d = max(d, e[first] + e[second])
    if not out:
        return [], -1
    return trim([out.get(i, 0) for i in range(max(out) + 1)]), d


def factor(a) -> tuple[Rat, list[tuple[list, int]]]:
    """Factor over the rationals into monic irreducible factors.

    Returns ``(unit, [(factor, multiplicity), ...])``.
    """
    a = trim(a)
    if not a:
        raise ValueError("cannot factor the zero polynomial")
    if len(a) == 1:
        return a[0], []
    import sympy

    t = sympy.Symbol("t")
    sp = sympy.Poly([sympy.Rational(Fraction(c).numerator, Fraction(c).denominator)
                     for c in reversed(a)], t, domain="QQ")
    unit, facs = sp.factor_list()
    out = []
    lead_total = Fraction(1)
    for f, m in facs:
        cs = [Fraction(int(c.p), int(c.q)) for c in reversed(f.all_coeffs())]
        lc = cs[-1]
        lead_total *= lc ** m
        out.append(([_canon(c / lc) for c in cs], int(m)))
    unit = _canon(Fraction(int(sympy.Rational(unit).p), int(sympy.Rational(unit).q)) * lead_total)
    out.sort(key=lambda fm: (len(fm[0]), [Fraction(c) for c in fm[0]]))
    return unit, out


def rational_roots(a) -> list[tuple[Rat, int]]:
    _, facs = factor(a)
    return [(-f[0], m) for f, m in facs if len(f) == 2]
