"""Sparse multivariate polynomials with exact rational coefficients.

A polynomial is a mapping from exponent tuples to nonzero rationals.  Integral
coefficients are stored as ``int`` and everything else as ``Fraction``; both
compare and hash consistently, and keeping the integers unboxed makes the
common case (integer maps) several times faster.

``HomogPoly`` is the three-variable homogeneous specialization used for plane
maps.  It carries an explicit degree tag so that the zero polynomial still
knows which graded piece it lives in.
"""

from __future__ import annotations

import heapq
import os
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence, Union

from ..errors import DegreeMismatch, ResourceLimit

Rat = Union[int, Fraction]
Exponent = tuple

DEFAULT_TERM_LIMIT = 200_000
XYZ = ("x", "y", "z")


def term_limit() -> int:
    """Current term-count guard; ``CREMONA_TERM_LIMIT`` overrides the default."""
    raw = os.environ.get("CREMONA_TERM_LIMIT")
    if raw:
        try:
            value = int(raw)
        except ValueError:
            return DEFAULT_TERM_LIMIT
        if value > 0:
            return value
    return DEFAULT_TERM_LIMIT


def _guard(n: int) -> None:
    limit = term_limit()
    if n > limit:
        raise ResourceLimit(f"polynomial with {n} terms exceeds the term limit {limit}")


def rat(value) -> Rat:
    """Coerce ints, Fractions and ``"a/b"`` strings into the canonical rational."""
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else value
    if isinstance(value, str):
        return rat(Fraction(value.strip()))
    if isinstance(value, float):
        raise TypeError("floats are not accepted as exact coefficients")
    return rat(Fraction(value))


def _canon(c: Rat) -> Rat:
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def _div(a: Rat, b: Rat) -> Rat:
    if type(a) is int and type(b) is int:
        q, r = divmod(a, b)
        if r == 0:
            return q
    return _canon(Fraction(a) / b)


def format_rat(c: Rat) -> str:
    c = _canon(c)
    if isinstance(c, int):
        return str(c)
    return f"{c.numerator}/{c.denominator}"


class Poly:
    """Immutable sparse polynomial in ``nvars`` variables over the rationals."""

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, terms: Mapping[Exponent, Rat] | None = None, nvars: int = 3):
        clean = {}
        for e, c in (terms or {}).items():
            c = rat(c)
            if c:
                e = tuple(e)
                if len(e) != nvars:
                    raise ValueError(f"exponent {e} does not have {nvars} entries")
                if any(k < 0 for k in e):
                    raise ValueError(f"negative exponent in {e}")
                clean[e] = c
        self.nvars = nvars
        self.terms = clean
        self._hash = None

    # construction helpers ------------------------------------------------

    def _make(self, terms: dict, degree: int | None = None) -> "Poly":
        p = Poly.__new__(Poly)
        p.nvars = self.nvars
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def zero(cls, nvars: int = 3) -> "Poly":
        return cls({}, nvars)

    @classmethod
    def const(cls, value, nvars: int = 3) -> "Poly":
        return cls({(0,) * nvars: value}, nvars)

    @classmethod
    def var(cls, index: int, nvars: int = 3) -> "Poly":
        e = [0] * nvars
        e[index] = 1
        return cls({tuple(e): 1}, nvars)

    @classmethod
    def monomial(cls, exponent: Sequence[int], coeff: Rat = 1) -> "Poly":
        return cls({tuple(exponent): coeff}, len(exponent))

    # basic properties ----------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    @property
    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_value(self) -> Rat:
        return self.terms.get((0,) * self.nvars, 0)

    def total_degree(self) -> int:
        """Largest total degree of a term; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, i: int) -> int:
        if not self.terms:
            return -1
        return max(e[i] for e in self.terms)

    def min_degree_in(self, i: int) -> int:
        if not self.terms:
            raise ValueError("the zero polynomial has no vanishing order")
        return min(e[i] for e in self.terms)

    def variables(self) -> set[int]:
        out = set()
        for e in self.terms:
            for i, k in enumerate(e):
                if k:
                    out.add(i)
        return out

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def lex_leading(self) -> tuple[Exponent, Rat]:
        e = max(self.terms)
        return e, self.terms[e]

    def top_form(self) -> "Poly":
        """Sum of the terms of highest total degree."""
        d = self.total_degree()
        return Poly({e: c for e, c in self.terms.items() if sum(e) == d}, self.nvars)

    # equality ------------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return not self.terms
            return self.is_constant and self.constant_value() == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    # arithmetic ----------------------------------------------------------

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.nvars != self.nvars:
                raise ValueError("polynomials live in different variable counts")
            return other
        return Poly.const(other, self.nvars)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = _canon(v)
            else:
                out.pop(e, None)
        return self._make(out, self._sum_degree(other))

    __radd__ = __add__

    def __neg__(self):
        return self._make({e: -c for e, c in self.terms.items()}, getattr(self, "degree", None))

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def _sum_degree(self, other):
        return None

    def scale(self, c) -> "Poly":
        c = rat(c)
        if not c:
            return self._make({}, getattr(self, "degree", None))
        return self._make({e: _canon(v * c) for e, v in self.terms.items()},
                          getattr(self, "degree", None))

    def __truediv__(self, c):
        if isinstance(c, Poly):
            return self.exact_div(c)
        c = rat(c)
        return self._make({e: _div(v, c) for e, v in self.terms.items()},
                          getattr(self, "degree", None))

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self.scale(other)
        other = self._coerce(other)
        out = _mul_terms(self.terms, other.terms, self.nvars)
        return self._make(out, self._prod_degree(other))

    def __rmul__(self, other):
        return self.scale(other)

    def _prod_degree(self, other):
        return None

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        result = self._make({(0,) * self.nvars: 1}, 0 if hasattr(self, "degree") else None)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # calculus and substitution -------------------------------------------

    def derivative(self, i: int) -> "Poly":
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                ne = e[:i] + (k - 1,) + e[i + 1:]
                out[ne] = _canon(c * k)
        deg = getattr(self, "degree", None)
        return self._make(out, None if deg is None else max(deg - 1, 0))

    def evaluate(self, point: Sequence, one=1, zero=0):
        """Evaluate at ``point``; entries may be any ring elements (Fractions,
        number-field elements, ...) supporting ``+``, ``*`` and ``**``."""
        acc = zero
        cache: dict = {}
        for e, c in self.terms.items():
            term = one
            for i, k in enumerate(e):
                if k:
                    key = (i, k)
                    pw = cache.get(key)
                    if pw is None:
                        pw = point[i] ** k
                        cache[key] = pw
                    term = term * pw
            acc = acc + term * c
        return acc

    def compose(self, subs: Sequence["Poly"]) -> "Poly":
        """Substitute ``subs[i]`` for variable ``i``; returns a ``Poly`` in the
        variables of the substitutes."""
        if len(subs) != self.nvars:
            raise ValueError("need one substitute per variable")
        n = subs[0].nvars
        cache: dict = {}

        def power(i, k):
            key = (i, k)
            pw = cache.get(key)
            if pw is None:
                pw = Poly.const(1, n) if k == 0 else (subs[i] if k == 1 else power(i, k - 1) * subs[i])
                pw = Poly(pw.terms, n) if type(pw) is not Poly else pw
                cache[key] = pw
            return pw

        acc: dict = {}
        # largest powers first so that the product chain reuses big factors
        for e, c in self.terms.items():
            factors = [power(i, k) for i, k in enumerate(e) if k]
            if not factors:
                term = {(0,) * n: c}
            else:
                factors.sort(key=len)
                t = factors[0].terms
                for f in factors[1:]:
                    t = _mul_terms(t, f.terms, n)
                term = {ee: cc * c for ee, cc in t.items()}
            for ee, cc in term.items():
                v = acc.get(ee, 0) + cc
                if v:
                    acc[ee] = _canon(v)
                else:
                    acc.pop(ee, None)
            _guard(len(acc))
        return Poly(acc, n) if False else _raw_poly(acc, n)

    def coeffs_in(self, i: int) -> dict[int, "Poly"]:
        """View as a polynomial in variable ``i``: power -> coefficient (free of ``i``)."""
        out: dict[int, dict] = {}
        for e, c in self.terms.items():
            k = e[i]
            out.setdefault(k, {})[e[:i] + (0,) + e[i + 1:]] = c
        return {k: _raw_poly(t, self.nvars) for k, t in out.items()}

    def shift(self, exponent: Sequence[int]) -> "Poly":
        """Multiply by the monomial with the given exponent."""
        return _raw_poly({tuple(a + b for a, b in zip(e, exponent)): c
                          for e, c in self.terms.items()}, self.nvars)

    # division ------------------------------------------------------------

    def exact_div(self, d: "Poly") -> "Poly":
        """Quotient of an exact division; raises ``ValueError`` on a remainder."""
        q = _exact_div_terms(self.terms, d.terms, self.nvars)
        deg = getattr(self, "degree", None)
        ddeg = getattr(d, "degree", None)
        return self._make(q, None if deg is None or ddeg is None else deg - ddeg)

    def divides(self, other: "Poly") -> bool:
        try:
            _exact_div_terms(other.terms, self.terms, self.nvars)
        except ValueError:
            return False
        return True

    # normalization -------------------------------------------------------

    def monic(self) -> "Poly":
        """Divide by the coefficient of the lexicographically first monomial."""
        if not self.terms:
            return self
        _, c = self.lex_leading()
        if c == 1:
            return self
        return self / c

    def primitive_integer(self) -> "Poly":
        """Scale to coprime integer coefficients with positive lex-leading term."""
        if not self.terms:
            return self
        from math import gcd, lcm

        den = 1
        for c in self.terms.values():
            if isinstance(c, Fraction):
                den = lcm(den, c.denominator)
        scaled = {e: int(c * den) for e, c in self.terms.items()}
        g = 0
        for c in scaled.values():
            g = gcd(g, c)
        _, lead = max(scaled.items())
        if lead < 0:
            g = -g
        return self._make({e: c // g for e, c in scaled.items()}, getattr(self, "degree", None))

    # printing ------------------------------------------------------------

    def to_str(self, names: Sequence[str] | None = None) -> str:
        if names is None:
            names = XYZ if self.nvars == 3 else tuple(f"x{i}" for i in range(self.nvars))
            if self.nvars == 2:
                names = ("x", "y")
            if self.nvars == 1:
                names = ("t",)
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k)
            neg = c < 0
            a = -c if neg else c
            if not mono:
                body = format_rat(a)
            elif a == 1:
                body = mono
            else:
                body = f"{format_rat(a)}*{mono}"
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append((" - " if neg else " + ") + body)
        return "".join(parts)

    def __str__(self) -> str:
        return self.to_str()

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.to_str()!r})"


def _raw_poly(terms: dict, nvars: int) -> Poly:
    p = Poly.__new__(Poly)
    p.nvars = nvars
    p.terms = terms
    p._hash = None
    return p


def _mul_terms(a: dict, b: dict, n: int) -> dict:
    if len(a) < len(b):
        a, b = b, a
    out: dict = {}
    get = out.get
    if n == 3:
        for (a0, a1, a2), ca in a.items():
            for (b0, b1, b2), cb in b.items():
                e = (a0 + b0, a1 + b1, a2 + b2)
                out[e] = get(e, 0) + ca * cb
    elif n == 2:
        for (a0, a1), ca in a.items():
            for (b0, b1), cb in b.items():
                e = (a0 + b0, a1 + b1)
                out[e] = get(e, 0) + ca * cb
    elif n == 1:
        for (a0,), ca in a.items():
            for (b0,), cb in b.items():
                e = (a0 + b0,)
                out[e] = get(e, 0) + ca * cb
    else:
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                out[e] = get(e, 0) + ca * cb
    _guard(len(out))
    return {e: _canon(c) for e, c in out.items() if c}


def _exact_div_terms(num: dict, den: dict, n: int) -> dict:
    if not den:
        raise ZeroDivisionError("division by the zero polynomial")
    if not num:
        return {}
    lead = max(den)
    lc = den[lead]
    if len(den) == 1:
        out = {}
        for e, c in num.items():
            ne = tuple(a - b for a, b in zip(e, lead))
            if any(k < 0 for k in ne):
                raise ValueError("division is not exact")
            out[ne] = _div(c, lc)
        return out
    rest = [(e, c) for e, c in den.items() if e != lead]
    rem = dict(num)
    heap = [tuple(-k for k in e) for e in rem]
    heapq.heapify(heap)
    quot: dict = {}
    while rem:
        while True:
            ne = heapq.heappop(heap)
            e = tuple(-k for k in ne)
            if e in rem:
                break
        c = rem.pop(e)
        qe = tuple(a - b for a, b in zip(e, lead))
        if any(k < 0 for k in qe):
            raise ValueError("division is not exact")
        qc = _div(c, lc)
        quot[qe] = qc
        for de, dc in rest:
            te = tuple(a + b for a, b in zip(qe, de))
            old = rem.get(te)
            v = (old or 0) - qc * dc
            if v:
                rem[te] = _canon(v)
                if old is None:
                    heapq.heappush(heap, tuple(-k for k in te))
            elif old is not None:
                del rem[te]
        if len(quot) > term_limit():
            raise ResourceLimit("quotient exceeds the term limit")
    return quot


class HomogPoly(Poly):
    """Homogeneous polynomial in ``x, y, z`` with an explicit degree tag."""

    __slots__ = ("degree",)

    def __init__(self, terms: Mapping[Exponent, Rat] | None = None, degree: int | None = None):
        super().__init__(terms, 3)
        degs = {sum(e) for e in self.terms}
        if len(degs) > 1:
            raise DegreeMismatch(f"terms of mixed degrees {sorted(degs)}")
        if degs:
            (d,) = degs
            if degree is not None and degree != d:
                raise DegreeMismatch(f"terms have degree {d}, tag says {degree}")
            degree = d
        if degree is None:
            raise ValueError("the zero polynomial needs an explicit degree tag")
        self.degree = degree

    def _make(self, terms: dict, degree: int | None = None) -> "HomogPoly":
        p = HomogPoly.__new__(HomogPoly)
        p.nvars = 3
        p.terms = terms
        p._hash = None
        if terms:
            degree = sum(next(iter(terms)))
        p.degree = 0 if degree is None else degree
        return p

    @classmethod
    def from_poly(cls, p: Poly, degree: int | None = None) -> "HomogPoly":
        if p.nvars != 3:
            raise ValueError("homogeneous polynomials here have three variables")
        return cls(p.terms, degree)

    @classmethod
    def zero(cls, degree: int = 0) -> "HomogPoly":
        return cls({}, degree)

    @classmethod
    def const(cls, value, nvars: int = 3) -> "HomogPoly":
        return cls({(0, 0, 0): value}, 0)

    @classmethod
    def var(cls, index: int, nvars: int = 3) -> "HomogPoly":
        e = [0, 0, 0]
        e[index] = 1
        return cls({tuple(e): 1}, 1)

    @classmethod
    def linear(cls, coeffs: Sequence) -> "HomogPoly":
        return cls({(1, 0, 0): coeffs[0], (0, 1, 0): coeffs[1], (0, 0, 1): coeffs[2]}, 1)

    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.nvars != 3:
                raise ValueError("polynomials live in different variable counts")
            return other
        return HomogPoly({(0, 0, 0): other}, 0)

    def __add__(self, other):
        other = self._coerce(other)
        if self.terms and other.terms:
            od = getattr(other, "degree", other.total_degree())
            if od != self.degree:
                raise DegreeMismatch(f"cannot add degree {self.degree} and degree {od}")
        return super().__add__(other)

    __radd__ = __add__

    def _sum_degree(self, other):
        if self.terms:
            return self.degree
        return getattr(other, "degree", max(other.total_degree(), 0))

    def _prod_degree(self, other):
        return self.degree + getattr(other, "degree", max(other.total_degree(), 0))

    def compose(self, subs: Sequence[Poly]) -> Poly:
        out = super().compose(subs)
        degs = {getattr(s, "degree", None) for s in subs}
        if len(degs) == 1 and None not in degs and subs[0].nvars == 3:
            (d,) = degs
            return HomogPoly.from_poly(out, self.degree * d) if out.terms else HomogPoly.zero(self.degree * d)
        return out

    def linear_coeffs(self) -> tuple[Rat, Rat, Rat]:
        if self.degree != 1:
            raise DegreeMismatch("not a linear form")
        t = self.terms
        return (t.get((1, 0, 0), 0), t.get((0, 1, 0), 0), t.get((0, 0, 1), 0))


def as_homog(p: Poly) -> HomogPoly:
    if isinstance(p, HomogPoly):
        return p
    return HomogPoly.from_poly(p)


X = HomogPoly.var(0)
Y = HomogPoly.var(1)
Z = HomogPoly.var(2)


def add(p: Poly, q: Poly) -> Poly:
    return p + q


def mul(p: Poly, q: Poly) -> Poly:
    return p * q


def jacobian_det(f0: HomogPoly, f1: HomogPoly, f2: HomogPoly) -> HomogPoly:
    """Determinant of the 3x3 matrix of partial derivatives."""
    fs = [as_homog(f) for f in (f0, f1, f2)]
    degs = {f.degree for f in fs}
    if len(degs) != 1:
        raise DegreeMismatch(f"components have degrees {[f.degree for f in fs]}")
    (d,) = degs
    if d < 1:
        raise DegreeMismatch("components must have degree at least 1")
    m = [[f.derivative(j) for j in range(3)] for f in fs]
    det = (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
           - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
           + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))
    if not det.terms:
        return HomogPoly.zero(3 * (d - 1))
    return as_homog(det)


def vanishing_order(p: Poly, along: int) -> int:
    """Order of vanishing along the coordinate hyperplane ``{var = 0}``:
    the minimal exponent of that variable over the terms of ``p``."""
    return p.min_degree_in(along)


def map_terms(p: Poly, fn: Callable[[Rat], Rat]) -> Poly:
    return Poly({e: fn(c) for e, c in p.terms.items()}, p.nvars)


def poly_from_iter(items: Iterable[tuple[Sequence[int], Rat]], nvars: int) -> Poly:
    acc: dict = {}
    for e, c in items:
        e = tuple(e)
        acc[e] = acc.get(e, 0) + rat(c)
    return Poly(acc, nvars)
