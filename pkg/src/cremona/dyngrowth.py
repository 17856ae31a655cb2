"""Degree growth of iterated plane maps."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence, Union

from .cremaps import RationalMapP2, compose, make_map
from .errors import InconclusiveHorizon
from .exactpoly.poly import HomogPoly

DEFAULT_HORIZON = 8
LINEAR_GROWTH_HORIZON = 20
EPSILON = 0.05


@dataclass(frozen=True)
class DegreeSequence:
    map_degree: int
    degrees: tuple

    @property
    def N(self) -> int:
        return len(self.degrees)

    def check_invariants(self) -> bool:
        d = self.map_degree
        degs = self.degrees
        if not degs or degs[0] != d:
            return False
        for n, dn in enumerate(degs):
            if not 1 <= dn <= d ** (n + 1):
                return False
        return all(self.submultiplicative_pairs())

    def submultiplicative_pairs(self):
        """``deg f^(m+n) <= deg f^m * deg f^n`` on every recorded split."""
        degs = self.degrees
        for m in range(1, len(degs) + 1):
            for n in range(1, len(degs) + 1 - m):
                yield degs[m + n - 1] <= degs[m - 1] * degs[n - 1]


def iterates(f: RationalMapP2, n: int) -> list[RationalMapP2]:
    out = [f]
    for _ in range(n - 1):
        out.append(compose(f, out[-1]))
    return out


def degree_sequence(f: RationalMapP2, N: int = DEFAULT_HORIZON) -> DegreeSequence:
    """Exact degrees of the reduced iterates ``f, f^2, ..., f^N``."""
    if N < 1:
        raise ValueError("horizon must be at least 1")
    degs = [f.degree]
    g = f
    for _ in range(N - 1):
        g = compose(f, g)
        degs.append(g.degree)
    return DegreeSequence(f.degree, tuple(degs))


@dataclass(frozen=True)
class StabilityCertificate:
    """Bounded-horizon algebraic stability verdict."""

    stable: bool
    horizon: int
    first_failure: int | None
    degrees: tuple

    def __bool__(self) -> bool:
        return self.stable


def _as_sequence(f_or_seq, N: int) -> DegreeSequence:
    if isinstance(f_or_seq, DegreeSequence):
        return f_or_seq
    return degree_sequence(f_or_seq, N)


def is_algebraically_stable(f: Union[RationalMapP2, DegreeSequence], N: int = 5) -> StabilityCertificate:
    """Checks ``deg f^(n+1) = d^(n+1)`` for ``n < N``; ``first_failure`` is the
    zero-based index ``n`` of the first mismatch."""
    if N < 2:
        raise ValueError("horizon must be at least 2")
    seq = _as_sequence(f, N)
    degs = seq.degrees[:N]
    d = seq.map_degree
    for n, dn in enumerate(degs):
        if dn != d ** (n + 1):
            return StabilityCertificate(False, len(degs), n, degs)
    return StabilityCertificate(True, len(degs), None, degs)


class Growth(str, enum.Enum):
    BOUNDED = "BOUNDED"
    LINEAR = "LINEAR"
    QUADRATIC = "QUADRATIC"
    EXPONENTIAL = "EXPONENTIAL"


@dataclass(frozen=True)
class GrowthClass:
    tag: Growth
    evidence: dict = field(default_factory=dict)


def _period(degs: Sequence[int]) -> int | None:
    n = len(degs)
    start = n // 2
    for p in range(1, n // 2 + 1):
        lo = max(start, p)
        if n - lo < p:
            continue
        if all(degs[i] == degs[i - p] for i in range(lo, n)):
            return p
    return None


def growth_classify(seq: Union[DegreeSequence, Sequence[int]]) -> GrowthClass:
    """Bounded by exact period, polynomial by exact integer differences on the
    tail, exponential by tail ratios above ``1 + EPSILON`` that do not decrease
    by more than ``EPSILON``."""
    degs = list(seq.degrees if isinstance(seq, DegreeSequence) else seq)
    n = len(degs)
    if n < 6:
        raise InconclusiveHorizon(f"need at least 6 degrees, got {n}")
    p = _period(degs)
    if p is not None:
        return GrowthClass(Growth.BOUNDED, {"period": p, "tail": degs[n // 2:]})
    tail = degs[-max(n // 2, 4):]
    first = [b - a for a, b in zip(tail, tail[1:])]
    if len(set(first)) == 1 and first[0] > 0:
        return GrowthClass(Growth.LINEAR, {"slope": first[0], "tail": tail})
    second = [b - a for a, b in zip(first, first[1:])]
    if len(set(second)) == 1 and second[0] > 0:
        return GrowthClass(Growth.QUADRATIC, {"second_difference": second[0], "tail": tail})
    start = max(n // 2, 1)
    ratios = [degs[i] / degs[i - 1] for i in range(start, n)]
    if all(r > 1 + EPSILON for r in ratios) and all(b >= a - EPSILON for a, b in zip(ratios, ratios[1:])):
        return GrowthClass(Growth.EXPONENTIAL, {"tail_ratios": [round(r, 12) for r in ratios]})
    raise InconclusiveHorizon(f"no growth pattern stabilizes within {n} iterates: {degs}")


@dataclass(frozen=True)
class DynDegreeEstimate:
    value: float
    exact: object | None
    tends_to_one: bool
    method: str


def dyn_degree_estimate(seq: DegreeSequence) -> DynDegreeEstimate:
    """``deg(f^N)^(1/N)``, replaced by the exact degree under an AS certificate."""
    if seq.N < 4:
        raise ValueError("horizon must be at least 4")
    cert = is_algebraically_stable(seq, seq.N)
    if cert.stable:
        d = seq.map_degree
        return DynDegreeEstimate(float(d), d, d == 1, "algebraically stable")
    value = seq.degrees[-1] ** (1.0 / seq.N)
    tends = False
    try:
        tends = growth_classify(seq).tag != Growth.EXPONENTIAL
    except InconclusiveHorizon:
        pass
    return DynDegreeEstimate(value, None, tends, "root of last degree")


# exact quadratic surds --------------------------------------------------------


def _squarefree_split(n: int) -> tuple[int, int]:
    """``n = s^2 * r`` with ``r`` squarefree; returns ``(s, r)``."""
    s, r = 1, 1
    k = 2
    m = n
    while k * k <= m:
        e = 0
        while m % k == 0:
            m //= k
            e += 1
        s *= k ** (e // 2)
        r *= k ** (e % 2)
        k += 1
    return s, r * m


@dataclass(frozen=True)
class QuadraticSurd:
    """``a + b*sqrt(radicand)`` with rational ``a, b`` and squarefree radicand."""

    a: Fraction
    b: Fraction = Fraction(0)
    radicand: int = 1

    def __post_init__(self):
        a, b, r = Fraction(self.a), Fraction(self.b), self.radicand
        if r < 1:
            raise ValueError("radicand must be positive")
        s, r = _squarefree_split(r)
        b *= s
        if r == 1:
            a, b = a + b, Fraction(0)
        if b == 0:
            r = 1
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "radicand", r)

    def _lift(self, other) -> "QuadraticSurd":
        if isinstance(other, QuadraticSurd):
            if self.b and other.b and other.radicand != self.radicand:
                raise ValueError("surds live in different quadratic fields")
            return other
        return QuadraticSurd(Fraction(other))

    def __add__(self, other):
        o = self._lift(other)
        return QuadraticSurd(self.a + o.a, self.b + o.b, max(self.radicand, o.radicand))

    __radd__ = __add__

    def __mul__(self, other):
        o = self._lift(other)
        r = max(self.radicand, o.radicand)
        return QuadraticSurd(self.a * o.a + self.b * o.b * r, self.a * o.b + self.b * o.a, r)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = QuadraticSurd(Fraction(1))
        for _ in range(k):
            out = out * self
        return out

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * self.radicand ** 0.5

    def __str__(self) -> str:
        if not self.b:
            return _frac_str(self.a)
        den = self.a.denominator * self.b.denominator // _gcd(self.a.denominator, self.b.denominator)
        na, nb = self.a * den, self.b * den
        root = f"sqrt({self.radicand})"
        bpart = root if abs(nb) == 1 else f"{abs(nb.numerator)}*{root}"
        sign = "-" if nb < 0 else "+"
        body = f"{na.numerator}{sign}{bpart}" if na else (("-" if nb < 0 else "") + bpart)
        return body if den == 1 else f"({body})/{den}"


def _gcd(a: int, b: int) -> int:
    from math import gcd

    return gcd(a, b)


def _frac_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


# monomial maps --------------------------------------------------------------------


@dataclass(frozen=True)
class MonomialMap:
    """``(x, y) -> (x^a y^b, x^c y^d)`` for ``M = [[a, b], [c, d]]``."""

    M: tuple

    def __post_init__(self):
        m = tuple(tuple(int(v) for v in row) for row in self.M)
        object.__setattr__(self, "M", m)
        if abs(m[0][0] * m[1][1] - m[0][1] * m[1][0]) != 1:
            raise ValueError("monomial maps need |det M| = 1")

    @property
    def trace(self) -> int:
        return self.M[0][0] + self.M[1][1]

    @property
    def det(self) -> int:
        return self.M[0][0] * self.M[1][1] - self.M[0][1] * self.M[1][0]

    def power(self, k: int) -> "MonomialMap":
        r = ((1, 0), (0, 1))
        for _ in range(k):
            r = tuple(tuple(sum(r[i][t] * self.M[t][j] for t in range(2)) for j in range(2)) for i in range(2))
        return MonomialMap(r)


def monomial_dyn_degree(m: MonomialMap) -> QuadraticSurd:
    """Spectral radius of ``M``: ``(|tr| + sqrt(tr^2 - 4 det)) / 2`` when the
    discriminant is positive, otherwise 1."""
    tr, det = m.trace, m.det
    disc = tr * tr - 4 * det
    if disc <= 0:
        return QuadraticSurd(Fraction(1))
    lam = QuadraticSurd(Fraction(abs(tr), 2), Fraction(1, 2), disc)
    if float(lam) <= 1 + 1e-12 and lam == QuadraticSurd(Fraction(1)):
        return QuadraticSurd(Fraction(1))
    return lam


def monomial_as_p2_map(m: MonomialMap) -> RationalMapP2:
    """Homogenize with ``x = X/Z``, ``y = Y/Z`` and clear the common monomial."""
    (a, b), (c, d) = m.M
    vecs = [(a, b, -a - b), (c, d, -c - d), (0, 0, 0)]
    low = [min(v[i] for v in vecs) for i in range(3)]
    comps = [HomogPoly({tuple(v[i] - low[i] for i in range(3)): 1}) for v in vecs]
    return make_map(*comps)
