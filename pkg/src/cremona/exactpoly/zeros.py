"""Exact common zeros of finitely many ternary forms.

The projective zero set is found by elimination: after a random integral
change of coordinates, two generic combinations of the forms are eliminated
against each other with a resultant in ``z``.  Each irreducible factor of the
resultant defines a number field; over that field the remaining coordinate is
recovered as the root of a univariate gcd.  Points that are conjugate over the
rationals are reported once together with their field, so the count of
distinct complex zeros is the sum of the field degrees.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd as igcd
from typing import Sequence

from ..errors import InternalInconsistency, PositiveDimensional
from . import univariate as up
from .gcd import gcd_list, resultant
from .numberfield import NFElem, NumberField, kgcd, ksquarefree, ktrim
from .poly import HomogPoly, Poly, Rat, as_homog


@dataclass(frozen=True)
class ZeroPoint:
    """A Galois orbit of common zeros: coordinates live in ``field`` and the
    orbit has ``field.degree`` distinct points."""

    field: NumberField
    coords: tuple

    @property
    def count(self) -> int:
        return self.field.degree

    @property
    def is_rational(self) -> bool:
        return self.field.degree == 1

    def rational_coords(self) -> tuple:
        return normalize_point([c.to_rational() for c in self.coords])


@dataclass(frozen=True)
class ZeroSet:
    points: tuple

    @property
    def rational_points(self) -> list[tuple]:
        return sorted((p.rational_coords() for p in self.points if p.is_rational), key=point_key)

    @property
    def algebraic_count(self) -> int:
        return sum(p.count for p in self.points if not p.is_rational)

    @property
    def total_distinct(self) -> int:
        return sum(p.count for p in self.points)


def normalize_point(coords: Sequence[Rat]) -> tuple:
    """Primitive integer representative whose first nonzero entry is positive."""
    fr = [Fraction(c) for c in coords]
    if not any(fr):
        raise ValueError("(0:0:0) is not a projective point")
    den = 1
    for c in fr:
        den = den * c.denominator // igcd(den, c.denominator)
    ints = [int(c * den) for c in fr]
    g = 0
    for c in ints:
        g = igcd(g, c)
    lead = next(c for c in ints if c)
    if lead < 0:
        g = -g
    return tuple(c // g for c in ints)


def point_key(p: Sequence[int]) -> tuple:
    return tuple(-c for c in p)


def _random_matrix(rng: random.Random) -> list[list[int]]:
    while True:
        m = [[rng.randint(-3, 3) for _ in range(3)] for _ in range(3)]
        det = (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
               - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
               + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))
        if det:
            return m


def _linear_change(p: Poly, m: list[list[int]]) -> HomogPoly:
    subs = [HomogPoly.linear(row) for row in m]
    return as_homog(p.compose(subs)) if p.terms else p


def _in_field(p: Poly, point: Sequence, k: NumberField):
    return p.evaluate(point, one=k.one, zero=k.zero)


def _fiber_poly(p: HomogPoly, x, y, k: NumberField) -> list:
    """``p(x, y, z)`` as a dense list in ``z`` with number-field coefficients."""
    cs = p.coeffs_in(2)
    d = max(cs)
    return ktrim([_in_field(cs[i], (x, y, 0), k) if i in cs else k.zero for i in range(d + 1)])


def _solve_once(polys: list[HomogPoly], rng: random.Random) -> ZeroSet | None:
    m = _random_matrix(rng)
    qs = [_linear_change(p, m) for p in polys]
    d = qs[0].degree
    zd = (0, 0, d)
    if not any(q.terms.get(zd) for q in qs):
        return None
    if len(qs) == 1:
        raise PositiveDimensional("a single nonconstant form vanishes on a curve")
    for _ in range(4):
        a = [rng.randint(-7, 7) for _ in qs]
        b = [rng.randint(-7, 7) for _ in qs]
        pa = sum((q.scale(c) for q, c in zip(qs, a)), HomogPoly.zero(d))
        pb = sum((q.scale(c) for q, c in zip(qs, b)), HomogPoly.zero(d))
        if pa.terms.get(zd) and pb.terms.get(zd):
            break
    else:
        return None
    res = resultant(pa, pb, 2)
    if res.is_zero:
        g = gcd_list(polys)
        if g.total_degree() > 0:
            raise PositiveDimensional(f"the forms share the factor {g}")
        return None
    uni, form_deg = up.binary_to_univariate(res, 0, 1)
    classes: list[tuple[NumberField, object, object]] = []
    if form_deg - (len(uni) - 1) > 0:
        k = NumberField([0, 1])
        classes.append((k, k.one, k.zero))
    _, facs = up.factor(uni)
    for f, _ in facs:
        k = NumberField(f)
        classes.append((k, k.generator(), k.one))
    found = []
    for k, x, y in classes:
        g = None
        for q in qs:
            fp = _fiber_poly(q, x, y, k)
            g = fp if g is None else kgcd(g, fp)
            if g and len(g) == 1:
                break
        if g is None or len(g) <= 1:
            continue
        g = ksquarefree(g)
        if len(g) > 2:
            return None  # two zeros over the same projection point
        zval = -g[0] / g[1]
        u = (x, y, zval)
        coords = tuple(sum((u[j] * m[i][j] for j in range(3)), k.zero) for i in range(3))
        for p in polys:
            if _in_field(p, coords, k):
                raise InternalInconsistency("computed common zero does not annihilate the system")
        found.append(ZeroPoint(k, coords))
    return ZeroSet(tuple(found))


def common_zeros(polys: Sequence[Poly], seed: int = 1, validate: bool = True) -> ZeroSet:
    """Distinct common zeros in the complex projective plane of ternary forms
    of equal degree.

    Raises ``PositiveDimensional`` if the forms share a curve.  With
    ``validate`` a second independent coordinate change must reproduce the
    same count and the same rational points.
    """
    hs = [as_homog(p) for p in polys if not p.is_zero]
    if not hs:
        raise PositiveDimensional("all forms vanish identically")
    if any(h.degree == 0 for h in hs):
        return ZeroSet(())
    degs = {h.degree for h in hs}
    if len(degs) > 1:
        target = max(degs)
        # h*x^k, h*y^k, h*z^k cut out the same set as h
        lifted = []
        for h in hs:
            for v in range(3):
                lifted.append(h * HomogPoly.var(v) ** (target - h.degree))
        hs = lifted
    rng = random.Random(seed)
    results = []
    attempts = 0
    while len(results) < (2 if validate else 1):
        attempts += 1
        if attempts > 40:
            raise InternalInconsistency("elimination failed to find a generic projection")
        zs = _solve_once(hs, rng)
        if zs is not None:
            results.append(zs)
    if validate:
        a, b = results
        if a.total_distinct != b.total_distinct or a.rational_points != b.rational_points:
            raise InternalInconsistency(
                f"zero counts disagree across projections: {a.total_distinct} vs {b.total_distinct}")
    return results[0]
