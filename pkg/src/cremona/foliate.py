"""The foliation of the plane attached to a rational map and its singular set.

A map ``f`` determines the pencil of lines joining ``p`` to ``f(p)``; the
1-form ``F0 dx + F1 dy + F2 dz`` defining it has coefficients
``y f2 - z f1``, ``z f0 - x f2`` and ``x f1 - y f0``.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from typing import Sequence

from .cremaps import RationalMapP2, compose, linear_map, matrix_det, sigma
from .errors import IdentityMap, InternalInconsistency
from .exactpoly.gcd import gcd_list
from .exactpoly.poly import HomogPoly, as_homog
from .exactpoly.zeros import ZeroPoint, common_zeros, point_key


@dataclass(frozen=True)
class Foliation1Form:
    F0: HomogPoly
    F1: HomogPoly
    F2: HomogPoly

    @property
    def coefficients(self) -> tuple:
        return (self.F0, self.F1, self.F2)

    @property
    def degree(self) -> int:
        """``nu``, one less than the degree of the coefficients."""
        return self.F0.degree - 1

    def euler_holds(self) -> bool:
        x, y, z = HomogPoly.var(0), HomogPoly.var(1), HomogPoly.var(2)
        return not (x * self.F0 + y * self.F1 + z * self.F2).terms

    def to_str(self) -> str:
        return " + ".join(f"({c.to_str()})d{v}" for c, v in zip(self.coefficients, "xyz"))


def _normalize(forms: Sequence[HomogPoly]) -> tuple:
    nonzero = [p for p in forms if p.terms]
    g = gcd_list(nonzero) if len(nonzero) > 1 else nonzero[0].monic()
    d = forms[0].degree
    if g.total_degree() > 0:
        d -= g.total_degree()
        forms = [p.exact_div(g) if p.terms else HomogPoly.zero(d) for p in forms]
    forms = [as_homog(p) if p.terms else HomogPoly.zero(d) for p in forms]
    lead = next(p for p in forms if p.terms).lex_leading()[1]
    return tuple(p / lead if lead != 1 else p for p in forms)


def foliation_of_map(f: RationalMapP2) -> Foliation1Form:
    x, y, z = HomogPoly.var(0), HomogPoly.var(1), HomogPoly.var(2)
    f0, f1, f2 = f.components
    raw = [y * f2 - z * f1, z * f0 - x * f2, x * f1 - y * f0]
    if not any(p.terms for p in raw):
        raise IdentityMap("the map is the identity; every line through a point is invariant")
    raw = [as_homog(p) if p.terms else HomogPoly.zero(f.degree + 1) for p in raw]
    form = Foliation1Form(*_normalize(raw))
    if not form.euler_holds():
        raise InternalInconsistency("Euler identity fails for the constructed form")
    return form


class SingularCount(str, enum.Enum):
    CERTIFIED = "CERTIFIED"
    NOT_CERTIFIED = "NOT_CERTIFIED"


@dataclass(frozen=True)
class SingularSet:
    rational_points: tuple
    algebraic_count: int
    distinct: int
    expected: int  # nu^2 + nu + 1
    all_simple: bool
    status: SingularCount
    orbits: tuple = ()

    @property
    def certified(self) -> bool:
        return self.status is SingularCount.CERTIFIED


def _is_simple(form: Foliation1Form, pt: ZeroPoint) -> bool:
    """Nonzero Jacobian of the two chart equations at the point."""
    coords = pt.coords
    k = next(i for i in range(3) if coords[i])
    aff = [c / coords[k] for c in coords]
    i, j = [m for m in range(3) if m != k]
    one, zero = pt.field.one, pt.field.zero
    fi, fj = form.coefficients[i], form.coefficients[j]
    det = (fi.derivative(i).evaluate(aff, one, zero) * fj.derivative(j).evaluate(aff, one, zero)
           - fi.derivative(j).evaluate(aff, one, zero) * fj.derivative(i).evaluate(aff, one, zero))
    return bool(det)


def singular_points(form: Foliation1Form) -> SingularSet:
    """Distinct singular points; the weighted count ``nu^2 + nu + 1`` is
    certified when every point is simple, otherwise reported as not certified."""
    zs = common_zeros(form.coefficients)
    nu = form.degree
    expected = nu * nu + nu + 1
    simple = all(_is_simple(form, p) for p in zs.points)
    distinct = zs.total_distinct
    if simple:
        if distinct != expected:
            raise InternalInconsistency(f"{distinct} simple singular points, expected {expected}")
        status = SingularCount.CERTIFIED
    else:
        status = SingularCount.NOT_CERTIFIED
    return SingularSet(tuple(zs.rational_points), zs.algebraic_count, distinct, expected,
                       simple, status, tuple(zs.points))


@dataclass(frozen=True)
class FixedIndeterminateSplit:
    fixed_rational: tuple
    indeterminate_rational: tuple
    fixed_count: int
    indeterminate_count: int


def split_singular_points(f: RationalMapP2, sing: SingularSet | None = None) -> FixedIndeterminateSplit:
    """Sort the singular points of the foliation of ``f`` into fixed points
    and indeterminacy points, checking exactly that nothing else occurs."""
    if sing is None:
        sing = singular_points(foliation_of_map(f))
    fixed, ind = [], []
    n_fixed = n_ind = 0
    for pt in sing.orbits:
        one, zero = pt.field.one, pt.field.zero
        img = [c.evaluate(pt.coords, one, zero) for c in f.components]
        p = pt.coords
        if not any(img):
            n_ind += pt.count
            if pt.is_rational:
                ind.append(pt.rational_coords())
            continue
        if any(img[a] * p[b] - img[b] * p[a] for a in range(3) for b in range(a + 1, 3)):
            raise InternalInconsistency("a singular point is neither fixed nor indeterminate")
        n_fixed += pt.count
        if pt.is_rational:
            fixed.append(pt.rational_coords())
    return FixedIndeterminateSplit(tuple(sorted(fixed, key=point_key)), tuple(sorted(ind, key=point_key)),
                                   n_fixed, n_ind)


def random_invertible(rng: random.Random, bound: int = 5) -> tuple:
    while True:
        m = tuple(tuple(rng.randint(-bound, bound) for _ in range(3)) for _ in range(3))
        if matrix_det(m):
            return m


def random_sigma_type(rng: random.Random, bound: int = 5) -> RationalMapP2:
    """``A o sigma o B`` with random invertible integer matrices."""
    a, b = random_invertible(rng, bound), random_invertible(rng, bound)
    return compose(linear_map(a), compose(sigma(), linear_map(b)))


def random_generic_sigma_type(rng: random.Random, bound: int = 5, max_tries: int = 100) -> RationalMapP2:
    """A draw of ``random_sigma_type`` whose foliation has only simple singular points."""
    for _ in range(max_tries):
        f = random_sigma_type(rng, bound)
        if singular_points(foliation_of_map(f)).certified:
            return f
    raise InternalInconsistency("no generic draw found")
