"""Rational self-maps of the projective plane.

A map is a reduced triple of ternary forms of equal degree, normalized so
that projectively equal maps have identical components.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .errors import (
    AllZero,
    DegenerateMap,
    DegreeMismatch,
    InternalInconsistency,
    NotQuadratic,
    ParseError,
    SingularMatrix,
)
from .exactpoly import univariate as up
from .exactpoly.factor import factor_linear, irreducible_factors
from .exactpoly.gcd import gcd, gcd_list
from .exactpoly.numberfield import NumberField
from .exactpoly.parse import parse_map_components, parse_word_letters
from .exactpoly.poly import HomogPoly, Poly, Rat, as_homog, jacobian_det, rat
from .exactpoly.zeros import ZeroSet, common_zeros, normalize_point


class RationalMapP2:
    """Reduced map ``(f0 : f1 : f2)``; build instances with :func:`make_map`."""

    __slots__ = ("components", "degree", "_zeros")

    def __init__(self, components: tuple[HomogPoly, HomogPoly, HomogPoly]):
        self.components = components
        self.degree = components[0].degree
        self._zeros = None

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalMapP2) and self.components == other.components

    def __hash__(self) -> int:
        return hash(self.components)

    def __call__(self, point: Sequence):
        return tuple(c.evaluate(point) for c in self.components)

    def __matmul__(self, other: "RationalMapP2") -> "RationalMapP2":
        return compose(self, other)

    def to_str(self) -> str:
        return "(" + " : ".join(c.to_str() for c in self.components) + ")"

    __str__ = to_str

    def __repr__(self) -> str:
        return f"RationalMapP2{self.to_str()}"

    def zero_set(self) -> ZeroSet:
        if self._zeros is None:
            self._zeros = common_zeros(self.components)
        return self._zeros


def make_map(c0, c1, c2) -> RationalMapP2:
    """Divide out the common factor and fix the projective scalar."""
    comps = []
    for c in (c0, c1, c2):
        if not isinstance(c, Poly):
            c = HomogPoly.const(c)
        comps.append(as_homog(c) if c.terms or isinstance(c, HomogPoly) else HomogPoly.zero(0))
    nonzero = [c for c in comps if c.terms]
    if not nonzero:
        raise AllZero("all three components vanish")
    degs = {c.degree for c in nonzero}
    if len(degs) > 1:
        raise DegreeMismatch(f"components have degrees {[c.degree for c in comps]}")
    (d,) = degs
    if d < 1:
        raise DegreeMismatch("components must have degree at least 1")
    g = gcd_list(nonzero) if len(nonzero) > 1 else nonzero[0]
    if g.total_degree() > 0:
        comps = [c.exact_div(g) if c.terms else HomogPoly.zero(d - g.total_degree()) for c in comps]
        d = d - g.total_degree()
    comps = [as_homog(c) if c.terms else HomogPoly.zero(d) for c in comps]
    if d == 0:
        raise DegenerateMap("the map is constant")
    lead = next(c for c in comps if c.terms).lex_leading()[1]
    if lead != 1:
        comps = [c / lead for c in comps]
    return RationalMapP2(tuple(comps))


def parse_map(text: str) -> RationalMapP2:
    return make_map(*parse_map_components(text))


def identity() -> RationalMapP2:
    return make_map(HomogPoly.var(0), HomogPoly.var(1), HomogPoly.var(2))


def _xyz():
    return HomogPoly.var(0), HomogPoly.var(1), HomogPoly.var(2)


def sigma() -> RationalMapP2:
    x, y, z = _xyz()
    return make_map(y * z, x * z, x * y)


def rho() -> RationalMapP2:
    x, y, z = _xyz()
    return make_map(x * y, z * z, y * z)


def tau() -> RationalMapP2:
    x, y, z = _xyz()
    return make_map(x * x, x * y, y * y - x * z)


def linear_map(matrix: Sequence[Sequence]) -> RationalMapP2:
    """Row ``i`` holds the coefficients of component ``i`` in ``x, y, z``."""
    if matrix_det(matrix) == 0:
        raise SingularMatrix("linear letters must be invertible")
    return make_map(*(HomogPoly.linear(row) for row in matrix))


def compose(f: RationalMapP2, g: RationalMapP2) -> RationalMapP2:
    """``f`` after ``g``: substitute the components of ``g`` into ``f`` and reduce."""
    return make_map(*(c.compose(g.components) for c in f.components))


def projectively_equal(f: RationalMapP2, g: RationalMapP2) -> bool:
    a, b = f.components, g.components
    for i in range(3):
        for j in range(i + 1, 3):
            if a[i] * b[j] != a[j] * b[i]:
                # HomogPoly equality ignores degree tags, so this is a term check
                if (a[i] * b[j] - a[j] * b[i]).terms:
                    return False
    return True


# indeterminacy and exceptional loci ---------------------------------------


@dataclass(frozen=True)
class IndeterminacyReport:
    rational_points: tuple
    algebraic_count: int
    total_distinct: int


def indeterminacy(f: RationalMapP2) -> IndeterminacyReport:
    """Distinct common zeros of the components over the algebraic closure."""
    if f.degree == 1:
        return IndeterminacyReport((), 0, 0)
    zs = f.zero_set()
    return IndeterminacyReport(tuple(zs.rational_points), zs.algebraic_count, zs.total_distinct)


@dataclass(frozen=True)
class ExceptionalEntry:
    curve: HomogPoly
    multiplicity: int
    image: tuple | None  # None means not contracted

    @property
    def contracted(self) -> bool:
        return self.image is not None


@dataclass(frozen=True)
class ExceptionalReport:
    jacobian: HomogPoly
    unit: Rat
    entries: tuple

    def contracted_lines(self) -> list[ExceptionalEntry]:
        return [e for e in self.entries if e.curve.degree == 1 and e.contracted]


def _kernel_basis(c: Sequence[Rat]) -> tuple[tuple, tuple]:
    """Two independent vectors orthogonal to the nonzero vector ``c``."""
    c = [Fraction(v) for v in c]
    i = next(k for k in range(3) if c[k])
    others = [k for k in range(3) if k != i]
    vecs = []
    for k in others:
        v = [Fraction(0)] * 3
        v[k] = c[i]
        v[i] = -c[k]
        vecs.append(tuple(v))
    return vecs[0], vecs[1]


def _restrict_to_line(p: HomogPoly, a: Sequence, b: Sequence) -> Poly:
    """``p(s*a + t*b)`` as a binary form in ``s, t``."""
    subs = [Poly({(1, 0): a[i], (0, 1): b[i]}, 2) for i in range(3)]
    return p.compose(subs)


def _proportional_image(forms: Sequence[Poly]) -> tuple | None:
    """If the binary forms are proportional, the common ratio vector."""
    nz = [f for f in forms if f.terms]
    if not nz:
        return None
    ref = nz[0]
    e, c = ref.lex_leading()
    ratios = []
    for f in forms:
        lam = Fraction(f.terms.get(e, 0)) / Fraction(c)
        if f != ref.scale(lam):
            return None
        ratios.append(lam)
    return normalize_point(ratios)


def _divides_minors(curve: HomogPoly, f: RationalMapP2, p: Sequence[int]) -> bool:
    comps = f.components
    for i in range(3):
        for j in range(i + 1, 3):
            minor = comps[i].scale(p[j]) - comps[j].scale(p[i])
            if minor.terms and not curve.divides(minor):
                return False
    return True


def _nonlinear_image_candidate(curve: HomogPoly, f: RationalMapP2, rng: random.Random):
    """Image of a number-field point of ``curve``; ``None`` when it is not rational."""
    for _ in range(20):
        a = [rng.randint(-9, 9) for _ in range(3)]
        b = [rng.randint(-9, 9) for _ in range(3)]
        r = _restrict_to_line(curve, a, b)
        uni, _ = up.binary_to_univariate(r, 0, 1)
        if len(uni) < 2:
            continue
        _, facs = up.factor(uni)
        k = NumberField(facs[0][0])
        s = k.generator()
        pt = [s * a[i] + b[i] for i in range(3)]
        vals = [c.evaluate(pt, one=k.one, zero=k.zero) for c in f.components]
        nz = [v for v in vals if v]
        if not nz:
            continue
        ref = nz[0]
        ratios = [v / ref for v in vals]
        if all(r.is_rational for r in ratios):
            return normalize_point([r.to_rational() for r in ratios])
        return None
    return None


def exceptional(f: RationalMapP2, seed: int = 11) -> ExceptionalReport:
    """Factor the Jacobian determinant and decide which factors are contracted.

    Lines are parametrized and their images read off directly; the verdict is
    then confirmed by checking that the line divides every minor
    ``f_i p_j - f_j p_i``.  Curves of higher degree get a candidate image from
    a single algebraic point and are decided by the divisibility test alone.
    """
    jac = jacobian_det(*f.components)
    if not jac.terms:
        raise DegenerateMap("the Jacobian determinant vanishes identically")
    if jac.degree == 0:
        return ExceptionalReport(jac, jac.constant_value(), ())
    lf = factor_linear(jac)
    unit = lf.unit
    pieces: list[tuple[HomogPoly, int]] = list(lf.linear_factors)
    if lf.residual.degree > 0:
        u2, rest = irreducible_factors(lf.residual)
        unit = rat(Fraction(unit) * Fraction(u2))
        pieces.extend((as_homog(q), m) for q, m in rest)
    rng = random.Random(seed)
    entries = []
    for curve, mult in pieces:
        if curve.degree == 1:
            a, b = _kernel_basis(curve.linear_coeffs())
            forms = [_restrict_to_line(c, a, b) for c in f.components]
            image = _proportional_image(forms)
            if image is not None and not _divides_minors(curve, f, image):
                raise InternalInconsistency(f"line {curve} maps to {image} but fails the minor test")
            if image is None:
                # the parametrized restriction and the divisibility test must agree
                cand = _nonlinear_image_candidate(curve, f, rng)
                if cand is not None and _divides_minors(curve, f, cand):
                    raise InternalInconsistency(f"line {curve} passes the minor test but is not contracted")
        else:
            image = _nonlinear_image_candidate(curve, f, rng)
            if image is not None and not _divides_minors(curve, f, image):
                image = None
        entries.append(ExceptionalEntry(curve, mult, image))
    return ExceptionalReport(jac, unit, tuple(entries))


# quadratic classification ---------------------------------------------------


class QuadraticClass(str, enum.Enum):
    SIGMA_TYPE = "SIGMA_TYPE"
    RHO_TYPE = "RHO_TYPE"
    TAU_TYPE = "TAU_TYPE"
    NOT_BIRATIONAL = "NOT_BIRATIONAL"


_EXPECTED_IND = {QuadraticClass.SIGMA_TYPE: 3, QuadraticClass.RHO_TYPE: 2, QuadraticClass.TAU_TYPE: 1}


def _concurrent(lines: Sequence[HomogPoly]) -> bool:
    return matrix_det([l.linear_coeffs() for l in lines]) == 0


def classify_quadratic(f: RationalMapP2) -> QuadraticClass:
    """Shape of the contracted Jacobian locus, cross-checked against the
    number of indeterminacy points."""
    if f.degree != 2:
        raise NotQuadratic(f"map has degree {f.degree}")
    ex = exceptional(f)
    if any(not e.contracted or e.curve.degree != 1 for e in ex.entries):
        return QuadraticClass.NOT_BIRATIONAL
    mults = sorted((e.multiplicity for e in ex.entries), reverse=True)
    if mults == [1, 1, 1] and not _concurrent([e.curve for e in ex.entries]):
        cls = QuadraticClass.SIGMA_TYPE
    elif mults == [2, 1]:
        cls = QuadraticClass.RHO_TYPE
    elif mults == [3]:
        cls = QuadraticClass.TAU_TYPE
    else:
        return QuadraticClass.NOT_BIRATIONAL
    count = indeterminacy(f).total_distinct
    if count != _EXPECTED_IND[cls]:
        raise InternalInconsistency(
            f"Jacobian shape says {cls.value} but the map has {count} indeterminacy points")
    return cls


# Noether words ------------------------------------------------------------

SIGMA = "SIGMA"
Letter = Union[str, tuple]


def matrix_det(m: Sequence[Sequence]) -> Rat:
    return rat(m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
               - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
               + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))


def matrix_inverse(m: Sequence[Sequence]) -> tuple:
    n = len(m)
    a = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            raise SingularMatrix("matrix is not invertible")
        a[col], a[piv] = a[piv], a[col]
        pv = a[col][col]
        a[col] = [v / pv for v in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                fac = a[r][col]
                a[r] = [v - fac * w for v, w in zip(a[r], a[col])]
    return tuple(tuple(rat(v) for v in row[n:]) for row in a)


@dataclass(frozen=True)
class NoetherWord:
    letters: tuple

    def __post_init__(self):
        if not self.letters:
            raise ValueError("a word needs at least one letter")
        clean = []
        for letter in self.letters:
            if isinstance(letter, str):
                if letter.upper() != SIGMA:
                    raise ValueError(f"unknown letter {letter!r}")
                clean.append(SIGMA)
            else:
                m = tuple(tuple(rat(v) for v in row) for row in letter)
                if len(m) != 3 or any(len(r) != 3 for r in m):
                    raise ValueError("matrix letters are 3x3")
                if matrix_det(m) == 0:
                    raise SingularMatrix("matrix letters must be invertible")
                clean.append(m)
        object.__setattr__(self, "letters", tuple(clean))

    def __add__(self, other: "NoetherWord") -> "NoetherWord":
        return NoetherWord(self.letters + other.letters)

    def to_str(self) -> str:
        parts = []
        for letter in self.letters:
            if letter == SIGMA:
                parts.append("sigma")
            else:
                parts.append("[" + ",".join("[" + ",".join(_fmt(v) for v in row) + "]" for row in letter) + "]")
        return "; ".join(parts)


def _fmt(v: Rat) -> str:
    v = Fraction(v)
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def parse_word(text: str) -> NoetherWord:
    letters = parse_word_letters(text)
    try:
        return NoetherWord(tuple(letters))
    except SingularMatrix as exc:
        raise ParseError(str(exc), 0) from None


def letter_map(letter: Letter) -> RationalMapP2:
    return sigma() if letter == SIGMA else linear_map(letter)


def expand_word(w: NoetherWord) -> RationalMapP2:
    """Left-to-right composition: ``[A, SIGMA, B]`` expands to ``A o sigma o B``."""
    result = letter_map(w.letters[0])
    for letter in w.letters[1:]:
        result = compose(result, letter_map(letter))
    return result


def invert_word(w: NoetherWord) -> NoetherWord:
    return NoetherWord(tuple(SIGMA if l == SIGMA else matrix_inverse(l) for l in reversed(w.letters)))


RHO_WORD = NoetherWord((
    ((0, -1, 1), (-1, 1, 0), (0, 1, 0)), SIGMA,
    ((0, 1, 1), (0, 0, 1), (1, 0, 0)), SIGMA,
    ((1, 0, 1), (0, 1, -1), (0, 0, 1)),
))

_L2 = ((1, 0, 1), (1, 0, 0), (0, 1, 0))
TAU_WORD = NoetherWord((
    ((-1, 1, 0), (-1, 2, 0), (1, -1, 1)), SIGMA,
    _L2, SIGMA,
    ((0, -1, 0), (1, -3, 1), (1, 0, 0)), SIGMA,
    _L2, SIGMA,
    ((-1, 1, 0), (-2, 0, 1), (2, -1, 0)),
))

CUBIC_WORD = NoetherWord((
    ((-1, 2, 0), (0, -1, 0), (0, 0, -1)), SIGMA,
    ((0, 1, 1), (0, 0, 1), (1, 0, 0)), SIGMA,
    ((0, 0, 1), (-2, -1, 0), (1, 1, 0)), SIGMA,
))


def cubic_target() -> RationalMapP2:
    x, y, z = _xyz()
    return make_map(x * z * (x + y), y * z * (x + y), x * y * y)


# homaloidal nets -----------------------------------------------------------


def homaloidal_check(n: int, mults: Sequence[int]) -> bool:
    """Both identities ``sum m_i^2 = n^2 - 1`` and ``sum m_i = 3n - 3``."""
    if n < 1:
        raise ValueError("degree must be at least 1")
    if any(m < 1 for m in mults):
        raise ValueError("multiplicities must be positive")
    return sum(m * m for m in mults) == n * n - 1 and sum(mults) == 3 * n - 3


# de Jonquieres maps ---------------------------------------------------------


@dataclass(frozen=True)
class DeJonquieresMap:
    """``(x, y) -> ((a x + b) / (c x + d), (al y + be) / (ga y + de))`` with
    ``a, b, c, d`` univariate polynomials in ``y`` (ascending coefficient
    tuples) and a rational base matrix."""

    fiber_action: tuple
    base_action: tuple

    def __post_init__(self):
        fib = tuple(tuple(tuple(up.trim([rat(c) for c in e])) for e in row) for row in self.fiber_action)
        base = tuple(tuple(rat(v) for v in row) for row in self.base_action)
        object.__setattr__(self, "fiber_action", fib)
        object.__setattr__(self, "base_action", base)
        (a, b), (c, d) = fib
        if not up.sub(up.mul(a, d), up.mul(b, c)):
            raise DegenerateMap("fiber action has zero determinant")
        if base[0][0] * base[1][1] - base[0][1] * base[1][0] == 0:
            raise DegenerateMap("base action has zero determinant")


def _homogenize_y(coeffs: Sequence[Rat], k: int) -> HomogPoly:
    terms = {(0, i, k - i): c for i, c in enumerate(coeffs) if c}
    return HomogPoly(terms, k)


def dejonquieres_to_map(dj: DeJonquieresMap) -> RationalMapP2:
    (a, b), (c, d) = dj.fiber_action
    (al, be), (ga, de) = dj.base_action
    k = max(len(e) - 1 for e in (a, b, c, d))
    k = max(k, 0)
    x, y, z = _xyz()
    num = _homogenize_y(a, k) * x + _homogenize_y(b, k) * z
    den = _homogenize_y(c, k) * x + _homogenize_y(d, k) * z
    bn = y.scale(al) + z.scale(be)
    bd = y.scale(ga) + z.scale(de)
    return make_map(num * bd, bn * den, den * bd)


def preserves_pencil(f: RationalMapP2) -> bool:
    """Whether ``f`` maps the lines through ``(1:0:0)`` to lines through it."""
    _, f1, f2 = f.components
    return not (f2 * f1.derivative(0) - f1 * f2.derivative(0)).terms


def _affine(p: HomogPoly) -> Poly:
    return Poly({(e[0], e[1]): c for e, c in p.terms.items()}, 2)


def map_to_dejonquieres(f: RationalMapP2) -> DeJonquieresMap:
    """Recover fiber and base actions of a map preserving ``y = const``."""
    if not preserves_pencil(f):
        raise DegenerateMap("map does not preserve the pencil of lines through (1:0:0)")
    f0, f1, f2 = (_affine(c) for c in f.components)
    g = gcd(f1, f2)
    n1, d1 = f1.exact_div(g), f2.exact_div(g)
    if n1.degree_in(0) > 0 or d1.degree_in(0) > 0 or max(n1.total_degree(), d1.total_degree()) > 1:
        raise DegenerateMap("base action is not a Moebius transformation")
    lc = lambda p, e: p.terms.get(e, 0)
    base = ((lc(n1, (0, 1)), lc(n1, (0, 0))), (lc(d1, (0, 1)), lc(d1, (0, 0))))
    g = gcd(f0, f2)
    n0, d0 = f0.exact_div(g), f2.exact_div(g)
    if n0.degree_in(0) > 1 or d0.degree_in(0) > 1:
        raise DegenerateMap("fiber action is not a Moebius transformation")

    def split(p: Poly):
        cs = p.coeffs_in(0)
        one = up.from_poly(cs[1], 1) if 1 in cs else []
        zero = up.from_poly(cs[0], 1) if 0 in cs else []
        return tuple(one), tuple(zero)

    a, b = split(n0)
    c, d = split(d0)
    return DeJonquieresMap(((a, b), (c, d)), base)


def f_alpha_beta(alpha, beta) -> RationalMapP2:
    """The twist family ``((alpha x + y) z : beta y (x + z) : z (x + z))``."""
    x, y, z = _xyz()
    alpha, beta = rat(alpha), rat(beta)
    return make_map((x.scale(alpha) + y) * z, (y * (x + z)).scale(beta), z * (x + z))


def henon_extension(p_coeffs: Sequence[Rat] = (0, 0, 1), delta: Rat = 1) -> RationalMapP2:
    """Projective extension of ``(x, y) -> (y, P(y) - delta x)``."""
    p_coeffs = up.trim([rat(c) for c in p_coeffs])
    d = len(p_coeffs) - 1
    if d < 2:
        raise ValueError("P must have degree at least 2")
    x, y, z = _xyz()
    ph = _homogenize_y(p_coeffs, d)
    return make_map(y * z ** (d - 1), ph - (x * z ** (d - 1)).scale(delta), z ** d)
