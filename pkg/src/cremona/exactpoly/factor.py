"""Extraction of rational linear factors from ternary forms."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from . import univariate as up
from .poly import HomogPoly, Poly, Rat, as_homog, rat


@dataclass(frozen=True)
class LinearFactorization:
    """``unit * prod(factor ** mult) * residual`` reproduces the input."""

    linear_factors: tuple[tuple[HomogPoly, int], ...]
    residual: HomogPoly
    unit: Rat

    def expand(self) -> HomogPoly:
        acc = self.residual.scale(self.unit)
        for f, m in self.linear_factors:
            acc = acc * f ** m
        return acc


def normalize_linear(coeffs) -> HomogPoly:
    """Linear form scaled so that its first nonzero coefficient is 1."""
    cs = [rat(c) for c in coeffs]
    lead = next(c for c in cs if c)
    return HomogPoly.linear([Fraction(c) / lead for c in cs])


def _projection(p: HomogPoly, a: int, b: int) -> list:
    """``p(x, a*x + b*z, z)`` with ``z = 1``, as a dense list in ``x``."""
    d = p.degree
    xs = list(range(d + 1))
    ys = [p.evaluate((s, a * s + b, 1)) for s in xs]
    return up.interpolate(xs, ys)


def _binary_linear_factors(p: HomogPoly, a: int, b: int):
    """Rational linear factors ``alpha*x + beta*z`` of the projected binary form,
    or ``None`` when the projection vanishes identically."""
    u = _projection(p, a, b)
    if not u:
        return None
    out = []
    deficit = p.degree - (len(u) - 1)
    if deficit > 0:
        out.append((0, 1))
    for root, _ in up.rational_roots(u):
        out.append((1, -root))
    return out


def _cross(u, v):
    return (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])


def factor_linear(p: HomogPoly, seed: int = 20231) -> LinearFactorization:
    """Split off every rational linear factor of ``p`` with multiplicity.

    Candidates come from pairs of random projections to binary forms
    ``y = a*x + b*z``: a linear factor ``c0*x + c1*y + c2*z`` projects to a
    multiple of ``alpha*x + beta*z`` exactly when ``(c0, c1, c2)`` is orthogonal
    to ``(beta, a*beta - b*alpha, -alpha)``, so two projections pin it down.
    Every candidate is confirmed by exact division; a final fresh projection
    with no rational linear factor certifies that the residual has none.
    """
    p = as_homog(p)
    if p.is_zero:
        raise ValueError("cannot factor the zero polynomial")
    rng = random.Random(seed)
    found: dict[HomogPoly, int] = {}
    residual = p
    for _ in range(12):
        if residual.degree == 0:
            break
        projections = []
        while len(projections) < 2:
            a, b = rng.randint(-40, 40), rng.randint(-40, 40)
            facs = _binary_linear_factors(residual, a, b)
            if facs is not None:
                projections.append((a, b, facs))
        (a1, b1, f1), (a2, b2, f2) = projections
        if not f1 or not f2:
            break
        progress = False
        for al1, be1 in f1:
            u = (be1, a1 * be1 - b1 * al1, -al1)
            for al2, be2 in f2:
                v = (be2, a2 * be2 - b2 * al2, -al2)
                c = _cross(u, v)
                if not any(c):
                    continue
                cand = normalize_linear(c)
                while residual.degree >= 1:
                    try:
                        residual = residual.exact_div(cand)
                    except ValueError:
                        break
                    found[cand] = found.get(cand, 0) + 1
                    progress = True
        if not progress:
            # certify: a third projection must see no rational linear factor
            while True:
                a, b = rng.randint(-40, 40), rng.randint(-40, 40)
                facs = _binary_linear_factors(residual, a, b)
                if facs is not None:
                    break
            if not facs:
                break
    unit = residual.lex_leading()[1] if residual.terms else 1
    residual = residual.monic()
    ordered = tuple(sorted(found.items(), key=lambda fm: tuple(-Fraction(c) for c in fm[0].linear_coeffs())))
    return LinearFactorization(ordered, residual, unit)


def irreducible_factors(p: Poly) -> tuple[Rat, list[tuple[Poly, int]]]:
    """Full factorization over the rationals of a multivariate polynomial.

    Factors are normalized (lexicographically first coefficient 1); the unit
    collects the remaining scalar.
    """
    import sympy

    if p.is_zero:
        raise ValueError("cannot factor the zero polynomial")
    names = ("x", "y", "z") if p.nvars == 3 else tuple(f"x{i}" for i in range(p.nvars))
    syms = sympy.symbols(names)
    expr = sympy.Poly.from_dict({e: sympy.Rational(Fraction(c).numerator, Fraction(c).denominator)
                                 for e, c in p.terms.items()}, *syms, domain="QQ")
    unit, facs = expr.factor_list()
    unit = Fraction(int(sympy.Rational(unit).p), int(sympy.Rational(unit).q))
    out = []
    for f, m in facs:
        terms = {tuple(int(k) for k in e): Fraction(int(c.p), int(c.q)) for e, c in f.terms()}
        q = Poly(terms, p.nvars)
        lead = q.lex_leading()[1]
        unit *= Fraction(lead) ** m
        q = q.monic()
        if isinstance(p, HomogPoly):
            q = as_homog(q)
        out.append((q, int(m)))
    out.sort(key=lambda fm: (fm[0].total_degree(), sorted(fm[0].terms.items(), reverse=True)))
    return rat(unit), out
