"""Certified root enclosures for integer polynomials and Salem/Pisot tests.

Roots are located numerically (companion-matrix eigenvalues polished by
Newton's method at high precision) and then certified exactly: for a
squarefree polynomial ``p`` of degree ``m`` the disk of radius
``m * |p(z) / p'(z)|`` about any ``z`` contains a root.  The ratio is computed
in exact Gaussian-rational arithmetic, and pairwise disjoint disks prove that
each disk holds exactly one root.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from typing import Sequence

import mpmath
import numpy as np

from ..errors import InternalInconsistency, NotMonic
from ..exactpoly import univariate as up

DEFAULT_TOL = 1e-9
_DPS = 60


def sqrt_lower(q: Fraction) -> Fraction:
    """Rational ``r <= sqrt(q)`` accurate to about 60 decimal digits."""
    if q <= 0:
        return Fraction(0)
    scale = 10 ** 60
    return Fraction(isqrt(q.numerator * scale * scale // q.denominator), scale)


def sqrt_upper(q: Fraction) -> Fraction:
    if q <= 0:
        return Fraction(0)
    r = sqrt_lower(q)
    while r * r < q:
        r += Fraction(1, 10 ** 60)
    return r


@dataclass(frozen=True)
class RootDisk:
    """A disk in the complex plane containing exactly one root."""

    re: Fraction
    im: Fraction
    radius_sq: Fraction

    @property
    def radius(self) -> Fraction:
        return sqrt_upper(self.radius_sq)

    def modulus_bounds(self) -> tuple[Fraction, Fraction]:
        mod_sq = self.re * self.re + self.im * self.im
        r = self.radius
        lo = sqrt_lower(mod_sq) - r
        return (max(lo, Fraction(0)), sqrt_upper(mod_sq) + r)

    @property
    def is_real(self) -> bool:
        """The disk meets the real axis; for a real polynomial and a disk with a
        single root this forces the root to be real (its conjugate would be a
        second root in the mirrored disk)."""
        return self.im * self.im <= self.radius_sq

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))


@dataclass(frozen=True)
class Enclosure:
    lo: Fraction
    hi: Fraction

    @property
    def width(self) -> float:
        return float(self.hi - self.lo)

    @property
    def mid(self) -> float:
        return float((self.lo + self.hi) / 2)

    def __float__(self) -> float:
        return self.mid

    def to_json(self, digits: int = 15) -> dict:
        """Decimal strings rounded outward to ``digits`` fractional digits."""
        scale = 10 ** digits
        lo = (self.lo.numerator * scale) // self.lo.denominator
        hi = -((-self.hi.numerator * scale) // self.hi.denominator)
        return {"lo": _decimal(lo, digits), "hi": _decimal(hi, digits)}


def _decimal(scaled: int, digits: int) -> str:
    sign = "-" if scaled < 0 else ""
    whole, frac = divmod(abs(scaled), 10 ** digits)
    return f"{sign}{whole}.{frac:0{digits}d}"


def _int_coeffs(p: Sequence) -> list[int]:
    out = []
    for c in p:
        f = Fraction(c)
        if f.denominator != 1:
            raise ValueError("integer coefficients expected")
        out.append(int(f))
    while out and out[0] == 0:
        out.pop(0)
    if len(out) < 2:
        raise ValueError("polynomial must be nonconstant")
    return out


def _squarefree_descending(p: Sequence[int]) -> list[Fraction]:
    asc = [Fraction(c) for c in reversed(p)]
    sf = up.squarefree_part(asc)
    return [Fraction(c) for c in reversed(sf)]


def _gauss_eval(coeffs: Sequence[Fraction], re: Fraction, im: Fraction) -> tuple[Fraction, Fraction]:
    """Exact Horner evaluation at ``re + i*im`` (descending coefficients).

    With ``z = (a + ib) / den`` this accumulates ``p(z) * den^m`` in integers.
    """
    den = re.denominator * im.denominator
    a, b = int(re * den), int(im * den)
    cden = 1
    for c in coeffs:
        cden = cden * c.denominator // _gcd(cden, c.denominator)
    ic = [int(c * cden) for c in coeffs]
    m = len(ic) - 1
    xr, xi = 0, 0
    for k, c in enumerate(ic):
        xr, xi = xr * a - xi * b, xr * b + xi * a
        xr += c * den ** k
    scale = Fraction(1, den ** m * cden)
    return xr * scale, xi * scale


def _gcd(a: int, b: int) -> int:
    from math import gcd

    return gcd(a, b)


def _derivative(coeffs: Sequence[Fraction]) -> list[Fraction]:
    m = len(coeffs) - 1
    return [c * (m - i) for i, c in enumerate(coeffs[:-1])]


def _numeric_roots(coeffs: Sequence[Fraction]) -> list:
    seeds = np.roots([float(c) for c in coeffs])
    with mpmath.workdps(_DPS):
        poly = [mpmath.mpf(c.numerator) / c.denominator for c in coeffs]
        dpoly = [mpmath.mpf(c.numerator) / c.denominator for c in _derivative(coeffs)]
        out = []
        for s in seeds:
            z = mpmath.mpc(complex(s))
            for _ in range(200):
                pz = mpmath.polyval(poly, z)
                dz = mpmath.polyval(dpoly, z)
                if dz == 0:
                    break
                step = pz / dz
                z -= step
                if abs(step) < mpmath.mpf(10) ** (-_DPS + 5):
                    break
            out.append(z)
        return out


def _polyroots_fallback(coeffs: Sequence[Fraction]) -> list:
    with mpmath.workdps(_DPS):
        poly = [mpmath.mpf(c.numerator) / c.denominator for c in coeffs]
        return list(mpmath.polyroots(poly, maxsteps=500, extraprec=4 * _DPS))


def _to_fraction(x) -> Fraction:
    with mpmath.workdps(_DPS):
        return Fraction(mpmath.nstr(x, _DPS - 5, min_fixed=-10 ** 6, max_fixed=10 ** 6))


def _certify(coeffs: Sequence[Fraction], approx: list) -> list[RootDisk] | None:
    m = len(coeffs) - 1
    d = _derivative(coeffs)
    disks = []
    for z in approx:
        re, im = _to_fraction(mpmath.re(z)), _to_fraction(mpmath.im(z))
        pr, pi = _gauss_eval(coeffs, re, im)
        dr, di = _gauss_eval(d, re, im)
        dn = dr * dr + di * di
        if dn == 0:
            return None
        rsq = Fraction(m * m) * (pr * pr + pi * pi) / dn
        disks.append(RootDisk(re, im, rsq))
    for i in range(len(disks)):
        for j in range(i + 1, len(disks)):
            a, b = disks[i], disks[j]
            dist_sq = (a.re - b.re) ** 2 + (a.im - b.im) ** 2
            rsum = a.radius + b.radius
            if dist_sq <= rsum * rsum:
                return None
    return disks


def certified_roots(p: Sequence[int]) -> list[RootDisk]:
    """One disjoint disk per distinct complex root of the integer polynomial
    ``p`` (descending coefficients)."""
    sf = _squarefree_descending(_int_coeffs(p))
    if len(sf) == 2:
        r = -sf[1] / sf[0]
        return [RootDisk(r, Fraction(0), Fraction(0))]
    for finder in (_numeric_roots, _polyroots_fallback):
        disks = _certify(sf, finder(sf))
        if disks is not None:
            return sorted(disks, key=lambda dk: (-(dk.re * dk.re + dk.im * dk.im), -dk.re, -dk.im))
    raise InternalInconsistency("could not certify the roots: enclosing disks overlap")


def dominant_root(p: Sequence[int], tol: float = DEFAULT_TOL) -> Enclosure:
    """Enclosure of the largest root modulus, of width at most ``tol``."""
    disks = certified_roots(p)
    bounds = [dk.modulus_bounds() for dk in disks]
    enc = Enclosure(max(b[0] for b in bounds), max(b[1] for b in bounds))
    if enc.width > tol:
        raise InternalInconsistency(f"enclosure width {enc.width} exceeds tolerance {tol}")
    return enc


class NumberClass(str, enum.Enum):
    PISOT = "PISOT"
    SALEM = "SALEM"
    SALEM_QUADRATIC = "SALEM_QUADRATIC"
    ON_OR_INSIDE_UNIT_CIRCLE = "ON_OR_INSIDE_UNIT_CIRCLE"
    OTHER = "OTHER"


@dataclass(frozen=True)
class AlgebraicNumberClass:
    tag: NumberClass
    dominant_root: Enclosure
    moduli: tuple = field(default=(), compare=False)
    reciprocal: bool = False


def is_reciprocal(p: Sequence[int]) -> bool:
    """Exact palindrome test (up to sign) on the coefficient list."""
    c = _int_coeffs(p)
    return c == c[::-1] or c == [-v for v in c[::-1]]


def salem_pisot_classify(p: Sequence[int], tol: float = DEFAULT_TOL,
                         strict: bool = False) -> AlgebraicNumberClass:
    """Classify the dominant root of a monic integer polynomial.

    With ``strict=False`` a reciprocal quadratic (roots ``l`` and ``1/l``)
    is reported as ``SALEM_QUADRATIC``; with ``strict=True`` it is judged by
    the general rules and comes out ``PISOT``.
    """
    c = _int_coeffs(p)
    if c[0] != 1:
        raise NotMonic(f"leading coefficient is {c[0]}, expected 1")
    disks = certified_roots(c)
    bounds = [dk.modulus_bounds() for dk in disks]
    dom = Enclosure(max(b[0] for b in bounds), max(b[1] for b in bounds))
    one = Fraction(1)
    t = Fraction(tol)
    outside = [i for i, (lo, _) in enumerate(bounds) if lo > one + t]
    on_circle = [i for i, (lo, hi) in enumerate(bounds) if lo >= one - t and hi <= one + t]
    inside = [i for i, (_, hi) in enumerate(bounds) if hi < one - t]
    undecided = len(bounds) - len(outside) - len(on_circle) - len(inside)
    recip = is_reciprocal(c)
    moduli = tuple(float((lo + hi) / 2) for lo, hi in bounds)
    result = lambda tag: AlgebraicNumberClass(tag, dom, moduli, recip)
    if undecided:
        return result(NumberClass.OTHER)
    if not outside:
        return result(NumberClass.ON_OR_INSIDE_UNIT_CIRCLE)
    if len(outside) == 1:
        big = disks[outside[0]]
        positive_real = big.is_real and big.re > 0
        if positive_real and recip and len(disks) == 2 and len(inside) == 1 and not strict:
            return result(NumberClass.SALEM_QUADRATIC)
        if positive_real and recip and len(inside) == 1 and on_circle and len(disks) >= 4:
            return result(NumberClass.SALEM)
        if positive_real and not on_circle:
            return result(NumberClass.PISOT)
    return result(NumberClass.OTHER)
