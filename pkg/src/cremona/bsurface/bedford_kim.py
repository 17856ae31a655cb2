"""The quadratic family ``(x(bx+y) : z(bx+y) : x(ax+z))`` and its lattice actions."""

from __future__ import annotations

from fractions import Fraction

from ..cremaps import RationalMapP2, make_map
from ..exactpoly.poly import HomogPoly, rat
from ..exactpoly.zeros import normalize_point
from .picard import PicLattice, PicMatrix, pullback_matrix
from .tower import generic_linear_form, tau_tower, vanishing_orders


def bk_map(a, b) -> RationalMapP2:
    x, y, z = HomogPoly.var(0), HomogPoly.var(1), HomogPoly.var(2)
    a, b = rat(a), rat(b)
    return make_map(x * (x.scale(b) + y), z * (x.scale(b) + y), x * (x.scale(a) + z))


def bk_matrix() -> PicMatrix:
    """Push-forward on ``{L, E1, E2}`` after blowing up ``(0:1:0)`` and ``(0:0:1)``.

    ``L -> 2L - E1 - E2``; ``E1`` goes to the line ``z = 0`` (class ``L - E1``)
    and ``E2`` to the line ``x = 0`` (class ``L - E1 - E2``).
    """
    lat = PicLattice(2)
    images = [lat.vector((2, -1, -1)), lat.vector((1, -1, 0)), lat.vector((1, -1, -1))]
    return pullback_matrix(images, lat)


def bk_char_poly(n: int) -> tuple:
    """Descending coefficients of ``x^(n+1) (x^3 - x - 1) + x^3 + x^2 - 1``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    deg = n + 4
    coeffs = [0] * (deg + 1)  # ascending
    for k, c in ((3, 1), (1, -1), (0, -1)):
        coeffs[n + 1 + k] += c
    for k, c in ((3, 1), (2, 1), (0, -1)):
        coeffs[k] += c
    return tuple(reversed(coeffs))


def bk_pic_matrix(n: int) -> PicMatrix:
    """Action on ``{L, E1, E2, F0, ..., Fn}`` where ``F_j`` is the exceptional
    curve over the ``j``-th orbit point of ``q = (1:-a:0)``, assuming the orbit
    lands on ``m = (1:-b:-a)`` after ``n`` steps.

    ``L -> 2L - E1 - E2 - F0`` (the image conic passes through both blown-up
    points and ``q``); ``E1 -> L - E1 - F0`` (the line ``z = 0`` through the first
    point and ``q``); ``E2 -> L - E1 - E2``; ``F_j -> F_(j+1)`` along the orbit;
    and ``F_n -> L - E2 - F0`` (the line ``y + a x = 0`` through ``(0:0:1)`` and ``q``).
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    size = n + 4
    labels = ("L", "E1", "E2") + tuple(f"F{j}" for j in range(n + 1))
    lat = PicLattice(size - 1, labels=labels)

    def vec(**kw):
        v = [0] * size
        for k, c in kw.items():
            v[labels.index(k)] = c
        return lat.vector(v)

    images = [vec(L=2, E1=-1, E2=-1, F0=-1), vec(L=1, E1=-1, F0=-1), vec(L=1, E1=-1, E2=-1)]
    for j in range(n):
        images.append(lat.basis(3 + j + 1))
    images.append(vec(L=1, E2=-1, F0=-1))
    return pullback_matrix(images, lat)


def orbit_hits_m(a, b, n: int) -> bool:
    """Exact test of ``f^j(q) != m`` for ``j < n`` and ``f^n(q) = m``.

    Returns ``False`` as soon as the orbit reaches an indeterminacy point
    early or meets ``m`` too soon.
    """
    a, b = Fraction(rat(a)), Fraction(rat(b))
    f = bk_map(a, b)
    m = normalize_point((1, -b, -a))
    p = (Fraction(1), -a, Fraction(0))
    for j in range(n + 1):
        pn = normalize_point(p)
        if pn == m:
            return j == n
        if j == n:
            return False
        img = f(p)
        if not any(img):
            return False
        p = tuple(Fraction(v) for v in img)
    return False


def tau_pic_example() -> dict:
    """Recompute the lattice action of the triple-line involution on the
    three-fold blow-up resolving it.

    Vanishing orders of a generic linear form give the image of ``L``; the
    exceptional curves ``E1``, ``E2`` are fixed and ``E3`` is exchanged with
    the strict transform of ``x = 0``.
    """
    from ..cremaps import tau

    t = tau()
    tower = tau_tower()
    orders = vanishing_orders(t, generic_linear_form(), tower)
    lat = tower.strict_lattice()
    x = HomogPoly.var(0)
    theta = tower.curve_class(x)
    image_L = lat.vector((t.degree,) + tuple(-m for m in orders))
    images = [image_L, lat.basis(1), lat.basis(2), theta]
    mat = pullback_matrix(images, lat)
    return {"tower": tower, "orders": orders, "theta": theta, "matrix": mat, "lattice": lat}
