"""Multivariate GCD and resultants over the rationals.

The GCD is the classical recursive scheme: split off the content with respect
to a main variable, run a subresultant pseudo-remainder sequence on the
primitive parts, and recurse into the coefficient ring.  The main variable is
the one of lowest maximal exponent, which keeps the remainder sequences short.
"""

from __future__ import annotations

import random
from typing import Sequence

from . import univariate as up
from .poly import HomogPoly, Poly, as_homog

_ONE_CACHE: dict[int, Poly] = {}


def _one(n: int) -> Poly:
    p = _ONE_CACHE.get(n)
    if p is None:
        p = Poly.const(1, n)
        _ONE_CACHE[n] = p
    return p


def _as_dense(p: Poly, v: int) -> list[Poly]:
    cs = p.coeffs_in(v)
    d = max(cs)
    zero = Poly.zero(p.nvars)
    return [cs.get(i, zero) for i in range(d + 1)]


def _from_dense(cs: Sequence[Poly], v: int, nvars: int) -> Poly:
    terms: dict = {}
    for k, c in enumerate(cs):
        for e, a in c.terms.items():
            terms[e[:v] + (k,) + e[v + 1:]] = a
    return Poly(terms, nvars)


def _trim(cs: list[Poly]) -> list[Poly]:
    while cs and cs[-1].is_zero:
        cs.pop()
    return cs


def _prem(a: list[Poly], b: list[Poly]) -> list[Poly]:
    """Pseudo-remainder of dense polynomials with polynomial coefficients."""
    db = len(b) - 1
    lb = b[-1]
    r = list(a)
    e = len(a) - len(b) + 1
    while len(r) - 1 >= db and r:
        lr = r[-1]
        shift = len(r) - 1 - db
        new = [c * lb for c in r]
        for i, bc in enumerate(b):
            if not bc.is_zero:
                new[i + shift] = new[i + shift] - lr * bc
        r = _trim(new)
        e -= 1
    if e > 0 and r:
        f = lb ** e
        r = [c * f for c in r]
    return r


def content(p: Poly, v: int) -> Poly:
    """GCD of the coefficients of ``p`` viewed as a polynomial in variable ``v``."""
    g = None
    for c in sorted(p.coeffs_in(v).values(), key=len):
        g = c if g is None else _gcd(g, c)
        if g.is_constant:
            return _one(p.nvars)
    return g.monic() if g is not None else Poly.zero(p.nvars)


def _univariate_gcd(p: Poly, q: Poly, v: int) -> Poly:
    g = up.gcd(up.from_poly(p, v), up.from_poly(q, v))
    return up.to_poly(g, v, p.nvars)


def _gcd(p: Poly, q: Poly) -> Poly:
    n = p.nvars
    if p.is_zero:
        return q
    if q.is_zero:
        return p
    vp, vq = p.variables(), q.variables()
    common = vp & vq
    if not common:
        return _one(n)
    # a variable occurring in only one argument cannot occur in the gcd
    for v in vp - vq:
        p = content(p, v)
        return _gcd(p, q)
    for v in vq - vp:
        q = content(q, v)
        return _gcd(p, q)
    # strip common monomial factors first: cheap and frequent for plane maps
    mono_p = tuple(min(e[i] for e in p.terms) for i in range(n))
    mono_q = tuple(min(e[i] for e in q.terms) for i in range(n))
    mono = tuple(min(a, b) for a, b in zip(mono_p, mono_q))
    if any(mono_p) or any(mono_q):
        p2 = p.exact_div(Poly.monomial(mono_p)) if any(mono_p) else p
        q2 = q.exact_div(Poly.monomial(mono_q)) if any(mono_q) else q
        return _gcd(p2, q2) * Poly.monomial(mono)
    if len(common) == 1:
        (v,) = common
        return _univariate_gcd(p, q, v)
    v = min(common, key=lambda i: (max(p.degree_in(i), q.degree_in(i)), i))
    cp, cq = content(p, v), content(q, v)
    pp = p.exact_div(cp) if not cp.is_constant else p
    qq = q.exact_div(cq) if not cq.is_constant else q
    c = _gcd(cp, cq) if not (cp.is_constant or cq.is_constant) else _one(n)
    g = _subresultant_gcd(pp, qq, v)
    return (c * g).monic()


def _subresultant_gcd(p: Poly, q: Poly, v: int) -> Poly:
    """GCD of two polynomials that are primitive with respect to ``v``."""
    n = p.nvars
    a, b = _as_dense(p, v), _as_dense(q, v)
    if len(a) < len(b):
        a, b = b, a
    if len(b) == 1:
        return _one(n)
    g = _one(n)
    h = _one(n)
    while True:
        delta = len(a) - len(b)
        r = _prem(a, b)
        if not r:
            break
        if len(r) == 1:
            return _one(n)
        denom = g * h ** delta
        r = [c.exact_div(denom) for c in r]
        a, b = b, r
        g = a[-1]
        if delta == 0:
            pass
        elif delta == 1:
            h = g
        else:
            h = (g ** delta).exact_div(h ** (delta - 1))
    res = _from_dense(b, v, n)
    c = content(res, v)
    if not c.is_constant:
        res = res.exact_div(c)
    return res


def gcd(p: Poly, q: Poly) -> Poly:
    """Monic-normalized greatest common divisor; ``gcd(0, q)`` is ``q`` normalized."""
    if p.nvars != q.nvars:
        raise ValueError("polynomials live in different variable counts")
    if p.is_zero and q.is_zero:
        out = Poly.zero(p.nvars)
    elif p.is_zero:
        out = q.monic()
    elif q.is_zero:
        out = p.monic()
    elif p.is_constant or q.is_constant:
        out = _one(p.nvars)
    elif _certainly_coprime([p, q]):
        out = _one(p.nvars)
    else:
        out = _gcd(p, q).monic()
    if isinstance(p, HomogPoly) and isinstance(q, HomogPoly):
        if out.is_zero:
            return HomogPoly.zero(p.degree)
        return as_homog(out)
    return out


def gcd_list(polys: Sequence[Poly]) -> Poly:
    nz = [p for p in polys if not p.is_zero]
    if not nz:
        return polys[0].monic() if polys else Poly.zero()
    nz.sort(key=len)
    if _certainly_coprime(nz):
        g = _one(nz[0].nvars)
    else:
        g = nz[0]
        for p in nz[1:]:
            g = _gcd(g, p)
            if g.is_constant:
                break
        g = g.monic()
    if all(isinstance(p, HomogPoly) for p in nz):
        return as_homog(g)
    return g


def _line_restriction(p: Poly, a: Sequence[int], b: Sequence[int]) -> list:
    """Coefficients in ``s`` of ``p(a*s + b)``, by evaluation and interpolation."""
    d = p.total_degree()
    xs = list(range(d + 1))
    ys = [p.evaluate([ai * s + bi for ai, bi in zip(a, b)]) for s in xs]
    return up.interpolate(xs, ys)


def _certainly_coprime(polys: Sequence[Poly], seed: int = 7919) -> bool:
    """Sufficient test for coprimality of homogeneous polynomials.

    Restrict to a random line ``s*a + b``.  If the leading form does not vanish
    at ``a``, every common factor keeps its degree on the line, so a constant
    univariate gcd certifies that the polynomials are coprime.  A ``False``
    answer only means "not certified".
    """
    if len(polys) < 2 or not all(p.is_homogeneous() for p in polys):
        return False
    if sum(len(p) for p in polys) < 24:
        return False
    n = polys[0].nvars
    rng = random.Random(seed)
    for _ in range(3):
        a = [rng.randint(-9, 9) for _ in range(n)]
        b = [rng.randint(-9, 9) for _ in range(n)]
        if any(p.evaluate(a) == 0 for p in polys):
            continue
        g = None
        for p in sorted(polys, key=len):
            r = _line_restriction(p, a, b)
            g = r if g is None else up.gcd(g, r)
            if len(g) <= 1:
                return True
        return False
    return False


def _det_bareiss(m: list[list[Poly]], nvars: int) -> Poly:
    n = len(m)
    if n == 0:
        return _one(nvars)
    a = [row[:] for row in m]
    sign = 1
    prev = _one(nvars)
    for k in range(n - 1):
        if a[k][k].is_zero:
            for i in range(k + 1, n):
                if not a[i][k].is_zero:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return Poly.zero(nvars)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]).exact_div(prev)
        prev = a[k][k]
    det = a[n - 1][n - 1]
    return det if sign == 1 else -det


def resultant(p: Poly, q: Poly, var: int) -> Poly:
    """Sylvester resultant eliminating variable ``var``."""
    if p.is_zero or q.is_zero:
        return Poly.zero(p.nvars)
    n = p.nvars
    a, b = _as_dense(p, var), _as_dense(q, var)
    m, k = len(a) - 1, len(b) - 1
    if m == 0 and k == 0:
        return _one(n)
    if k == 0:
        out = b[0] ** m
    elif m == 0:
        out = a[0] ** k
    else:
        zero = Poly.zero(n)
        size = m + k
        rows = []
        for i in range(k):
            row = [zero] * size
            for j, c in enumerate(reversed(a)):
                row[i + j] = c
            rows.append(row)
        for i in range(m):
            row = [zero] * size
            for j, c in enumerate(reversed(b)):
                row[i + j] = c
            rows.append(row)
        out = _det_bareiss(rows, n)
    if isinstance(p, HomogPoly) and isinstance(q, HomogPoly) and out.is_homogeneous():
        if out.is_zero:
            return HomogPoly.zero(p.degree * q.degree)
        return as_homog(out)
    return out
