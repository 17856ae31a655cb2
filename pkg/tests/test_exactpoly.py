import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from cremona.errors import DegreeMismatch, ParseError, PositiveDimensional, ResourceLimit
from cremona.exactpoly import (
    HomogPoly,
    Poly,
    X,
    Y,
    Z,
    add,
    common_zeros,
    factor_linear,
    gcd,
    jacobian_det,
    mul,
    parse_poly,
    rat,
    resultant,
    vanishing_order,
)
from cremona.exactpoly import univariate as up
from cremona.exactpoly.numberfield import NumberField
from cremona.exactpoly.parse import parse_map_components

from .oracles import parse as sp
from .oracles import to_sympy

P = parse_poly


def H(text):
    return HomogPoly.from_poly(P(text))


# rationals -------------------------------------------------------------------


def test_rat_lowest_terms():
    assert rat("6/4") == Fraction(3, 2)
    assert rat("0/5") == 0 and isinstance(rat("4/2"), int)
    with pytest.raises(TypeError):
        rat(0.5)


# add / mul --------------------------------------------------------------------


def test_add_examples():
    assert add(H("x^2"), H("y^2")) == H("x^2 + y^2")
    s = add(H("x^2"), H("-x^2"))
    assert s.is_zero and s.degree == 2
    assert add(H("y*z"), H("y*z")) == H("2*y*z")


def test_add_degree_mismatch():
    with pytest.raises(DegreeMismatch):
        add(H("x"), H("y^2"))
    assert add(HomogPoly.zero(3), H("x")) == H("x")


def test_mul_examples():
    assert mul(X, Y) == H("x*y")
    assert mul(H("x+y"), H("x-y")) == H("x^2 - y^2")
    assert mul(H("y*z"), H("x*z")) == H("x*y*z^2")
    assert mul(H("y*z"), H("x*z")).degree == 4


def test_zero_carries_degree():
    z = HomogPoly.zero(4)
    assert z.is_zero and z.degree == 4 and not z.terms


# Jacobians ---------------------------------------------------------------------


def test_jacobian_examples():
    assert jacobian_det(*parse_map_components("(y*z : x*z : x*y)")) == H("2*x*y*z")
    one = jacobian_det(X, Y, Z)
    assert one == 1 and one.degree == 0
    tau_jac = jacobian_det(*parse_map_components("(x^2 : x*y : y^2 - x*z)"))
    assert tau_jac == H("-2*x^3")


def test_jacobian_degree_mismatch():
    with pytest.raises(DegreeMismatch):
        jacobian_det(X, Y, H("z^2"))


def _random_matrix(rng):
    while True:
        m = [[rng.randint(-4, 4) for _ in range(3)] for _ in range(3)]
        if sympy.Matrix(m).det() != 0:
            return m


def test_jacobian_of_linear_map_is_det():
    rng = random.Random(3)
    for _ in range(25):
        m = _random_matrix(rng)
        comps = [HomogPoly.linear(row) for row in m]
        assert jacobian_det(*comps) == int(sympy.Matrix(m).det())


def test_jacobian_matches_sympy_on_random_quadratics():
    rng = random.Random(5)
    syms = sympy.symbols("x y z")
    for _ in range(10):
        comps = []
        for _ in range(3):
            terms = {(a, b, 2 - a - b): rng.randint(-3, 3) for a in range(3) for b in range(3 - a)}
            comps.append(HomogPoly({e: c for e, c in terms.items() if c}, 2))
        if any(c.is_zero for c in comps):
            continue
        ref = sympy.Matrix([[sympy.diff(to_sympy(c), s) for s in syms] for c in comps]).det()
        assert sympy.expand(to_sympy(jacobian_det(*comps)) - ref) == 0


# gcd --------------------------------------------------------------------------


def test_gcd_examples():
    assert gcd(H("x*z^3"), H("x^2*y*z")) == H("x*z")
    assert gcd(H("x+y"), H("x-y")) == 1
    assert gcd(H("(x+y)^2*z"), H("(x+y)*y^2")) == H("x+y")
    assert gcd(HomogPoly.zero(2), H("2*x*y")) == H("x*y")


polys = st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(-5, 5)), min_size=1, max_size=4)


def _from_list(items, degree):
    terms = {}
    for a, b, c in items:
        if a + b <= degree and c:
            e = (a, b, degree - a - b)
            terms[e] = terms.get(e, 0) + c
    return HomogPoly({e: c for e, c in terms.items() if c}, degree)


@given(polys, polys, polys)
def test_gcd_divides_and_is_symmetric(a, b, c):
    p, q, r = _from_list(a, 3), _from_list(b, 3), _from_list(c, 2)
    if p.is_zero or q.is_zero or r.is_zero:
        return
    p, q = p * r, q * r
    g = gcd(p, q)
    assert g.divides(p) and g.divides(q)
    assert r.divides(g)
    assert gcd(q, p) == g
    ref = sympy.gcd(to_sympy(p), to_sympy(q))
    assert sympy.simplify(to_sympy(g) / ref).is_number


# factor_linear ----------------------------------------------------------------


def test_factor_linear_examples():
    fl = factor_linear(H("2*x*y*z"))
    assert fl.unit == 2 and fl.residual == 1
    assert sorted((f.to_str(), m) for f, m in fl.linear_factors) == [("x", 1), ("y", 1), ("z", 1)]
    fl = factor_linear(H("-x^3"))
    assert fl.unit == -1 and [(f.to_str(), m) for f, m in fl.linear_factors] == [("x", 3)]
    fl = factor_linear(H("x^2 + y^2"))
    assert fl.linear_factors == [] or fl.linear_factors == ()
    assert fl.residual == H("x^2 + y^2")


def test_factor_linear_normalization():
    fl = factor_linear(H("(2*y - 4*z)*(3*x + y)^2*(x^2 + y*z + z^2)"))
    for f, _ in fl.linear_factors:
        assert f.lex_leading()[1] == 1
    assert fl.expand() == H("(2*y - 4*z)*(3*x + y)^2*(x^2 + y*z + z^2)")


linear_forms = st.tuples(st.integers(-4, 4), st.integers(-4, 4), st.integers(-4, 4)).filter(lambda t: any(t))


@given(st.lists(linear_forms, min_size=1, max_size=4), st.integers(-5, 5).filter(bool))
def test_factor_linear_round_trip(forms, unit):
    p = HomogPoly.const(unit)
    for f in forms:
        p = p * HomogPoly.linear(f)
    fl = factor_linear(p)
    assert fl.expand() == p
    assert sum(m for _, m in fl.linear_factors) == len(forms)


# resultants --------------------------------------------------------------------


def test_resultant_examples():
    assert resultant(X, Y, 0) == Y
    assert resultant(H("y*z"), H("x*z"), 2).is_zero
    r = resultant(H("x*z - y^2"), H("z^2 - x*y"), 2)
    assert r == H("y^4 - x^3*y") or r == H("x^3*y - y^4")


def test_resultant_matches_sympy():
    rng = random.Random(11)
    for _ in range(8):
        p = _from_list([(rng.randint(0, 2), rng.randint(0, 2), rng.randint(-3, 3)) for _ in range(4)], 2)
        q = _from_list([(rng.randint(0, 3), rng.randint(0, 3), rng.randint(-3, 3)) for _ in range(4)], 3)
        if p.is_zero or q.is_zero or p.degree_in(2) < 1 or q.degree_in(2) < 1:
            continue
        ref = sympy.resultant(to_sympy(p), to_sympy(q), sympy.Symbol("z"))
        mine = to_sympy(resultant(p, q, 2))
        # sympy's sign convention differs from the Sylvester determinant
        assert sympy.expand(mine - ref) == 0 or sympy.expand(mine + ref) == 0
        sign = (-1) ** (p.degree_in(2) * q.degree_in(2))
        assert resultant(q, p, 2) == resultant(p, q, 2).scale(sign)


def test_resultant_is_sylvester_determinant():
    a, b = Poly.var(0), Poly.var(1)
    # det [[a,b,0,0],[0,a,b,0],[0,0,a,b],[1,0,0,0]] = -b^3
    assert resultant(a * Z + b, Z ** 3, 2) == -(b ** 3)


# vanishing orders ----------------------------------------------------------------


def test_vanishing_order_examples():
    u, v = Poly.var(0, 2), Poly.var(1, 2)
    assert vanishing_order(u ** 2 * v + u ** 3, 0) == 2
    xi, s = Poly.var(0, 2), Poly.var(1, 2)
    a0, a1, a2 = 3, 5, 7
    form = xi ** 2 * s ** 2 * a0 + xi * s ** 2 * a1 + (s ** 2 - xi * s) * a2
    assert vanishing_order(form, 1) == 1
    assert vanishing_order(Poly.const(4, 2), 0) == 0


@given(polys, polys)
def test_vanishing_order_additive(a, b):
    p, q = _from_list(a, 3), _from_list(b, 3)
    if p.is_zero or q.is_zero:
        return
    for i in range(3):
        assert vanishing_order(p * q, i) == vanishing_order(p, i) + vanishing_order(q, i)


@given(polys, polys)
def test_degree_additive_and_add_commutes(a, b):
    p, q = _from_list(a, 3), _from_list(b, 3)
    if p.is_zero or q.is_zero:
        return
    assert (p * q).total_degree() == p.total_degree() + q.total_degree()
    assert p + q == q + p
    assert (p + q) - q == p


# guard -------------------------------------------------------------------------------


def test_term_guard(monkeypatch):
    monkeypatch.setenv("CREMONA_TERM_LIMIT", "50")
    with pytest.raises(ResourceLimit):
        H("x + y + z") ** 12


# parser --------------------------------------------------------------------------------


def test_parser_grammar():
    assert P("x^2 - 3/2*x*z") == H("x^2") - H("x*z").scale(Fraction(3, 2))
    assert P("(x+y)**2") == H("x^2 + 2*x*y + y^2")
    assert P("-(x - y)") == H("y - x")
    with pytest.raises(ParseError):
        P("2x")
    with pytest.raises(ParseError):
        P("x +")
    with pytest.raises(ParseError) as info:
        parse_map_components("(x : y)")
    assert "position" in str(info.value)


def test_parse_map_degree_mismatch():
    with pytest.raises(DegreeMismatch):
        parse_map_components("(x : y^2 : z)")


def test_parser_matches_sympy():
    for text in ["(x - 2*y)^3 - z*(x + y)^2", "1/3*x*y*z - 5*z^3", "(x + y + z)^4"]:
        assert sympy.expand(to_sympy(P(text)) - sp(text)) == 0


# univariate helpers and number fields ----------------------------------------------


def test_univariate_gcd_and_squarefree():
    a = up.mul([-1, 1], [-1, 1])  # (t-1)^2
    b = up.mul([-1, 1], [2, 1])   # (t-1)(t+2)
    assert up.gcd(a, b) == [-1, 1]
    assert up.squarefree_part(up.mul(a, [3, 1])) == up.monic(up.mul([-1, 1], [3, 1]))


def test_number_field_arithmetic():
    k = NumberField([-2, 0, 1])  # sqrt 2
    s = k.generator()
    assert s * s == k(2)
    assert (s + 1) * (s - 1) == k(1)
    assert (s + 1).inverse() * (s + 1) == k.one


# common zeros ---------------------------------------------------------------------------


def test_common_zeros_rational():
    zs = common_zeros(parse_map_components("(y*z : x*z : x*y)"))
    assert zs.rational_points == [(1, 0, 0), (0, 1, 0), (0, 0, 1)] or \
        sorted(zs.rational_points) == sorted([(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    assert zs.total_distinct == 3


def test_common_zeros_algebraic():
    zs = common_zeros([H("x^2 + y^2"), H("z^2 - x*y + y^2")])
    assert zs.rational_points == [] and zs.algebraic_count == 4


def test_common_zeros_positive_dimensional():
    with pytest.raises(PositiveDimensional):
        common_zeros([H("x*y"), H("x*z")])
