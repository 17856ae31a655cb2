import random

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from cremona.cremaps import (
    CUBIC_WORD,
    RHO_WORD,
    SIGMA,
    TAU_WORD,
    DeJonquieresMap,
    NoetherWord,
    QuadraticClass,
    classify_quadratic,
    compose,
    cubic_target,
    dejonquieres_to_map,
    exceptional,
    expand_word,
    f_alpha_beta,
    homaloidal_check,
    identity,
    indeterminacy,
    invert_word,
    linear_map,
    make_map,
    map_to_dejonquieres,
    parse_map,
    parse_word,
    preserves_pencil,
    projectively_equal,
    rho,
    sigma,
    tau,
)
from cremona.bsurface import bk_map
from cremona.errors import AllZero, DegenerateMap, DegreeMismatch, NotQuadratic, SingularMatrix
from cremona.exactpoly import HomogPoly, parse_poly

from .oracles import SYMS, compose_map, parse, proportional, to_sympy


def H(text):
    return HomogPoly.from_poly(parse_poly(text))


def sym(f):
    return [to_sympy(c) for c in f.components]


# construction -----------------------------------------------------------------


def test_make_map_examples():
    s = make_map(H("y*z"), H("x*z"), H("x*y"))
    assert s == sigma() and s.degree == 2
    r = make_map(H("x*z^2"), H("x^2*z"), H("x^2*y"))
    assert r.degree == 2 and r == make_map(H("z^2"), H("x*z"), H("x*y"))
    i = make_map(H("x"), H("y"), H("z"))
    assert i == identity() and i.degree == 1


def test_make_map_errors():
    with pytest.raises(AllZero):
        make_map(HomogPoly.zero(2), HomogPoly.zero(2), HomogPoly.zero(2))
    with pytest.raises(DegreeMismatch):
        make_map(H("x"), H("y^2"), H("z"))


def test_make_map_normalizes_scalar():
    assert make_map(H("2*y*z"), H("2*x*z"), H("2*x*y")) == sigma()
    assert make_map(H("-x"), H("-y"), H("-z")) == identity()


def test_reduction_idempotent():
    f = parse_map("(x^2*z + x*y*z : x*y*z + y^2*z : x*z^2)")
    assert make_map(*f.components) == f


# composition -------------------------------------------------------------------


def test_involutions():
    for f in (sigma(), rho(), tau()):
        g = compose(f, f)
        assert g.degree == 1 and projectively_equal(g, identity())


def test_compose_twist():
    f = parse_map("(x*z : x*y : z^2)")
    assert compose(f, f) == parse_map("(x*z^2 : x^2*y : z^3)")


def test_compose_matches_sympy_oracle():
    pairs = [(tau(), parse_map("(x*y : x*z + y^2 : z^2)")), (sigma(), rho()),
             (parse_map("(x^2 - y*z : x*y : z^2 + x*z)"), tau())]
    for f, g in pairs:
        assert proportional(sym(compose(f, g)), compose_map(sym(f), sym(g)))


def test_projective_equality():
    assert projectively_equal(identity(), make_map(H("2*x"), H("2*y"), H("2*z")))
    assert not projectively_equal(sigma(), rho())


# indeterminacy and exceptional loci ------------------------------------------------


def test_indeterminacy_examples():
    ind = indeterminacy(sigma())
    assert sorted(ind.rational_points) == sorted([(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    assert ind.total_distinct == 3
    ind = indeterminacy(rho())
    assert sorted(ind.rational_points) == sorted([(1, 0, 0), (0, 1, 0)]) and ind.total_distinct == 2
    ind = indeterminacy(tau())
    assert ind.rational_points == ((0, 0, 1),) and ind.total_distinct == 1
    assert indeterminacy(identity()).total_distinct == 0


def test_indeterminacy_points_annihilate_components():
    for f in (sigma(), rho(), tau(), bk_map(1, 1)):
        ind = indeterminacy(f)
        assert ind.total_distinct == len(ind.rational_points) + ind.algebraic_count
        for p in ind.rational_points:
            assert all(c.evaluate(p) == 0 for c in f.components)


def test_indeterminacy_with_irrational_points():
    # A o sigma o B where B sends the coordinate points to a Galois orbit
    f = parse_map("(x^2 + y^2 : x*z : y*z)")
    ind = indeterminacy(f)
    assert ind.rational_points == ((0, 0, 1),)
    assert ind.algebraic_count == 2 and ind.total_distinct == 3


def _lines(report):
    return sorted((e.curve.to_str(), e.multiplicity, e.image) for e in report.entries)


def test_exceptional_sigma():
    assert _lines(exceptional(sigma())) == [("x", 1, (1, 0, 0)), ("y", 1, (0, 1, 0)), ("z", 1, (0, 0, 1))]


def test_exceptional_rho():
    # the Jacobian of (xy : z^2 : yz) is -2yz^2: z is the double line
    ex = exceptional(rho())
    assert ex.jacobian == H("-2*y*z^2")
    assert {(e.curve.to_str(), e.multiplicity) for e in ex.entries} == {("y", 1), ("z", 2)}
    assert all(e.contracted for e in ex.entries)


def test_exceptional_tau():
    ex = exceptional(tau())
    assert [(e.curve.to_str(), e.multiplicity, e.image) for e in ex.entries] == [("x", 3, (0, 0, 1))]


def test_exceptional_bedford_kim():
    a, b = 1, 1
    ex = exceptional(bk_map(a, b))
    images = {e.curve.to_str(): e.image for e in ex.entries}
    assert images == {"x": (0, 1, 0), "x + y": (0, 0, 1), "x + z": (1, -a, 0)}


def test_exceptional_entries_multiply_to_jacobian():
    for f in (sigma(), rho(), tau(), bk_map(2, 3), parse_map("(x^2 : y^2 : z^2)")):
        ex = exceptional(f)
        prod = HomogPoly.const(ex.unit)
        for e in ex.entries:
            prod = prod * e.curve ** e.multiplicity
        assert prod == ex.jacobian


def test_contracted_lines_parametrize_to_constants():
    s, t = sympy.symbols("s t")
    for f in (sigma(), rho(), tau(), bk_map(3, -2)):
        for e in exceptional(f).contracted_lines():
            c = e.curve.linear_coeffs()
            # parametrize the line with two kernel vectors computed by sympy
            basis = sympy.Matrix([c]).nullspace()
            pt = [s * basis[0][i] + t * basis[1][i] for i in range(3)]
            vals = [sympy.expand(comp.subs(dict(zip(SYMS, pt)))) for comp in sym(f)]
            p = e.image
            assert any(v != 0 for v in vals)
            for i in range(3):
                for j in range(i + 1, 3):
                    assert sympy.expand(vals[i] * p[j] - vals[j] * p[i]) == 0


def test_exceptional_degenerate():
    with pytest.raises(DegenerateMap):
        exceptional(parse_map("(x^2 : x*y : y^2)"))


# classification ---------------------------------------------------------------------


def test_classify_examples():
    assert classify_quadratic(sigma()) is QuadraticClass.SIGMA_TYPE
    assert classify_quadratic(rho()) is QuadraticClass.RHO_TYPE
    assert classify_quadratic(tau()) is QuadraticClass.TAU_TYPE
    assert classify_quadratic(parse_map("(x^2 : y^2 : z^2)")) is QuadraticClass.NOT_BIRATIONAL
    with pytest.raises(NotQuadratic):
        classify_quadratic(identity())


def test_classification_invariant_under_linear_conjugation():
    rng = random.Random(8)
    expected = {QuadraticClass.SIGMA_TYPE: 3, QuadraticClass.RHO_TYPE: 2, QuadraticClass.TAU_TYPE: 1}
    for base, cls in ((sigma(), QuadraticClass.SIGMA_TYPE), (rho(), QuadraticClass.RHO_TYPE),
                      (tau(), QuadraticClass.TAU_TYPE)):
        for _ in range(3):
            while True:
                m = [[rng.randint(-3, 3) for _ in range(3)] for _ in range(3)]
                if sympy.Matrix(m).det():
                    break
            f = compose(linear_map(m), base)
            assert classify_quadratic(f) is cls
            assert indeterminacy(f).total_distinct == expected[cls]


# Noether words ----------------------------------------------------------------------


def test_named_words():
    assert projectively_equal(expand_word(RHO_WORD), rho())
    assert projectively_equal(expand_word(TAU_WORD), tau())
    assert projectively_equal(expand_word(CUBIC_WORD), cubic_target())
    assert cubic_target() == parse_map("(x*z*(x + y) : y*z*(x + y) : x*y^2)")


def test_word_parsing_and_singletons():
    w = parse_word("[[1,2,0],[0,1,0],[0,0,1]]")
    assert expand_word(w) == linear_map([[1, 2, 0], [0, 1, 0], [0, 0, 1]])
    assert invert_word(NoetherWord((SIGMA,))).letters == (SIGMA,)
    inv = invert_word(w)
    assert inv.letters[0] == ((1, -2, 0), (0, 1, 0), (0, 0, 1))
    with pytest.raises(SingularMatrix):
        NoetherWord((((1, 1, 0), (1, 1, 0), (0, 0, 1)),))


def test_word_inverses():
    for w in (RHO_WORD, TAU_WORD, CUBIC_WORD):
        f = expand_word(w)
        assert projectively_equal(compose(expand_word(invert_word(w)), f), identity())


def test_word_concatenation_composes():
    for a, b in ((RHO_WORD, TAU_WORD), (TAU_WORD, CUBIC_WORD), (RHO_WORD, RHO_WORD)):
        assert projectively_equal(expand_word(a + b), compose(expand_word(a), expand_word(b)))


def test_word_text_round_trip():
    for w in (RHO_WORD, TAU_WORD, CUBIC_WORD):
        assert parse_word(w.to_str()) == w


# homaloidal nets ---------------------------------------------------------------------


def test_homaloidal_examples():
    assert homaloidal_check(2, [1, 1, 1])
    assert homaloidal_check(8, [3] * 7)
    assert homaloidal_check(17, [6] * 8)
    assert not homaloidal_check(2, [1, 1])


@given(st.integers(2, 20), st.lists(st.integers(1, 8), min_size=1, max_size=9))
def test_homaloidal_matches_definition(n, mults):
    expected = sum(m * m for m in mults) == n * n - 1 and sum(mults) == 3 * n - 3
    assert homaloidal_check(n, mults) == expected


def test_homaloidal_perturbations_fail():
    for n, mults in ((2, [1, 1, 1]), (8, [3] * 7), (17, [6] * 8)):
        for i in range(len(mults)):
            for delta in (-1, 1):
                bumped = list(mults)
                bumped[i] += delta
                if bumped[i] >= 1:
                    assert not homaloidal_check(n, bumped)
        assert not homaloidal_check(n + 1, mults)


# de Jonquieres maps --------------------------------------------------------------------


def test_dejonquieres_examples():
    ident = DeJonquieresMap((((1,), ()), ((), (1,))), ((1, 0), (0, 1)))
    assert dejonquieres_to_map(ident) == identity()
    shear = DeJonquieresMap((((1,), (0, 1)), ((), (1,))), ((1, 0), (0, 1)))
    assert dejonquieres_to_map(shear) == parse_map("(x + y : y : z)")


def test_dejonquieres_round_trip():
    f = f_alpha_beta(1, 1)
    assert f == parse_map("((x + y)*z : y*(x + z) : z*(x + z))")
    assert f.degree == 2 and preserves_pencil(f)
    dj = map_to_dejonquieres(f)
    assert dejonquieres_to_map(dj) == f
    assert preserves_pencil(sigma())
    assert not preserves_pencil(tau())


def test_dejonquieres_degenerate():
    with pytest.raises(DegenerateMap):
        DeJonquieresMap((((1,), ()), ((1,), ())), ((1, 0), (0, 1)))
