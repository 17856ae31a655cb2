import random

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from cremona.dyngrowth import Growth, degree_sequence, growth_classify
from cremona.errors import NotAutomorphism, UnsupportedShape
from cremona.grouptools import (
    HEIS_F,
    HEIS_G,
    HEIS_H,
    JungWord,
    LetterKind,
    PingPongInstance,
    PingPongVerdict,
    PolyAut,
    cyclic_reduce,
    expand,
    free_reduce,
    heisenberg_distortion,
    invert,
    is_henon_type,
    jung_decompose,
    jung_length,
    line_degree_sequence,
    p2_extension,
    pingpong_certify,
    random_letter,
    random_word,
    random_word_sanity,
)

X, Y = sympy.symbols("x y")


def as_sympy(f: PolyAut):
    return tuple(sympy.sympify(c.replace("^", "**"), locals={"x": X, "y": Y}) for c in f.to_str()[1:-1].split(", "))


def sympy_expand(word: JungWord):
    px, py = X, Y
    for letter in reversed(word.letters):
        a, b = as_sympy(letter)
        px, py = (sympy.expand(a.subs({X: px, Y: py}, simultaneous=True)),
                  sympy.expand(b.subs({X: px, Y: py}, simultaneous=True)))
    return px, py


def test_to_str_parses_back():
    f = PolyAut.henon([0, 0, 1], 2)
    assert as_sympy(f) == (Y, Y**2 - 2 * X)


def test_examples():
    w = jung_decompose(PolyAut(_y(), _x() + _y() ** 2))
    assert [k for k in w.kinds] == [LetterKind.AFFINE, LetterKind.ELEMENTARY]
    assert w.length == 1
    assert jung_length(PolyAut.affine([[1, 2], [3, 4]], (1, 1))) == 0
    assert jung_length(PolyAut.elementary(2, [0, 1, 0, 5], 1, 3)) == 1
    h = PolyAut.henon([0, 0, 1])
    assert jung_length(h) == 1 and is_henon_type(h @ h) and jung_length(h @ h) == 2


def _x():
    from cremona.exactpoly import Poly
    return Poly.var(0, 2)


def _y():
    from cremona.exactpoly import Poly
    return Poly.var(1, 2)


def test_not_automorphism():
    with pytest.raises(NotAutomorphism):
        PolyAut(_x() ** 2, _y())
    with pytest.raises(NotAutomorphism):
        PolyAut(_x() + _y(), _x() + _y())


def test_inverse_and_composition_against_sympy():
    rng = random.Random(3)
    for _ in range(10):
        w = random_word(rng, max_letters=3, max_degree=3)
        f = expand(w)
        assert as_sympy(f) == sympy_expand(w)
        assert f @ f.inverse() == PolyAut.identity()
        assert expand(invert(w)) == f.inverse()


def test_jung_round_trip_100_words():
    rng = random.Random(11)
    for _ in range(100):
        w = random_word(rng, max_letters=4, max_degree=3)
        f = expand(w)
        dec = jung_decompose(f)
        assert as_sympy(expand(dec)) == as_sympy(f)
        kinds = dec.kinds
        assert all(k is not LetterKind.BOTH for k in kinds) or len(kinds) == 1
        assert all(a is not b for a, b in zip(kinds, kinds[1:]))
        # a reduced alternating word of E-letters of degree d_i has degree prod d_i
        degs = [l.degree for l, k in zip(dec.letters, kinds) if k is LetterKind.ELEMENTARY]
        assert f.degree == (sympy.prod(degs) if degs else 1)


@settings(max_examples=25)
@given(st.integers(0, 10**6))
def test_cyclic_length_is_conjugation_invariant(seed):
    rng = random.Random(seed)
    f = expand(random_word(rng, max_letters=3, max_degree=2))
    g = random_letter(rng, LetterKind.AFFINE)
    conj = g @ f @ g.inverse()
    assert cyclic_reduce(jung_decompose(conj)).length == cyclic_reduce(jung_decompose(f)).length
    assert is_henon_type(conj) == is_henon_type(f)


def test_henon_type_examples():
    h = PolyAut.henon([0, 0, 1])
    assert is_henon_type(h)
    e = PolyAut.elementary(1, [0, 0, 1])
    assert not is_henon_type(e)
    a = PolyAut.affine([[1, 1], [1, 2]], (0, 0))
    assert not is_henon_type(a @ e @ a.inverse())
    assert not is_henon_type(e @ a @ e.inverse())
    assert cyclic_reduce(jung_decompose(e @ a @ e.inverse())).length == 0


def test_line_degrees_match_exact_iterates():
    h = PolyAut.henon([0, 1, 1], 3)
    assert line_degree_sequence(h, 4) == list(degree_sequence(p2_extension(h), 4).degrees)
    e = PolyAut.elementary(2, [1, 0, 1])
    assert line_degree_sequence(e, 4) == list(degree_sequence(p2_extension(e), 4).degrees)


def test_henon_type_agrees_with_degree_growth():
    rng = random.Random(21)
    for _ in range(20):
        w = random_word(rng, max_letters=4, max_degree=2)
        f = expand(w)
        growth = growth_classify(line_degree_sequence(f, 6)).tag
        assert is_henon_type(f) == (growth is Growth.EXPONENTIAL)


# ping-pong -------------------------------------------------------------------


@pytest.mark.parametrize("k", [2, 3, 5, -2])
def test_pingpong_free(k):
    cert = pingpong_certify(PingPongInstance.parabolic(k))
    assert cert.verdict is PingPongVerdict.FREE and cert
    assert cert.checks["sampled_vectors"] > 0


def test_pingpong_refused():
    cert = pingpong_certify(PingPongInstance.parabolic(1))
    assert cert.verdict is PingPongVerdict.REFUSED and not cert
    inst = PingPongInstance.parabolic(1)
    assert cert.witness and free_reduce(cert.witness) == cert.witness
    assert inst.evaluate(cert.witness) == ((1, 0), (0, 1))
    a, b = sympy.Matrix([[1, 1], [0, 1]]), sympy.Matrix([[1, 0], [1, 1]])
    env = {"a": a, "b": b, "A": a.inv(), "B": b.inv()}
    prod = sympy.eye(2)
    for ch in cert.witness:
        prod = prod * env[ch]
    assert prod == sympy.eye(2)
    assert len(pingpong_certify(PingPongInstance.parabolic(0)).witness) == 1


def test_unsupported_shape():
    with pytest.raises(UnsupportedShape):
        pingpong_certify(PingPongInstance(((2, 1), (1, 1)), ((1, 0), (2, 1))))


@pytest.mark.parametrize("k", [2, 3])
def test_random_word_sanity(k):
    assert random_word_sanity(PingPongInstance.parabolic(k), trials=500)


# Heisenberg --------------------------------------------------------------------


def test_heisenberg_distortion():
    f, g, h = (sympy.Matrix(m) for m in (HEIS_F, HEIS_G, HEIS_H))
    for p in range(1, 21):
        chk = heisenberg_distortion(p)
        assert chk.holds and chk.word_length == 4 * p and chk.exponent == p * p
        assert f**p * g**p * f**-p * g**-p == h ** (p * p)
