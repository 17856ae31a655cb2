"""Certificates around polynomial automorphisms of the affine plane and
small matrix groups.

* Jung decomposition of a polynomial automorphism into an alternating word of
  affine and elementary (triangular) letters, by leading-form reduction.
* Henon-type detection from the cyclically reduced word.
* The ping-pong argument for the parabolic pair ``[[1,k],[0,1]]``,
  ``[[1,0],[k,1]]`` and word searches that refute freeness for ``|k| <= 1``.
* The distortion identity ``[f^p, g^p] = h^(p^2)`` in the integer Heisenberg group.
"""

from __future__ import annotations

import enum
import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .cremaps import RationalMapP2, make_map
from .errors import InternalInconsistency, NotAutomorphism, UnsupportedShape
from .exactpoly.poly import HomogPoly, Poly, rat

_X = Poly.var(0, 2)
_Y = Poly.var(1, 2)


def _bivariate(p) -> Poly:
    if isinstance(p, Poly):
        if p.nvars != 2:
            raise ValueError("polynomial automorphisms use two variables")
        return Poly(p.terms, 2)
    return Poly.const(rat(p), 2)


class PolyAut:
    """A polynomial map ``(p(x,y), q(x,y))`` with nonzero constant Jacobian."""

    __slots__ = ("p", "q", "jacobian_det")

    def __init__(self, p, q):
        self.p = _bivariate(p)
        self.q = _bivariate(q)
        jac = self.p.derivative(0) * self.q.derivative(1) - self.p.derivative(1) * self.q.derivative(0)
        if not jac.is_constant or jac.is_zero:
            raise NotAutomorphism(f"Jacobian determinant {jac.to_str('xy')} is not a nonzero constant")
        self.jacobian_det = jac.constant_value()

    @classmethod
    def identity(cls) -> "PolyAut":
        return cls(_X, _Y)

    @classmethod
    def affine(cls, matrix: Sequence[Sequence], translation: Sequence = (0, 0)) -> "PolyAut":
        (a, b), (c, d) = matrix
        e, f = translation
        return cls(_X.scale(rat(a)) + _Y.scale(rat(b)) + rat(e), _X.scale(rat(c)) + _Y.scale(rat(d)) + rat(f))

    @classmethod
    def elementary(cls, alpha, poly_coeffs: Sequence, beta=1, gamma=0) -> "PolyAut":
        """``(alpha*x + P(y), beta*y + gamma)`` with ``P`` given by ascending coefficients."""
        pp = Poly.zero(2)
        for k, c in enumerate(poly_coeffs):
            if c:
                pp = pp + Poly.monomial((0, k), rat(c))
        return cls(_X.scale(rat(alpha)) + pp, _Y.scale(rat(beta)) + rat(gamma))

    @classmethod
    def henon(cls, poly_coeffs: Sequence, delta=1) -> "PolyAut":
        """``(y, P(y) - delta*x)``."""
        pp = Poly.zero(2)
        for k, c in enumerate(poly_coeffs):
            if c:
                pp = pp + Poly.monomial((0, k), rat(c))
        return cls(_Y, pp - _X.scale(rat(delta)))

    @property
    def degree(self) -> int:
        return max(self.p.total_degree(), self.q.total_degree())

    def __eq__(self, other) -> bool:
        return isinstance(other, PolyAut) and self.p == other.p and self.q == other.q

    def __hash__(self) -> int:
        return hash((self.p, self.q))

    def __matmul__(self, other: "PolyAut") -> "PolyAut":
        """``self o other``."""
        return PolyAut(self.p.compose([other.p, other.q]), self.q.compose([other.p, other.q]))

    def __call__(self, point: Sequence):
        return (self.p.evaluate(point), self.q.evaluate(point))

    def is_affine(self) -> bool:
        return self.degree <= 1

    def is_triangular(self) -> bool:
        """Second component depends on ``y`` only and is affine in it."""
        return self.q.degree_in(0) <= 0 and self.q.total_degree() <= 1 and self.p.degree_in(0) <= 1 \
            and all(e[0] == 0 or e == (1, 0) for e in self.p.terms)

    def inverse(self) -> "PolyAut":
        """Inverse of an affine or triangular map; general inverses come from
        inverting the letters of a Jung word."""
        if self.is_affine():
            a, b = self.p.terms.get((1, 0), 0), self.p.terms.get((0, 1), 0)
            c, d = self.q.terms.get((1, 0), 0), self.q.terms.get((0, 1), 0)
            e, f = self.p.terms.get((0, 0), 0), self.q.terms.get((0, 0), 0)
            det = Fraction(a * d - b * c)
            ia, ib, ic, id_ = d / det, -b / det, -c / det, a / det
            return PolyAut.affine(((ia, ib), (ic, id_)), (-(ia * e + ib * f), -(ic * e + id_ * f)))
        if self.is_triangular():
            alpha = Fraction(self.p.terms[(1, 0)])
            beta = Fraction(self.q.terms[(0, 1)])
            gamma = Fraction(self.q.terms.get((0, 0), 0))
            y_new = (_Y - gamma).scale(1 / beta)
            rest = Poly({e: c for e, c in self.p.terms.items() if e != (1, 0)}, 2)
            return PolyAut((_X - rest.compose([_X, y_new])).scale(1 / alpha), y_new)
        return expand(invert(jung_decompose(self)))

    def to_str(self) -> str:
        return f"({self.p.to_str('xy')}, {self.q.to_str('xy')})"

    __str__ = to_str

    def __repr__(self) -> str:
        return f"PolyAut{self.to_str()}"


class LetterKind(str, enum.Enum):
    AFFINE = "A"         # in A, not in E
    ELEMENTARY = "E"     # in E, not in A
    BOTH = "S"           # in the intersection A n E


def letter_kind(f: PolyAut) -> LetterKind:
    if f.is_affine():
        return LetterKind.BOTH if f.is_triangular() else LetterKind.AFFINE
    if f.is_triangular():
        return LetterKind.ELEMENTARY
    raise ValueError(f"{f} is neither affine nor elementary")


@dataclass(frozen=True)
class JungWord:
    """``letters[0] o letters[1] o ... o letters[-1]``."""

    letters: tuple

    @property
    def kinds(self) -> tuple:
        return tuple(letter_kind(l) for l in self.letters)

    @property
    def length(self) -> int:
        """Number of elementary letters outside the affine group."""
        return sum(k is LetterKind.ELEMENTARY for k in self.kinds)

    def to_str(self) -> str:
        return " o ".join(f"{k.value}{l.to_str()}" for k, l in zip(self.kinds, self.letters)) or "id"


def expand(word: JungWord) -> PolyAut:
    out = PolyAut.identity()
    for letter in word.letters:
        out = out @ letter
    return out


def invert(word: JungWord) -> JungWord:
    return JungWord(tuple(l.inverse() for l in reversed(word.letters)))


def _group_of(kind: LetterKind) -> str:
    return "A" if kind is LetterKind.AFFINE else "E" if kind is LetterKind.ELEMENTARY else "S"


def normalize_word(letters: Sequence[PolyAut]) -> JungWord:
    """Merge neighbours in the same factor and absorb letters of the
    intersection until the word alternates between ``A`` and ``E``."""
    ls = [l for l in letters if l != PolyAut.identity()]
    changed = True
    while changed and len(ls) > 1:
        changed = False
        kinds = [letter_kind(l) for l in ls]
        for i in range(len(ls) - 1):
            a, b = kinds[i], kinds[i + 1]
            if a is LetterKind.BOTH or b is LetterKind.BOTH or a is b:
                merged = ls[i] @ ls[i + 1]
                ls[i:i + 2] = [] if merged == PolyAut.identity() else [merged]
                changed = True
                break
    return JungWord(tuple(ls))


def _top_power_ratio(big: Poly, small: Poly):
    """``c`` with ``top(big) = c * top(small)^k``, or ``None``."""
    db, ds = big.total_degree(), small.total_degree()
    if ds < 1 or db % ds:
        return None
    k = db // ds
    tb, ts = big.top_form(), small.top_form() ** k
    c = Fraction(tb.lex_leading()[1]) / Fraction(ts.lex_leading()[1])
    return (c, k) if tb == ts.scale(c) else None



def jung_decompose(f: PolyAut) -> JungWord:
    """Write ``f`` as an alternating word; raises ``NotAutomorphism`` when no
    degree-lowering letter exists."""
    swap = PolyAut(_Y, _X)
    left: list[PolyAut] = []
    g = f
    while g.degree > 1:
        dp, dq = g.p.total_degree(), g.q.total_degree()
        if dq > dp:
            left.append(swap)
            g = swap @ g
            continue
        hit = _top_power_ratio(g.p, g.q)
        if hit is None:
            raise NotAutomorphism(f"no letter lowers the degree of {g}")
        c, k = hit
        # g = e^-1 o (e o g) with e = (x - c*y^k, y)
        left.append(PolyAut(_X + Poly.monomial((0, k), c), _Y))
        g = PolyAut(g.p - g.q ** k * c, g.q)
        if g.p.total_degree() >= dp:
            raise NotAutomorphism("leading-form reduction failed to lower the degree")
    word = normalize_word(left + [g])
    if expand(word) != f:
        raise InternalInconsistency("Jung word does not expand to the input map")
    return word


def jung_length(f: PolyAut) -> int:
    return jung_decompose(f).length


def cyclic_reduce(word: JungWord) -> JungWord:
    """Conjugate until the first and last letters lie in different factors."""
    w = word
    for _ in range(4 * len(word.letters) + 4):
        if len(w.letters) < 2:
            return w
        ka, kb = _group_of(w.kinds[0]), _group_of(w.kinds[-1])
        if ka != kb and "S" not in (ka, kb):
            return w
        # conjugate by the last letter: l o w o l^-1
        last = w.letters[-1]
        w = normalize_word((last,) + w.letters[:-1])
    raise InternalInconsistency("cyclic reduction did not stabilize")


def is_henon_type(f: PolyAut) -> bool:
    """The cyclically reduced word contains both an affine and an elementary letter."""
    kinds = set(cyclic_reduce(jung_decompose(f)).kinds)
    return LetterKind.AFFINE in kinds and LetterKind.ELEMENTARY in kinds


def p2_extension(f: PolyAut) -> RationalMapP2:
    """``(p^h : q^h : z^d)`` with ``d`` the degree of ``f``."""
    d = f.degree

    def homog(p: Poly) -> HomogPoly:
        terms = {(e[0], e[1], d - e[0] - e[1]): c for e, c in p.terms.items()}
        return HomogPoly(terms, d)

    return make_map(homog(f.p), homog(f.q), HomogPoly({(0, 0, d): 1}, d))


def line_degree_sequence(f: PolyAut, N: int, prime: int = 32003, seed: int = 7, lines: int = 2) -> list[int]:
    """Degrees of ``f, f^2, ..., f^N`` read off restrictions to random affine
    lines modulo a prime.  The restriction of an iterate has the iterate's
    degree unless the line or the prime is special; the maximum over a few
    lines guards against that."""
    rng = random.Random(seed)
    comps = []
    for comp in (f.p, f.q):
        comps.append([(e, Fraction(v).numerator * pow(Fraction(v).denominator, -1, prime) % prime)
                      for e, v in comp.terms.items()])
    best = [0] * N
    for _ in range(lines):
        a, b, c, d = (rng.randrange(1, prime) for _ in range(4))
        cur = (np.array([b, a], dtype=np.int64), np.array([d, c], dtype=np.int64))
        for n in range(N):
            cur = tuple(_restrict(terms, cur, prime) for terms in comps)
            best[n] = max(best[n], max(len(u) - 1 for u in cur))
    return best


def _trim_mod(u):
    nz = np.nonzero(u)[0]
    return u[: nz[-1] + 1] if len(nz) else u[:1] * 0


def _restrict(terms, cur, prime):
    xs, ys = cur
    cache = {}

    def power(which, base, k):
        key = (which, k)
        if key not in cache:
            cache[key] = np.array([1], dtype=np.int64) if k == 0 else \
                np.convolve(power(which, base, k - 1), base) % prime
        return cache[key]

    acc = np.zeros(1, dtype=np.int64)
    for (i, j), coef in terms:
        t = np.convolve(power(0, xs, i), power(1, ys, j)) % prime
        if len(t) > len(acc):
            acc = np.concatenate([acc, np.zeros(len(t) - len(acc), dtype=np.int64)])
        acc[: len(t)] = (acc[: len(t)] + coef * t) % prime
    return _trim_mod(acc)


def random_letter(rng: random.Random, kind: LetterKind, height: int = 5, max_degree: int = 3) -> PolyAut:
    def nz():
        while True:
            v = Fraction(rng.randint(-height, height), rng.randint(1, height))
            if v:
                return v

    if kind is LetterKind.ELEMENTARY:
        k = rng.randint(2, max_degree)
        coeffs = [Fraction(rng.randint(-height, height)) for _ in range(k)] + [nz()]
        return PolyAut.elementary(nz(), coeffs, nz(), rng.randint(-height, height))
    while True:
        m = [[rng.randint(-height, height) for _ in range(2)] for _ in range(2)]
        if m[0][0] * m[1][1] - m[0][1] * m[1][0] and m[1][0]:
            return PolyAut.affine(m, (rng.randint(-height, height), rng.randint(-height, height)))


def random_word(rng: random.Random, max_letters: int = 4, height: int = 5, max_degree: int = 3) -> JungWord:
    n = rng.randint(1, max_letters)
    kind = rng.choice([LetterKind.AFFINE, LetterKind.ELEMENTARY])
    letters = []
    for _ in range(n):
        letters.append(random_letter(rng, kind, height, max_degree))
        kind = LetterKind.AFFINE if kind is LetterKind.ELEMENTARY else LetterKind.ELEMENTARY
    return JungWord(tuple(letters))


# ping-pong ------------------------------------------------------------------

Mat2 = tuple


def _m2(m) -> Mat2:
    return ((int(m[0][0]), int(m[0][1])), (int(m[1][0]), int(m[1][1])))


def _mul2(a: Mat2, b: Mat2) -> Mat2:
    return ((a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]),
            (a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]))


def _inv2(a: Mat2) -> Mat2:
    det = a[0][0] * a[1][1] - a[0][1] * a[1][0]
    if det not in (1, -1):
        raise UnsupportedShape("generators must be unimodular")
    return ((a[1][1] * det, -a[0][1] * det), (-a[1][0] * det, a[0][0] * det))


_I2 = ((1, 0), (0, 1))
LETTERS = ("a", "A", "b", "B")  # capitals are inverses
_INVERSE = {"a": "A", "A": "a", "b": "B", "B": "b"}


@dataclass(frozen=True)
class PingPongInstance:
    """Generators with the cones ``X1 = {|x| > |y|}`` and ``X2 = {|x| < |y|}``."""

    A: Mat2
    B: Mat2

    @classmethod
    def parabolic(cls, k: int) -> "PingPongInstance":
        return cls(((1, k), (0, 1)), ((1, 0), (k, 1)))

    def __post_init__(self):
        object.__setattr__(self, "A", _m2(self.A))
        object.__setattr__(self, "B", _m2(self.B))

    @staticmethod
    def in_X1(v: Sequence[int]) -> bool:
        return abs(v[0]) > abs(v[1])

    @staticmethod
    def in_X2(v: Sequence[int]) -> bool:
        return abs(v[0]) < abs(v[1])

    def generator(self, letter: str) -> Mat2:
        return {"a": self.A, "A": _inv2(self.A), "b": self.B, "B": _inv2(self.B)}[letter]

    def evaluate(self, word: str) -> Mat2:
        m = _I2
        for ch in word:
            m = _mul2(m, self.generator(ch))
        return m


def parabolic_parameter(inst: PingPongInstance) -> int:
    a, b = inst.A, inst.B
    if a[0][0] == a[1][1] == 1 and a[1][0] == 0 and b[0][0] == b[1][1] == 1 and b[0][1] == 0 \
            and a[0][1] == b[1][0]:
        return a[0][1]
    raise UnsupportedShape("expected generators [[1,k],[0,1]] and [[1,0],[k,1]]")


def free_reduce(word: str) -> str:
    out: list[str] = []
    for ch in word:
        if out and out[-1] == _INVERSE[ch]:
            out.pop()
        else:
            out.append(ch)
    return "".join(out)


def reduced_words(max_len: int):
    """All nonempty reduced words of length at most ``max_len``, shortest first."""
    level = [""]
    for _ in range(max_len):
        nxt = []
        for w in level:
            for ch in LETTERS:
                if not w or w[-1] != _INVERSE[ch]:
                    nxt.append(w + ch)
        yield from nxt
        level = nxt


def find_identity_word(inst: PingPongInstance, max_len: int = 12) -> str | None:
    """Shortest nonempty reduced word of length ``<= max_len`` equal to the
    identity, found by pairing words of half length with equal matrices."""
    half = (max_len + 1) // 2
    seen: dict = {_I2: ""}
    best = None
    for w in reduced_words(half):
        m = inst.evaluate(w)
        if m in seen:
            cand = free_reduce(w + "".join(_INVERSE[c] for c in reversed(seen[m])))
            if cand and len(cand) <= max_len and inst.evaluate(cand) == _I2:
                if best is None or (len(cand), cand) < (len(best), best):
                    best = cand
        else:
            seen[m] = w
    return best


class PingPongVerdict(str, enum.Enum):
    FREE = "FREE"
    REFUSED = "REFUSED"


@dataclass(frozen=True)
class PingPongCertificate:
    verdict: PingPongVerdict
    k: int
    reason: str
    witness: str | None = None
    checks: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.verdict is PingPongVerdict.FREE


_SAMPLE_VECTORS = tuple(v for v in itertools.product(range(-6, 7), repeat=2) if v != (0, 0))


def pingpong_certify(inst: PingPongInstance, witness_len: int = 12) -> PingPongCertificate:
    """For ``|k| >= 2`` every nonzero power ``a^m`` acts by ``(x, y) -> (x + mky, y)``
    and ``|x + mky| >= |mk||y| - |x| > |y|`` on ``X2``, so ``a^m X2 c X1``; the
    transposed argument gives ``b^m X1 c X2``.  For ``|k| <= 1`` a relation is produced."""
    k = parabolic_parameter(inst)
    if abs(k) >= 2:
        # the closed-form argument above is the proof; these exact checks guard
        # the implementation of the cone predicates
        sampled = 0
        for m in (-3, -2, -1, 1, 2, 3):
            am = inst.evaluate(("a" if m > 0 else "A") * abs(m))
            bm = inst.evaluate(("b" if m > 0 else "B") * abs(m))
            if am != ((1, m * k), (0, 1)) or bm != ((1, 0), (m * k, 1)):
                raise InternalInconsistency("power formula for the parabolic generators fails")
            for v in _SAMPLE_VECTORS:
                if inst.in_X2(v):
                    w = (am[0][0] * v[0] + am[0][1] * v[1], am[1][0] * v[0] + am[1][1] * v[1])
                    if not inst.in_X1(w):
                        raise InternalInconsistency(f"a^{m} moves {v} outside X1")
                    sampled += 1
                if inst.in_X1(v):
                    w = (bm[0][0] * v[0] + bm[0][1] * v[1], bm[1][0] * v[0] + bm[1][1] * v[1])
                    if not inst.in_X2(w):
                        raise InternalInconsistency(f"b^{m} moves {v} outside X2")
                    sampled += 1
        return PingPongCertificate(
            PingPongVerdict.FREE, k,
            f"|mk| >= {abs(k)} >= 2 for every m != 0: a^m maps X2 into X1 and b^m maps X1 into X2",
            None, {"sampled_vectors": sampled})
    witness = find_identity_word(inst, witness_len)
    reason = "the generators satisfy a relation" if witness else "no relation found within the search bound"
    return PingPongCertificate(PingPongVerdict.REFUSED, k, reason, witness)


def random_word_sanity(inst: PingPongInstance, max_len: int = 10, trials: int = 2000,
                       exhaustive_len: int = 6, seed: int = 0) -> bool:
    """No nonempty reduced word evaluates to the identity: exhaustively up to
    ``exhaustive_len`` and on random reduced words up to ``max_len``."""
    for w in reduced_words(exhaustive_len):
        if inst.evaluate(w) == _I2:
            return False
    rng = random.Random(seed)
    for _ in range(trials):
        n = rng.randint(1, max_len)
        w = ""
        while len(w) < n:
            ch = rng.choice(LETTERS)
            if not w or w[-1] != _INVERSE[ch]:
                w += ch
        if inst.evaluate(w) == _I2:
            return False
    return True


# Heisenberg group -----------------------------------------------------------


def _mul3(a, b):
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(3)) for j in range(3)) for i in range(3))


def _pow3(a, n: int):
    out = tuple(tuple(int(i == j) for j in range(3)) for i in range(3))
    for _ in range(n):
        out = _mul3(out, a)
    return out


def _inv_unitriangular(m):
    a, c, b = m[0][1], m[0][2], m[1][2]
    return ((1, -a, a * b - c), (0, 1, -b), (0, 0, 1))


HEIS_F = ((1, 1, 0), (0, 1, 0), (0, 0, 1))
HEIS_G = ((1, 0, 0), (0, 1, 1), (0, 0, 1))
HEIS_H = ((1, 0, 1), (0, 1, 0), (0, 0, 1))


@dataclass(frozen=True)
class DistortionCheck:
    p: int
    holds: bool
    word: str
    word_length: int
    exponent: int


def heisenberg_distortion(p: int) -> DistortionCheck:
    """``f^p g^p f^-p g^-p = h^(p^2)``; the left side is a word of length ``4p``."""
    if p < 1:
        raise ValueError("p must be positive")
    fp, gp = _pow3(HEIS_F, p), _pow3(HEIS_G, p)
    comm = _mul3(_mul3(fp, gp), _mul3(_inv_unitriangular(fp), _inv_unitriangular(gp)))
    word = "f" * p + "g" * p + "F" * p + "G" * p
    return DistortionCheck(p, comm == _pow3(HEIS_H, p * p), word, len(word), p * p)
