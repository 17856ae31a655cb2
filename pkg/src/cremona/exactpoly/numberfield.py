"""Exact arithmetic in simple number fields ``Q[t]/(g)`` with ``g`` irreducible.

Used to handle common zeros of polynomial systems whose coordinates are
algebraic but not rational, without any floating point.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from . import univariate as up
from .poly import Rat, _canon, rat


class NumberField:
    __slots__ = ("modulus", "degree")

    def __init__(self, modulus: Sequence[Rat]):
        g = up.monic(up.trim([rat(c) for c in modulus]))
        if len(g) < 2:
            raise ValueError("the defining polynomial must be nonconstant")
        self.modulus = tuple(g)
        self.degree = len(g) - 1

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.modulus == other.modulus

    def __hash__(self):
        return hash(self.modulus)

    def __repr__(self):
        return f"NumberField({list(self.modulus)})"

    def reduce(self, a: Sequence[Rat]) -> tuple:
        a = up.trim(a)
        if len(a) > self.degree:
            _, a = up.divmod_(a, list(self.modulus))
        return tuple(a)

    def __call__(self, value) -> "NFElem":
        if isinstance(value, NFElem):
            return value
        if isinstance(value, (list, tuple)):
            return NFElem(self, self.reduce([rat(c) for c in value]))
        v = rat(value)
        return NFElem(self, (v,) if v else ())

    def generator(self) -> "NFElem":
        return self([0, 1])

    @property
    def zero(self) -> "NFElem":
        return NFElem(self, ())

    @property
    def one(self) -> "NFElem":
        return NFElem(self, (1,))


class NFElem:
    __slots__ = ("field", "coeffs")

    def __init__(self, field: NumberField, coeffs: tuple):
        self.field = field
        self.coeffs = coeffs

    def _lift(self, other) -> "NFElem":
        if isinstance(other, NFElem):
            if other.field != self.field:
                raise ValueError("elements of different number fields")
            return other
        return self.field(other)

    def __add__(self, other):
        other = self._lift(other)
        return NFElem(self.field, tuple(up.add(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return NFElem(self.field, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return NFElem(self.field, tuple(up.scale(self.coeffs, other)))
        other = self._lift(other)
        return NFElem(self.field, self.field.reduce(up.mul(self.coeffs, other.coeffs)))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = self.field.one
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def inverse(self) -> "NFElem":
        if not self.coeffs:
            raise ZeroDivisionError("inverse of zero in a number field")
        # extended Euclid: s*a + t*g = 1
        r0, r1 = list(self.field.modulus), list(self.coeffs)
        s0, s1 = [], [1]
        while len(r1) > 1:
            q, r = up.divmod_(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, up.sub(s0, up.mul(q, s1))
        if not r1:
            raise ZeroDivisionError("defining polynomial is not irreducible")
        inv = up.scale(s1, Fraction(1) / r1[0])
        return NFElem(self.field, self.field.reduce([_canon(Fraction(c)) for c in inv]))

    def __truediv__(self, other):
        return self * self._lift(other).inverse()

    def __rtruediv__(self, other):
        return self._lift(other) * self.inverse()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.field(other)
        if not isinstance(other, NFElem):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __bool__(self):
        return bool(self.coeffs)

    @property
    def is_rational(self) -> bool:
        return len(self.coeffs) <= 1

    def to_rational(self) -> Rat:
        if not self.is_rational:
            raise ValueError("element is not rational")
        return self.coeffs[0] if self.coeffs else 0

    def __repr__(self):
        return f"NFElem({list(self.coeffs)} mod {list(self.field.modulus)})"


# dense polynomials with number-field coefficients (ascending lists)

def ktrim(a: list) -> list:
    while a and not a[-1]:
        a.pop()
    return a


def kdivmod(a: list, b: list) -> tuple[list, list]:
    a = list(a)
    db = len(b) - 1
    inv = b[-1].inverse()
    if len(a) - 1 < db:
        return [], ktrim(a)
    q = [None] * (len(a) - db)
    for k in range(len(a) - 1 - db, -1, -1):
        c = a[k + db] * inv
        q[k] = c
        if c:
            for j in range(db + 1):
                a[k + j] = a[k + j] - c * b[j]
    return ktrim(q), ktrim(a[:db])


def kmonic(a: list) -> list:
    if not a:
        return a
    inv = a[-1].inverse()
    return [c * inv for c in a]


def kgcd(a: list, b: list) -> list:
    a, b = ktrim(list(a)), ktrim(list(b))
    while b:
        _, r = kdivmod(a, b)
        a, b = b, r
    return kmonic(a)


def kderivative(a: list) -> list:
    return ktrim([a[i] * i for i in range(1, len(a))])


def ksquarefree(a: list) -> list:
    a = ktrim(list(a))
    if len(a) <= 2:
        return kmonic(a)
    g = kgcd(a, kderivative(a))
    q, _ = kdivmod(a, g)
    return kmonic(q)
