"""Picard lattices of iterated blow-ups of the plane and integer matrices on them."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ..errors import InternalInconsistency, LatticeMismatch


@dataclass(frozen=True)
class PicLattice:
    """Basis ``{L, E_1, ..., E_N}`` with a Gram matrix.

    The default Gram matrix is ``diag(1, -1, ..., -1)``, which is the form in the
    basis of total transforms.  Towers with infinitely near centers may supply
    the Gram matrix of strict transforms instead.
    """

    n_exceptional: int
    gram: tuple | None = None
    labels: tuple | None = None

    def __post_init__(self):
        n = self.n_exceptional + 1
        if self.gram is None:
            g = tuple(tuple(1 if (i == j == 0) else (-1 if i == j else 0) for j in range(n)) for i in range(n))
            object.__setattr__(self, "gram", g)
        else:
            g = tuple(tuple(int(v) for v in row) for row in self.gram)
            if len(g) != n or any(len(r) != n for r in g):
                raise LatticeMismatch("Gram matrix has the wrong size")
            object.__setattr__(self, "gram", g)
        if self.labels is None:
            object.__setattr__(self, "labels", ("L",) + tuple(f"E{i}" for i in range(1, n)))

    @property
    def rank(self) -> int:
        return self.n_exceptional + 1

    def vector(self, coords: Sequence[int]) -> "PicVector":
        return PicVector(self, tuple(int(c) for c in coords))

    def basis(self, i: int) -> "PicVector":
        return self.vector([int(j == i) for j in range(self.rank)])

    def L(self) -> "PicVector":
        return self.basis(0)

    def E(self, i: int) -> "PicVector":
        return self.basis(i)


@dataclass(frozen=True)
class PicVector:
    lattice: PicLattice
    coords: tuple

    def __post_init__(self):
        if len(self.coords) != self.lattice.rank:
            raise LatticeMismatch(f"vector of length {len(self.coords)} in a rank {self.lattice.rank} lattice")

    def _check(self, other: "PicVector"):
        if not isinstance(other, PicVector) or other.lattice != self.lattice:
            raise LatticeMismatch("classes live in different lattices")

    def __add__(self, other: "PicVector") -> "PicVector":
        self._check(other)
        return PicVector(self.lattice, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "PicVector") -> "PicVector":
        self._check(other)
        return PicVector(self.lattice, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "PicVector":
        return PicVector(self.lattice, tuple(-a for a in self.coords))

    def __rmul__(self, k: int) -> "PicVector":
        return PicVector(self.lattice, tuple(k * a for a in self.coords))

    def __str__(self) -> str:
        parts = []
        for label, c in zip(self.lattice.labels, self.coords):
            if not c:
                continue
            mag = "" if abs(c) == 1 else str(abs(c))
            sign = "-" if c < 0 else "+"
            parts.append((sign, f"{mag}{label}"))
        if not parts:
            return "0"
        head = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        return head + "".join(f" {s} {t}" for s, t in parts[1:])


def intersection(u: PicVector, v: PicVector) -> int:
    u._check(v)
    g = u.lattice.gram
    return sum(u.coords[i] * g[i][j] * v.coords[j] for i in range(len(g)) for j in range(len(g)) if g[i][j])


@dataclass(frozen=True)
class PicMatrix:
    lattice: PicLattice
    rows: tuple

    def __post_init__(self):
        rows = tuple(tuple(int(v) for v in r) for r in self.rows)
        n = self.lattice.rank
        if len(rows) != n or any(len(r) != n for r in rows):
            raise LatticeMismatch(f"matrix is not {n}x{n}")
        object.__setattr__(self, "rows", rows)

    @property
    def size(self) -> int:
        return len(self.rows)

    def column(self, j: int) -> PicVector:
        return self.lattice.vector([r[j] for r in self.rows])

    def __matmul__(self, other):
        if isinstance(other, PicMatrix):
            if other.lattice != self.lattice:
                raise LatticeMismatch("matrices act on different lattices")
            return PicMatrix(self.lattice, mat_mul(self.rows, other.rows))
        if isinstance(other, PicVector):
            self.lattice.vector(other.coords)._check(other)
            return self.lattice.vector([sum(a * b for a, b in zip(r, other.coords)) for r in self.rows])
        return NotImplemented

    def power(self, n: int) -> "PicMatrix":
        return PicMatrix(self.lattice, mat_pow(self.rows, n))

    def trace(self) -> int:
        return sum(self.rows[i][i] for i in range(self.size))

    def preserves_form(self, gram: Sequence[Sequence[int]] | None = None) -> bool:
        """``M^T G M == G`` for the lattice form (or an explicit Gram matrix)."""
        g = tuple(tuple(r) for r in (gram if gram is not None else self.lattice.gram))
        mt = transpose(self.rows)
        return mat_mul(mat_mul(mt, g), self.rows) == g

    def as_lists(self) -> list[list[int]]:
        return [list(r) for r in self.rows]


def pullback_matrix(images: Sequence[PicVector], lattice: PicLattice) -> PicMatrix:
    """The matrix whose ``j``-th column is the image of the ``j``-th basis class."""
    if len(images) != lattice.rank:
        raise LatticeMismatch(f"need {lattice.rank} images, got {len(images)}")
    for v in images:
        if not isinstance(v, PicVector) or v.lattice != lattice:
            raise LatticeMismatch("image lives in a different lattice")
    n = lattice.rank
    return PicMatrix(lattice, tuple(tuple(images[j].coords[i] for j in range(n)) for i in range(n)))


# small integer matrix helpers -----------------------------------------------------


def transpose(m):
    return tuple(zip(*m))


def mat_mul(a, b):
    bt = transpose(b)
    return tuple(tuple(sum(x * y for x, y in zip(r, c)) for c in bt) for r in a)


def identity(n: int):
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def mat_pow(m, k: int):
    if k < 0:
        raise ValueError("negative matrix powers are not supported")
    result = identity(len(m))
    base = tuple(tuple(r) for r in m)
    while k:
        if k & 1:
            result = mat_mul(result, base)
        k >>= 1
        if k:
            base = mat_mul(base, base)
    return result


def char_poly(m) -> tuple:
    """Characteristic polynomial ``det(tI - M)`` as descending integer coefficients.

    Faddeev-LeVerrier recursion; every division is exact over the integers.
    """
    rows = m.rows if isinstance(m, PicMatrix) else tuple(tuple(int(v) for v in r) for r in m)
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("characteristic polynomials need square matrices")
    coeffs = [1]
    mk = tuple(tuple(0 for _ in range(n)) for _ in range(n))
    c_prev = 1
    for k in range(1, n + 1):
        mk = mat_mul(rows, mk)
        mk = tuple(tuple(v + (c_prev if i == j else 0) for j, v in enumerate(r)) for i, r in enumerate(mk))
        t = sum(mat_mul(rows, mk)[i][i] for i in range(n))
        if t % k:
            raise InternalInconsistency("non-integral step in the characteristic polynomial")
        c_prev = -t // k
        coeffs.append(c_prev)
    return tuple(coeffs)


def periodic_count(m, n: int) -> int:
    """``2 + trace(M^n)``."""
    if n < 1:
        raise ValueError("n must be positive")
    rows = m.rows if isinstance(m, PicMatrix) else m
    p = mat_pow(rows, n)
    return 2 + sum(p[i][i] for i in range(len(p)))


def eval_matrix_poly(coeffs: Sequence[int], m) -> tuple:
    """``p(M)`` for descending coefficients, by Horner."""
    rows = m.rows if isinstance(m, PicMatrix) else m
    n = len(rows)
    acc = tuple(tuple(0 for _ in range(n)) for _ in range(n))
    for c in coeffs:
        acc = mat_mul(acc, rows)
        acc = tuple(tuple(v + (c if i == j else 0) for j, v in enumerate(r)) for i, r in enumerate(acc))
    return acc
