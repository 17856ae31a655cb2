"""Chains of point blow-ups realized by affine chart substitutions."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ..cremaps import RationalMapP2
from ..errors import ChartDomainError, DegenerateMap, LatticeMismatch
from ..exactpoly.poly import HomogPoly, Poly, rat
from .picard import PicLattice, PicVector, mat_mul, transpose

ROOT_CHARTS = {"z": 2, "y": 1, "x": 0}
CHARTS = ("first", "second")


@dataclass(frozen=True)
class BlowupStep:
    """Blow up ``center`` (coordinates in the current chart) and continue in
    one of the two standard charts of the blow-up:

    * ``first``:  ``(u, v) -> (c0 + u, c1 + u*v)``, exceptional curve ``u = 0``
    * ``second``: ``(u, v) -> (c0 + u*v, c1 + v)``, exceptional curve ``v = 0``
    """

    center: tuple
    chart: str
    label: str

    def __post_init__(self):
        if self.chart not in CHARTS:
            raise ValueError(f"chart must be one of {CHARTS}")
        if len(self.center) != 2:
            raise ChartDomainError("a center in an affine chart has two coordinates")
        try:
            c = tuple(rat(v) for v in self.center)
        except (TypeError, ValueError, ZeroDivisionError):
            raise ChartDomainError(f"center {self.center} is not a finite point of the chart") from None
        object.__setattr__(self, "center", c)

    @property
    def exceptional_var(self) -> int:
        return 0 if self.chart == "first" else 1

    def substitution(self) -> list[Poly]:
        c0, c1 = self.center
        u, v = Poly.var(0, 2), Poly.var(1, 2)
        if self.chart == "first":
            return [u + c0, u * v + c1]
        return [u * v + c0, v + c1]


def _multiplicity_and_strict(g: Poly, step: BlowupStep) -> tuple[int, Poly]:
    pulled = g.compose(step.substitution())
    if pulled.is_zero:
        return 0, pulled
    e = step.exceptional_var
    m = pulled.min_degree_in(e)
    if m:
        shift = [0, 0]
        shift[e] = m
        pulled = pulled.exact_div(Poly.monomial(shift))
    return m, pulled


class BlowupTower:
    """Ordered blow-ups starting from an affine chart of the plane."""

    def __init__(self, steps: Sequence[BlowupStep], root_chart: str = "z"):
        if root_chart not in ROOT_CHARTS:
            raise ChartDomainError(f"root chart must be one of {sorted(ROOT_CHARTS)}")
        labels = [s.label for s in steps]
        if len(set(labels)) != len(labels):
            raise ValueError("labels must be distinct")
        self.steps = tuple(steps)
        self.root_chart = root_chart
        self._chart_maps = self._build_chart_maps()
        self.proximity = self._build_proximity()

    @classmethod
    def from_projective_center(cls, point: Sequence, root_chart: str, rest: Sequence[BlowupStep] = (),
                               chart: str = "first", label: str = "E1") -> "BlowupTower":
        """Tower whose first center is a projective point; it must lie in ``root_chart``."""
        p = [rat(v) for v in point]
        k = ROOT_CHARTS[root_chart]
        if p[k] == 0:
            raise ChartDomainError(f"point {tuple(point)} is not in the chart {root_chart} != 0")
        aff = [Fraction(p[i]) / p[k] for i in range(3) if i != k]
        return cls([BlowupStep(tuple(aff), chart, label), *rest], root_chart)

    def __len__(self) -> int:
        return len(self.steps)

    @property
    def labels(self) -> tuple:
        return tuple(s.label for s in self.steps)

    def _build_chart_maps(self) -> list[list[Poly]]:
        u, v = Poly.var(0, 2), Poly.var(1, 2)
        maps = [[u, v]]
        for step in self.steps:
            sub = step.substitution()
            maps.append([c.compose(sub) for c in maps[-1]])
        return maps

    def chart_map(self, j: int) -> list[Poly]:
        """Root-chart affine coordinates as polynomials in the coordinates of
        the chart reached after ``j`` blow-ups."""
        return self._chart_maps[j]

    def dehomogenize(self, p: HomogPoly) -> Poly:
        k = ROOT_CHARTS[self.root_chart]
        return Poly({tuple(e[i] for i in range(3) if i != k): c for e, c in p.terms.items()}, 2)

    def pull_back(self, p: HomogPoly, j: int) -> Poly:
        return self.dehomogenize(p).compose(self.chart_map(j))

    def _build_proximity(self) -> tuple:
        """``prox[j]`` lists the earlier steps ``i`` whose exceptional curve
        (strict transform) passes through the ``j``-th center."""
        eqs: list[Poly] = []
        prox = []
        for step in self.steps:
            here = []
            for i, eq in enumerate(eqs):
                if eq.evaluate(step.center) == 0:
                    here.append(i)
            prox.append(tuple(here))
            new_eqs = []
            for eq in eqs:
                _, strict = _multiplicity_and_strict(eq, step)
                new_eqs.append(strict)
            new_eqs.append(Poly.var(step.exceptional_var, 2))
            eqs = new_eqs
        return tuple(prox)

    # lattice bookkeeping ----------------------------------------------------

    def total_lattice(self) -> PicLattice:
        return PicLattice(len(self.steps), labels=("L",) + self.labels)

    def strict_to_total(self) -> tuple:
        """Rows express the strict transform of each exceptional curve in terms
        of total transforms: ``E_i = Etot_i - sum(Etot_j for j proximate to i)``."""
        n = len(self.steps) + 1
        rows = [[int(i == j) for j in range(n)] for i in range(n)]
        for j, ps in enumerate(self.proximity):
            for i in ps:
                rows[i + 1][j + 1] -= 1
        return tuple(tuple(r) for r in rows)

    def strict_gram(self) -> tuple:
        s = self.strict_to_total()
        d = self.total_lattice().gram
        return mat_mul(mat_mul(s, d), transpose(s))

    def strict_lattice(self) -> PicLattice:
        return PicLattice(len(self.steps), self.strict_gram(), ("L",) + self.labels)

    def total_to_strict_coords(self, coords: Sequence[int]) -> tuple:
        """Coordinates of a class given in the total basis, rewritten in the
        strict basis (solve ``S^T w = coords``; ``S`` is unitriangular)."""
        s = self.strict_to_total()
        n = len(s)
        w = [0] * n
        for k in range(n):
            w[k] = coords[k] - sum(w[i] * s[i][k] for i in range(k))
        return tuple(w)

    def curve_multiplicities(self, curve: HomogPoly) -> tuple:
        """Multiplicity of the successive strict transforms of ``curve`` at each center."""
        g = self.dehomogenize(curve)
        mults = []
        for step in self.steps:
            m, g = _multiplicity_and_strict(g, step)
            mults.append(m)
        return tuple(mults)

    def curve_class(self, curve: HomogPoly, basis: str = "strict") -> PicVector:
        tot = (curve.degree,) + tuple(-m for m in self.curve_multiplicities(curve))
        if basis == "total":
            return self.total_lattice().vector(tot)
        if basis != "strict":
            raise LatticeMismatch("basis must be 'strict' or 'total'")
        return self.strict_lattice().vector(self.total_to_strict_coords(tot))

    # serialization -----------------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "root_chart": self.root_chart,
            "steps": [{"center": [str(Fraction(c)) for c in s.center], "chart": s.chart, "label": s.label}
                      for s in self.steps],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "BlowupTower":
        root = data.get("root_chart", "z")
        steps = []
        for k, raw in enumerate(data["steps"]):
            label = raw.get("label", f"E{k + 1}")
            chart = raw.get("chart", "first")
            if k == 0 and "point" in raw:
                if root not in ROOT_CHARTS:
                    raise ChartDomainError(f"unknown root chart {root!r}")
                pt = [rat(v) for v in raw["point"]]
                idx = ROOT_CHARTS[root]
                if pt[idx] == 0:
                    raise ChartDomainError(f"point {raw['point']} is not in the chart {root} != 0")
                center = tuple(Fraction(pt[i]) / pt[idx] for i in range(3) if i != idx)
            else:
                center = tuple(raw["center"])
            steps.append(BlowupStep(center, chart, label))
        return cls(steps, root)

    @classmethod
    def from_json(cls, text: str) -> "BlowupTower":
        return cls.from_dict(json.loads(text))


def vanishing_orders(f: RationalMapP2, linear_form: HomogPoly, tower: BlowupTower) -> tuple:
    """Order of vanishing of ``linear_form o f`` along each new exceptional curve."""
    if linear_form.degree != 1:
        raise ValueError("expected a linear form")
    pulled = linear_form.compose(f.components)
    out = []
    for j, step in enumerate(tower.steps, start=1):
        g = tower.pull_back(pulled, j)
        if g.is_zero:
            raise DegenerateMap("the pulled-back form vanishes identically on the chart")
        out.append(g.min_degree_in(step.exceptional_var))
    return tuple(out)


def generic_linear_form(seed: int = 2024) -> HomogPoly:
    rng = random.Random(seed)
    return HomogPoly.linear([rng.randint(1, 97) for _ in range(3)])


def tau_tower() -> BlowupTower:
    """Three blow-ups resolving the triple-line quadratic involution."""
    return BlowupTower([
        BlowupStep((0, 0), "second", "E1"),
        BlowupStep((0, 0), "first", "E2"),
        BlowupStep((0, 1), "first", "E3"),
    ], "z")


def to_total_basis(matrix, tower: BlowupTower):
    """Rewrite a matrix acting on strict-basis coordinates so it acts on
    total-transform coordinates (``S^T M S^-T``)."""
    from .picard import PicMatrix

    s = tower.strict_to_total()
    st = transpose(s)
    rows = matrix.rows if isinstance(matrix, PicMatrix) else matrix
    n = len(rows)
    # columns of S^-T: solve S^T w = e_k by forward substitution (unitriangular)
    inv_cols = [tower.total_to_strict_coords([int(i == k) for i in range(n)]) for k in range(n)]
    inv = transpose(inv_cols)
    out = mat_mul(mat_mul(st, rows), inv)
    return PicMatrix(tower.total_lattice(), out)
