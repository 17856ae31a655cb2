"""Exception hierarchy shared by every module of the toolkit."""

from __future__ import annotations


class CremonaError(Exception):
    """Base class for all computational errors raised by the toolkit."""

    code = "error"


class DegreeMismatch(CremonaError, ValueError):
    code = "degree_mismatch"


class ResourceLimit(CremonaError, RuntimeError):
    code = "resource_limit"


class AllZero(CremonaError, ValueError):
    code = "all_zero"


class DegenerateMap(CremonaError, ValueError):
    code = "degenerate_map"


class NotQuadratic(CremonaError, ValueError):
    code = "not_quadratic"


class SingularMatrix(CremonaError, ValueError):
    code = "singular_matrix"


class InternalInconsistency(CremonaError, AssertionError):
    """Two independent computations disagreed; never silently resolved."""

    code = "internal_inconsistency"


class IdentityMap(CremonaError, ValueError):
    code = "identity_map"


class LatticeMismatch(CremonaError, ValueError):
    code = "lattice_mismatch"


class ChartDomainError(CremonaError, ValueError):
    code = "chart_domain"


class NotMonic(CremonaError, ValueError):
    code = "not_monic"


class InconclusiveHorizon(CremonaError, ValueError):
    code = "inconclusive_horizon"


class NotAutomorphism(CremonaError, ValueError):
    code = "not_automorphism"


class UnsupportedShape(CremonaError, ValueError):
    code = "unsupported_shape"


class PositiveDimensional(CremonaError, ValueError):
    """A system expected to have finitely many common zeros shares a curve."""

    code = "positive_dimensional"


class ParseError(CremonaError, ValueError):
    code = "parse_error"

    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
