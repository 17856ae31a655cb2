"""Blow-ups, Picard lattices and the spectral data of their integer actions."""

from .bedford_kim import bk_char_poly, bk_map, bk_matrix, bk_pic_matrix, orbit_hits_m, tau_pic_example
from .picard import (
    PicLattice,
    PicMatrix,
    PicVector,
    char_poly,
    eval_matrix_poly,
    intersection,
    periodic_count,
    pullback_matrix,
)
from .roots import (
    AlgebraicNumberClass,
    Enclosure,
    NumberClass,
    RootDisk,
    certified_roots,
    dominant_root,
    is_reciprocal,
    salem_pisot_classify,
)
from .tower import BlowupStep, BlowupTower, generic_linear_form, tau_tower, to_total_basis, vanishing_orders

TAU_RESOLUTION_MATRIX = ((2, 0, 0, 1), (-1, 1, 0, -1), (-2, 0, 1, -2), (-3, 0, 0, -2))

__all__ = [
    "AlgebraicNumberClass", "BlowupStep", "BlowupTower", "Enclosure", "NumberClass", "PicLattice",
    "PicMatrix", "PicVector", "RootDisk", "TAU_RESOLUTION_MATRIX", "bk_char_poly", "bk_map",
    "bk_matrix", "bk_pic_matrix", "certified_roots", "char_poly", "dominant_root",
    "eval_matrix_poly", "generic_linear_form", "intersection", "is_reciprocal", "orbit_hits_m",
    "periodic_count", "pullback_matrix", "salem_pisot_classify", "tau_pic_example", "tau_tower", "to_total_basis",
    "vanishing_orders",
]
