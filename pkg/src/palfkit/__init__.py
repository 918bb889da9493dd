"""Dehn twists, positive factorizations and homology of Lefschetz fibrations on planar pages."""

from palfkit.curves import (
    CURVE_A,
    CURVE_B,
    CURVE_C,
    SIGMA04,
    Boundary,
    HoleSet,
    Slope,
    Surface,
    canonical_slope,
    homology_vector,
    intersection_number,
    parity_class,
)
from palfkit.factor import (
    TwistTuple,
    classify_length3,
    enumerate_factorizations,
    equivalence_bfs,
    hurwitz_move,
    total_conjugate,
    total_monodromy,
)
from palfkit.kernels import BACKEND
from palfkit.kirby import filling_verdict, is_homology_sphere, smith_normal_form
from palfkit.mcg import MappingClass, dehn_twist
from palfkit.psl2 import ProjMatrix, rho, sanov_decompose

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "CURVE_A", "CURVE_B", "CURVE_C", "SIGMA04", "Boundary", "HoleSet",
    "MappingClass", "ProjMatrix", "Slope", "Surface", "TwistTuple", "canonical_slope",
    "classify_length3", "dehn_twist", "enumerate_factorizations", "equivalence_bfs",
    "filling_verdict", "homology_vector", "hurwitz_move", "intersection_number",
    "is_homology_sphere", "parity_class", "rho", "sanov_decompose", "smith_normal_form",
    "total_conjugate", "total_monodromy",
]
