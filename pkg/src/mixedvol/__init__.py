"""Exact mixed volumes, mixed area measures and mixed Hessian measures.

An exact computational kernel for convex polytopes over the rationals
(dimensions 2-4) and piecewise-affine convex functions, verification
harnesses for the support characterizations of mixed area and mixed Hessian
measures, and a floating-point laboratory for the smooth-case formulas.
"""

from .polytope import (
    Direction,
    Polytope,
    hull,
    minkowski_sum,
    normal_cone,
    polar,
    project,
    support,
    touching_cone,
    volume,
)
from .cone import Cone

__all__ = [
    "Cone",
    "Direction",
    "Polytope",
    "hull",
    "minkowski_sum",
    "normal_cone",
    "polar",
    "project",
    "support",
    "touching_cone",
    "volume",
]

__version__ = "0.1.0"
