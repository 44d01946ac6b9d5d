"""Frobenius injectivity on the cohomology of thickenings over F_p."""

from ._kernels import BACKEND
from .analyzer import (
    InjectivityReport,
    ThickeningQuery,
    Variety,
    ci_bound_t0,
    fpt_estimate,
    is_injective,
    minimal_t,
    nu,
    ordinary_power_bound,
    thickening_matrix,
)
from .linalg import FpMatrix, PrimeModulus, Scalar, rref, scalar_inv
from .parser import format_poly, parse_poly
from .polyring import HomogPoly, RingSpec

__all__ = [
    "BACKEND",
    "FpMatrix",
    "HomogPoly",
    "InjectivityReport",
    "PrimeModulus",
    "RingSpec",
    "Scalar",
    "ThickeningQuery",
    "Variety",
    "ci_bound_t0",
    "format_poly",
    "fpt_estimate",
    "is_injective",
    "minimal_t",
    "nu",
    "ordinary_power_bound",
    "parse_poly",
    "rref",
    "scalar_inv",
    "thickening_matrix",
]
