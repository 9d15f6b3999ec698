"""Exact Hilbert-Kunz computations in characteristic 2.

Colengths of Frobenius-power quotients, the sampled functions phi_f, theta
series and their Hadamard products, and the central-binomial constant.
"""

__version__ = "0.1.0"

from .colength import QuotientSpec, SizeLimitError, colength
from .hilbert_kunz import PhiSample, hk_value, phi_sample
from .kernels import BACKEND
from .poly import Poly2, parse_poly, poly_mul, poly_pow
from .theta import (ThetaSeries, evaluate, hadamard, theta_empirical, theta_monomial,
                    theta_nodal_conjectural, theta_square)

__all__ = [
    "BACKEND", "PhiSample", "Poly2", "QuotientSpec", "SizeLimitError", "ThetaSeries", "colength",
    "evaluate", "hadamard", "hk_value", "parse_poly", "phi_sample", "poly_mul", "poly_pow",
    "theta_empirical", "theta_monomial", "theta_nodal_conjectural", "theta_square",
]
