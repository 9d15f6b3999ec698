"""Sums of products of consecutive theta coefficients as multiplicity evaluations.

For a three-variable theta series sum a_n w^n, each of the five sums
sum a_i a_j / 2^(16n) below is obtained two ways: directly from the
coefficients, and as an affine image of a Hadamard product of theta series
(theta_f, theta_(f^2), theta_(f^4) and the parity selectors) evaluated at
w = 1/2^8.  Each such Hadamard value is a Hilbert-Kunz multiplicity of a
hypersurface in 1 + 3 + 3 + 1 = 8 variables.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .enclosure import RationalEnclosure
from .theta import (ThetaSeries, evaluate, even_selector, hadamard, odd_selector,
                    partial_sum, theta_square)

POINT = Fraction(1, 2**8)
STEP = Fraction(1, 2**16)

# label -> (offset of the first index, offset of the second index); n runs over n >= 0
SUM_INDICES = {
    "a2n*a2n": (0, 0),
    "a2n+1*a2n+1": (1, 1),
    "a2n*a2n+1": (0, 1),
    "a2n+1*a2n+2": (1, 2),
    "a2n*a2n+2": (0, 2),
}


class AssemblyMismatch(AssertionError):
    pass


@dataclass(frozen=True)
class ProductSum:
    label: str
    direct: Fraction
    enclosure: RationalEnclosure
    series: ThetaSeries


def direct_sum(coeffs, i: int, j: int) -> Fraction:
    """sum_n a_(2n+i) a_(2n+j) / 2^(16n) over the n with 2n + max(i, j) in range."""
    total = Fraction(0)
    n = 0
    while 2 * n + max(i, j) < len(coeffs):
        total += coeffs[2 * n + i] * coeffs[2 * n + j] * STEP**n
        n += 1
    return total


def _assemblies(tf: ThetaSeries):
    """label -> (Hadamard series, scale, constant) with sum = scale * value + constant."""
    N = tf.N
    a0 = tf.coeffs[0]
    sq = theta_square(tf)
    sq2 = theta_square(sq)
    even, odd = even_selector(N + 2), odd_selector(N + 2)
    w = POINT
    return {
        # 2 sum_{n>=1} a_2n^2 w^2n
        "a2n*a2n": (hadamard([tf, tf, even]), Fraction(1, 2), Fraction(a0 * a0)),
        # a_0^2 + 2 sum a_(2n+1)^2 w^(2n+1)
        "a2n+1*a2n+1": (hadamard([tf, tf, odd]), 1 / (2 * w), -a0 * a0 / (2 * w)),
        # a_0 + 16 sum a_2n a_(2n+1) w^(2n+1)
        "a2n*a2n+1": (hadamard([tf, sq, odd]), 1 / (16 * w), -a0 / (16 * w)),
        # 16 sum a_(2n+1) a_(2n+2) w^(2n+2)
        "a2n+1*a2n+2": (hadamard([tf, sq, even]), 1 / (16 * w**2), Fraction(0)),
        # 128 sum a_2n a_(2n+2) w^(2n+2)
        "a2n*a2n+2": (hadamard([tf, sq2, even]), 1 / (128 * w**2), Fraction(0)),
    }


def parity_product_sums(tf: ThetaSeries) -> dict[str, ProductSum]:
    """Enclosures of the five sums for a three-variable series ``tf``.

    The direct partial sums must equal the transformed Hadamard partial sums
    exactly; otherwise ``AssemblyMismatch`` is raised.
    """
    if tf.r != 3:
        raise ValueError("these assemblies are for three-variable series")
    out = {}
    for label, (series, scale, constant) in _assemblies(tf).items():
        direct = direct_sum(tf.coeffs, *SUM_INDICES[label])
        via = scale * partial_sum(series, POINT) + constant
        if via != direct:
            raise AssemblyMismatch(f"{label}: direct {direct} != Hadamard assembly {via}")
        enc = evaluate(series, POINT).affine(scale, constant)
        out[label] = ProductSum(label, direct, enc, series)
    return out
