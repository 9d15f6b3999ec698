"""The series sum binom(2n, n)^2 lambda^(2n) and its multiplicity decomposition.

Everything is exact rational arithmetic except the Euler-integral cross
check, which is a floating-point quadrature compared against the exact sum.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from decimal import ROUND_DOWN, Decimal, localcontext
from fractions import Fraction

from .enclosure import RationalEnclosure
from .products import POINT, STEP, SUM_INDICES, parity_product_sums
from .theta import central_binomials, theta_nodal_conjectural

PI_50 = "3.14159265358979323846264338327950288419716939937510"


class QuadratureError(RuntimeError):
    pass


class IdentityError(AssertionError):
    pass


@dataclass(frozen=True)
class BinomialTable:
    values: tuple[int, ...]

    @classmethod
    def build(cls, N: int) -> "BinomialTable":
        return cls(tuple(central_binomials(N)))

    def __getitem__(self, n: int) -> int:
        return self.values[n]


def _check_lambda(lam: Fraction) -> Fraction:
    lam = Fraction(lam)
    if not 0 < lam < Fraction(1, 4):
        raise ValueError(f"lambda = {lam} is not in (0, 1/4)")
    return lam


def schneider_sum(lam, digits: int = 20) -> RationalEnclosure:
    """sum A_n^2 lambda^(2n) with A_n = binom(2n, n), to width below 10^-digits.

    Terms are positive and their ratio is at most rho = 16 lambda^2, so after
    the term t_N the tail lies in [0, t_N rho / (1 - rho)].
    """
    lam = _check_lambda(lam)
    rho = 16 * lam * lam
    target = Fraction(1, 10**digits)
    lam2 = lam * lam
    total = Fraction(0)
    term = Fraction(1)
    n = 0
    while True:
        total += term
        tail = term * rho / (1 - rho)
        if tail < target:
            break
        # A_(n+1)/A_n = (4n + 2)/(n + 1)
        term = term * Fraction(4 * n + 2, n + 1) ** 2 * lam2
        n += 1
    return RationalEnclosure(total + tail / 2, tail / 2)


def _arctan_inv(x: int, unity: int) -> int:
    """unity * arctan(1/x) in fixed point."""
    total = term = unity // x
    x2 = x * x
    k = 1
    sign = -1
    while term:
        term //= x2
        total += sign * (term // (2 * k + 1))
        sign = -sign
        k += 1
    return total


def machin_pi(digits: int = 50) -> Decimal:
    """pi truncated to ``digits`` decimal places, from 16 arctan(1/5) - 4 arctan(1/239)."""
    guard = 10
    unity = 10 ** (digits + guard)
    pi = 16 * _arctan_inv(5, unity) - 4 * _arctan_inv(239, unity)
    with localcontext() as ctx:
        ctx.prec = digits + guard + 5
        return (Decimal(pi) / Decimal(unity)).quantize(Decimal(1).scaleb(-digits), rounding=ROUND_DOWN)


def euler_integrand(lam: float):
    """The integrand after w = sin t: 1 / sqrt(1 - 16 lambda^2 sin^2 t) on [-pi/2, pi/2]."""
    k2 = 16.0 * lam * lam
    return lambda t: 1.0 / math.sqrt(1.0 - k2 * math.sin(t) ** 2)


def romberg(g, a: float, b: float, tol: float, max_levels: int = 20) -> tuple[float, int]:
    """Trapezoid rule with interval halving and Richardson extrapolation."""
    h = b - a
    rows = [[0.5 * h * (g(a) + g(b))]]
    for level in range(1, max_levels + 1):
        h /= 2
        mids = math.fsum(g(a + (2 * k - 1) * h) for k in range(1, 2 ** (level - 1) + 1))
        row = [0.5 * rows[-1][0] + h * mids]
        for j in range(1, level + 1):
            row.append(row[j - 1] + (row[j - 1] - rows[-1][j - 1]) / (4**j - 1))
        if level >= 3 and abs(row[-1] - rows[-1][-1]) < tol:
            return row[-1], level
        rows.append(row)
    raise QuadratureError(f"no convergence to {tol} within {max_levels} halvings")


@dataclass(frozen=True)
class EulerCheck:
    lam: Fraction
    integral: float
    ratio: float
    series: float
    difference: float
    tol: float
    levels: int

    @property
    def passed(self) -> bool:
        return self.difference < self.tol

    def to_json(self) -> dict:
        return {"lambda": f"{self.lam.numerator}/{self.lam.denominator}", "integral": self.integral,
                "integral_over_pi": self.ratio, "series": self.series,
                "difference": self.difference, "tol": self.tol, "passed": self.passed}


def euler_integral_check(lam, tol: float = 1e-10) -> EulerCheck:
    """Compare the integral of dw / sqrt((1 - 16 lambda^2 w^2)(1 - w^2)) over [-1, 1], divided by pi, with the series."""
    lam = _check_lambda(lam)
    pi = float(machin_pi(50))
    half = pi / 2
    integral, levels = romberg(euler_integrand(float(lam)), -half, half, tol * 1e-2)
    ratio = integral / pi
    series = schneider_sum(lam, 18)
    diff = abs(ratio - float(series.value))
    return EulerCheck(lam, integral, ratio, float(series.value), diff, tol, levels)


# -- decomposition at lambda = 1/2^8 --------------------------------------------------

# a_(2n+2), a_(2n+1), a_(2n) by index offset
LINEAR_FORM = {2: 1, 1: -6, 0: 8}


def square_weights(form: dict[int, int]) -> Counter:
    """Expand (sum c_k X_k)^2 into weights on unordered pairs (i, j), i <= j."""
    out: Counter = Counter()
    for i, ci in form.items():
        for j, cj in form.items():
            out[tuple(sorted((i, j)))] += ci * cj
    return out


def weights_on_sums(form: dict[int, int], a0_coeffs) -> tuple[dict[str, int], Fraction]:
    """Integer weights on the five labelled sums plus a constant, for sum_n (form)^2 / 2^(16n).

    A pair with both offsets >= 2 is shifted down: sum_n a_(2n+i) a_(2n+j) STEP^n
    = STEP^-1 (S(i-2, j-2) - a_(i-2) a_(j-2)).
    """
    by_indices = {v: k for k, v in SUM_INDICES.items()}
    weights: Counter = Counter()
    constant = Fraction(0)
    for (i, j), c in square_weights(form).items():
        scale = Fraction(1)
        while i >= 2 and j >= 2:
            i, j = i - 2, j - 2
            scale /= STEP
            constant -= c * scale * a0_coeffs[i] * a0_coeffs[j]
        label = by_indices.get((i, j))
        if label is None or scale.denominator != 1:
            raise ValueError(f"pair {(i, j)} does not reduce to one of the five sums")
        weights[label] += c * int(scale)
    return dict(weights), constant


@dataclass
class Decomposition:
    N: int
    digits: int
    identities: list[tuple[int, int, int, bool]]
    weights: dict[str, int]
    constant: Fraction
    sums: dict[str, RationalEnclosure]
    lhs: RationalEnclosure
    rhs: RationalEnclosure
    coefficients: tuple[int, ...] = field(repr=False, default=())

    @property
    def identities_hold(self) -> bool:
        return all(ok for *_, ok in self.identities)

    @property
    def agree(self) -> bool:
        return self.lhs.overlaps(self.rhs)

    @property
    def passed(self) -> bool:
        return self.identities_hold and self.agree

    def to_json(self) -> dict:
        return {
            "N": self.N, "digits": self.digits, "passed": self.passed,
            "identities_hold": self.identities_hold,
            "failed_identities": [n for n, _, _, ok in self.identities if not ok],
            "weights": self.weights, "constant": f"{self.constant.numerator}/{self.constant.denominator}",
            "sums": {k: v.to_json() for k, v in self.sums.items()},
            "lhs_64_times_series": self.lhs.to_json(), "rhs_combination": self.rhs.to_json(),
            "difference": str(float(abs(self.lhs.value - self.rhs.value))),
            "source": "conjectural",
        }


def binomial_square_decomposition(N: int = 20, digits: int = 25) -> Decomposition:
    """64 sum A_n^2 / 2^(16n) as an integer combination of the five product sums of the nodal series."""
    tf = theta_nodal_conjectural(2 * N + 2)
    a = tf.coeffs
    A = central_binomials(N)
    identities = []
    for n in range(N + 1):
        lhs = a[2 * n + 2] - 6 * a[2 * n + 1] + 8 * a[2 * n]
        identities.append((n, lhs, -8 * A[n], lhs == -8 * A[n]))
    weights, constant = weights_on_sums(LINEAR_FORM, a)
    sums = {k: v.enclosure for k, v in parity_product_sums(tf).items()}
    rhs = RationalEnclosure(constant, 0)
    for label, wgt in weights.items():
        rhs = rhs + sums[label].affine(wgt)
    lhs = schneider_sum(POINT, digits).affine(64)
    return Decomposition(N, digits, identities, weights, constant, sums, lhs, rhs, a)
