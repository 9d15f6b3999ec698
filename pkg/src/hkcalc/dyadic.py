"""Sampled elements of X at a fixed dyadic level, and the group ring Gamma_Q.

An element of X at level n is stored by its values at 0, 1/q, ..., 1
(q = 2^n).  Everything here is exact rational arithmetic.

The # product corresponds, under ``to_gamma``, to multiplication in Gamma_Q
where lambda_i * lambda_j = lambda_(i XOR j).  Since i + j and i XOR j have
the same parity, the signs (-1)^i attached by ``to_gamma`` cancel and # is
plain XOR-convolution of increment vectors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import accumulate
from typing import Sequence

WHT_THRESHOLD = 32


class LevelMismatch(ValueError):
    pass


def _as_fractions(values) -> tuple[Fraction, ...]:
    return tuple(Fraction(v) for v in values)


@dataclass(frozen=True)
class XElement:
    level: int
    values: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", _as_fractions(self.values))
        if self.level < 0:
            raise ValueError("negative level")
        if len(self.values) != (1 << self.level) + 1:
            raise ValueError(f"level {self.level} needs {(1 << self.level) + 1} values, got {len(self.values)}")
        if self.values[0] != 0:
            raise ValueError("value at 0 must be 0")

    @property
    def q(self) -> int:
        return 1 << self.level

    @classmethod
    def from_increments(cls, level: int, d: Sequence) -> "XElement":
        return cls(level, (Fraction(0),) + tuple(accumulate(_as_fractions(d))))

    def at(self, i: int) -> Fraction:
        """Value at i/q."""
        return self.values[i]


@dataclass(frozen=True)
class GammaElement:
    """Coefficients on lambda_0, ..., lambda_(q-1)."""

    level: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _as_fractions(self.coeffs))
        if len(self.coeffs) != 1 << self.level:
            raise ValueError(f"level {self.level} needs {1 << self.level} coefficients")

    @classmethod
    def basis(cls, level: int, i: int) -> "GammaElement":
        c = [Fraction(0)] * (1 << level)
        c[i] = Fraction(1)
        return cls(level, tuple(c))


def increments(a: XElement) -> list[Fraction]:
    v = a.values
    return [v[i + 1] - v[i] for i in range(a.q)]


def _check_length(n: int) -> None:
    if n < 1 or n & (n - 1):
        raise ValueError(f"length {n} is not a power of two")


def walsh_hadamard(vec: Sequence) -> list:
    """Unnormalized Walsh-Hadamard transform; applying it twice multiplies by len(vec)."""
    out = list(vec)
    n = len(out)
    _check_length(n)
    h = 1
    while h < n:
        for start in range(0, n, 2 * h):
            for i in range(start, start + h):
                x, y = out[i], out[i + h]
                out[i], out[i + h] = x + y, x - y
        h *= 2
    return out


def xor_convolve(u: Sequence, v: Sequence, method: str = "auto") -> list[Fraction]:
    """w_k = sum over i XOR j = k of u_i v_j."""
    if len(u) != len(v):
        raise ValueError("length mismatch")
    n = len(u)
    _check_length(n)
    u, v = _as_fractions(u), _as_fractions(v)
    if method == "auto":
        method = "wht" if n >= WHT_THRESHOLD else "naive"
    if method == "naive":
        w = [Fraction(0)] * n
        for i, ui in enumerate(u):
            if ui:
                for j, vj in enumerate(v):
                    w[i ^ j] += ui * vj
        return w
    if method == "wht":
        # integer transforms over a common denominator keep the fast path exact
        du = _common_denominator(u)
        dv = _common_denominator(v)
        tu = walsh_hadamard([int(x * du) for x in u])
        tv = walsh_hadamard([int(x * dv) for x in v])
        back = walsh_hadamard([a * b for a, b in zip(tu, tv)])
        scale = du * dv * n
        return [Fraction(x, scale) for x in back]
    raise ValueError(f"unknown method {method!r}")


def _common_denominator(xs) -> int:
    return math.lcm(*(x.denominator for x in xs))


def sharp(a: XElement, b: XElement, method: str = "auto") -> XElement:
    if a.level != b.level:
        raise LevelMismatch(f"levels {a.level} and {b.level} differ; coarsen the finer operand")
    return XElement.from_increments(a.level, xor_convolve(increments(a), increments(b), method))


def to_gamma(a: XElement) -> GammaElement:
    """sum_i (-1)^i (a((i+1)/q) - a(i/q)) lambda_i."""
    return GammaElement(a.level, tuple(d if i % 2 == 0 else -d for i, d in enumerate(increments(a))))


def gamma_mul(x: GammaElement, y: GammaElement, method: str = "auto") -> GammaElement:
    if x.level != y.level:
        raise LevelMismatch(f"levels {x.level} and {y.level} differ")
    return GammaElement(x.level, tuple(xor_convolve(x.coeffs, y.coeffs, method)))


def augmentation(x: GammaElement) -> Fraction:
    """The linear functional sending every lambda_i to 1."""
    return sum(x.coeffs, Fraction(0))


def coarsen(a: XElement) -> XElement:
    """Restrict to the grid of level n-1 (keep the even-index samples)."""
    if a.level == 0:
        raise ValueError("cannot coarsen a level-0 element")
    return XElement(a.level - 1, a.values[::2])


def uv_sample(level: int) -> XElement:
    """The sample function of uv, from e_n(u^i v^i) = q^2 - (q - i)^2 for i <= q."""
    q = 1 << level
    return XElement(level, tuple(Fraction(q * q - (q - i) ** 2, q * q) for i in range(q + 1)))


def uv_identity_sides(a: XElement) -> tuple[Fraction, Fraction]:
    """Both sides of aug(to_gamma(a)) = 4^n (uv # a)(1/q) - 2^(2n-1) (uv # a)(2/q)."""
    n = a.level
    if n < 1:
        raise ValueError("level must be at least 1")
    s = sharp(uv_sample(n), a)
    lhs = augmentation(to_gamma(a))
    rhs = 4**n * s.at(1) - Fraction(2 ** (2 * n - 1)) * s.at(2)
    return lhs, rhs


def uv_identity_holds(a: XElement) -> bool:
    lhs, rhs = uv_identity_sides(a)
    return lhs == rhs
