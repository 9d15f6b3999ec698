"""Theta series (1 - 2^(r+1) w) sum_n e_n(uv + g) w^n and their evaluation.

A series is stored up to a truncation order N together with a certified
growth bound |a_n| <= C rho^n valid for every n, which gives a rigorous
geometric tail when evaluating.  Series whose coefficients are known in
closed form for all n additionally carry an eventually periodic ``Pattern``
and evaluate exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import dyadic
from .cache import HKCache
from .colength import DEFAULT_SIZE_LIMIT
from .enclosure import RationalEnclosure
from .hilbert_kunz import phi_sample
from .poly import Poly2

SOURCES = ("closed_form", "empirical", "conjectural")


class IntegralityError(ArithmeticError):
    """An empirical coefficient came out non-integral; some upstream value is wrong."""


class GrowthBoundError(ArithmeticError):
    pass


class ConvergenceError(ValueError):
    """Evaluation point outside the region where a tail bound is available."""


def weakest(sources) -> str:
    return max(sources, key=SOURCES.index)


@dataclass(frozen=True)
class Growth:
    """|a_n| <= C * rho**n for all n >= 0."""

    C: Fraction
    rho: Fraction

    def __post_init__(self):
        object.__setattr__(self, "C", Fraction(self.C))
        object.__setattr__(self, "rho", Fraction(self.rho))
        if self.C < 0 or self.rho <= 0:
            raise ValueError("growth constants must satisfy C >= 0, rho > 0")

    def bound(self, n: int) -> Fraction:
        return self.C * self.rho**n


@dataclass(frozen=True)
class Pattern:
    """Coefficients ``prefix`` followed by ``cycle`` repeated forever."""

    prefix: tuple[int, ...]
    cycle: tuple[int, ...]

    def __post_init__(self):
        if not self.cycle:
            raise ValueError("cycle must be non-empty")

    def __getitem__(self, n: int) -> int:
        if n < len(self.prefix):
            return self.prefix[n]
        return self.cycle[(n - len(self.prefix)) % len(self.cycle)]

    def coefficients(self, N: int) -> tuple[int, ...]:
        return tuple(self[n] for n in range(N + 1))

    def aligned(self, start: int, period: int) -> "Pattern":
        """Same series with prefix length ``start`` and cycle length ``period``."""
        assert start >= len(self.prefix) and period % len(self.cycle) == 0
        return Pattern(tuple(self[n] for n in range(start)),
                       tuple(self[n] for n in range(start, start + period)))

    def max_abs(self) -> int:
        return max(abs(c) for c in self.prefix + self.cycle)

    def value(self, w: Fraction) -> Fraction:
        """Exact sum of the series at |w| < 1."""
        s = len(self.prefix)
        p = len(self.cycle)
        head = sum((Fraction(c) * w**n for n, c in enumerate(self.prefix)), Fraction(0))
        loop = sum((Fraction(c) * w**j for j, c in enumerate(self.cycle)), Fraction(0))
        return head + w**s * loop / (1 - w**p)


def _align_patterns(patterns: Sequence[Pattern]) -> list[Pattern]:
    start = max(len(p.prefix) for p in patterns)
    period = math.lcm(*(len(p.cycle) for p in patterns))
    return [p.aligned(start, period) for p in patterns]


@dataclass(frozen=True)
class ThetaSeries:
    coeffs: tuple[int, ...]
    r: int
    source: str
    growth: Growth
    pattern: Pattern | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(self.coeffs))
        if not self.coeffs:
            raise ValueError("a series needs at least one coefficient")
        if self.source not in SOURCES:
            raise ValueError(f"unknown source {self.source!r}")
        if any(not isinstance(c, int) for c in self.coeffs):
            raise IntegralityError("theta coefficients must be integers")
        if self.pattern is not None and self.pattern.coefficients(self.N) != self.coeffs:
            raise ValueError("pattern disagrees with stored coefficients")

    @property
    def N(self) -> int:
        return len(self.coeffs) - 1

    def truncate(self, N: int) -> "ThetaSeries":
        if N > self.N:
            if self.pattern is None:
                raise ValueError(f"cannot extend an order-{self.N} series without a closed form")
            coeffs = self.pattern.coefficients(N)
        else:
            coeffs = self.coeffs[: N + 1]
        return ThetaSeries(coeffs, self.r, self.source, self.growth, self.pattern)

    def check_growth(self) -> None:
        for n, a in enumerate(self.coeffs):
            if abs(a) > self.growth.bound(n):
                raise GrowthBoundError(
                    f"|a_{n}| = {abs(a)} exceeds growth bound {self.growth.C}*{self.growth.rho}^{n}")

    def to_json(self) -> dict:
        return {"coeffs": list(self.coeffs), "source": self.source, "r": self.r,
                "growth": {"C": str(self.growth.C), "rho": str(self.growth.rho)},
                "exact_tail": self.pattern is not None}


# -- construction -------------------------------------------------------------

def theta_empirical(f: Poly2, N: int = 4, cache: HKCache | None = None, threads: int = 1,
                    size_limit: int = DEFAULT_SIZE_LIMIT) -> ThetaSeries:
    """Theta series of f from brute-force colengths, a_n = 2^(rn) aug(to_gamma(phi_f at level n)).

    Every a_n must be an integer.  Since phi_f is non-decreasing from 0 to 1,
    |a_n| <= 2^(rn), which is the certified growth bound.
    """
    if f.is_zero() or f.has_constant_term():
        raise ValueError("f must be nonzero without constant term")
    coeffs = []
    for n in range(N + 1):
        phi = phi_sample(f, n, cache=cache, threads=threads, size_limit=size_limit)
        a = 2 ** (f.r * n) * dyadic.augmentation(dyadic.to_gamma(phi))
        if a.denominator != 1:
            raise IntegralityError(f"a_{n} = {a} is not an integer for {f}")
        coeffs.append(int(a))
    t = ThetaSeries(tuple(coeffs), f.r, "empirical", Growth(1, 2**f.r))
    t.check_growth()
    return t


def monomial_coefficient_direct(k: int, n: int) -> int:
    """a_n for x^k by the alternating sum of increments of min(k i, q)."""
    q = 1 << n
    return sum((-1) ** i * (min(k * (i + 1), q) - min(k * i, q)) for i in range(q))


def monomial_coefficient(k: int, n: int) -> int:
    """a_n for x^k in O(1): writing q = k m + s, a_n = k (m mod 2) + (-1)^m s."""
    return _monomial_from_residue(k, pow(2, n, 2 * k))


def _monomial_from_residue(k: int, res: int) -> int:
    # res = q mod 2k = k*(m mod 2) + s
    odd, s = divmod(res, k)
    return k * odd + (-s if odd else s)


def _monomial_pattern(k: int) -> Pattern:
    seen: dict[int, int] = {}
    residues = []
    res, n = 1 % (2 * k), 0
    while res not in seen:
        seen[res] = n
        residues.append(res)
        res, n = (2 * res) % (2 * k), n + 1
    start = seen[res]
    values = [_monomial_from_residue(k, x) for x in residues]
    return Pattern(tuple(values[:start]), tuple(values[start:]))


def theta_monomial(k: int, N: int = 12) -> ThetaSeries:
    """Closed-form theta series of x^k in one variable (no matrix work)."""
    if k < 1:
        raise ValueError("exponent must be positive")
    pat = _monomial_pattern(k)
    return ThetaSeries(pat.coefficients(N), 1, "closed_form", Growth(pat.max_abs(), 1), pat)


def theta_square(t: ThetaSeries) -> ThetaSeries:
    """Series of g^2 from that of g: 1 + 2^r w theta_g (order grows by one)."""
    m = 2**t.r
    coeffs = (1,) + tuple(m * a for a in t.coeffs)
    growth = Growth(max(Fraction(1), m * t.growth.C / t.growth.rho), t.growth.rho)
    pat = None
    if t.pattern is not None:
        pat = Pattern((1,) + tuple(m * a for a in t.pattern.prefix), tuple(m * a for a in t.pattern.cycle))
    return ThetaSeries(coeffs, t.r, t.source, growth, pat)


def theta_one(N: int = 12, r: int = 0) -> ThetaSeries:
    """The all-ones series, neutral for Hadamard products."""
    return ThetaSeries((1,) * (N + 1), r, "closed_form", Growth(1, 1), Pattern((), (1,)))


def central_binomials(N: int) -> list[int]:
    out = [1]
    for n in range(N):
        out.append(out[-1] * (4 * n + 2) // (n + 1))
    return out


def nodal_forcing(N: int) -> list[int]:
    """Coefficients c_0..c_N of (1 - 2w) + (2w - 8w^2 - 24w^3) sum A_n w^(2n)."""
    A = central_binomials(N // 2 + 1)
    S = [0] * (N + 1)
    for m in range(0, N // 2 + 1):
        S[2 * m] = A[m]
    c = [0] * (N + 1)
    c[0] += 1
    if N >= 1:
        c[1] -= 2
    for shift, mult in ((1, 2), (2, -8), (3, -24)):
        for j in range(N + 1 - shift):
            c[j + shift] += mult * S[j]
    return c


def _nodal_growth(a: Sequence[int]) -> Growth:
    """Certified bound |a_n| <= C 4^n for the recurrence a_n = 6a_(n-1) - 8a_(n-2) + c_n.

    With b_n = a_n - 4a_(n-1) (a_(-1) = 0) one has b_n = 2 b_(n-1) + c_n, and
    |c_n| <= 3 * 2^n for n >= 1 because A_m <= 4 A_(m-1) <= 4^m.  Hence for
    n > N, |b_n| <= 2^n (|b_N|/2^N + 3(n - N)), and summing
    a_n / 4^n = a_N / 4^N + sum b_k / 4^k gives
    |a_n| / 4^n <= |a_N| / 4^N + (|b_N| / 2^N + 6) / 2^N.
    """
    N = len(a) - 1
    prev = a[N - 1] if N >= 1 else 0
    b_N = a[N] - 4 * prev
    tail = Fraction(abs(a[N]), 4**N) + (Fraction(abs(b_N), 2**N) + 6) / 2**N
    head = max(Fraction(abs(x), 4**n) for n, x in enumerate(a))
    return Growth(max(head, tail), 4)


NODAL_GROWTH_CLAIM = Growth(2, 4)


def theta_nodal_conjectural(N: int = 12) -> ThetaSeries:
    """Conjectured series of x^3 + y^3 + xyz, from (1 - 6w + 8w^2) theta = forcing."""
    c = nodal_forcing(N)
    a: list[int] = []
    for n in range(N + 1):
        v = c[n]
        if n >= 1:
            v += 6 * a[n - 1]
        if n >= 2:
            v -= 8 * a[n - 2]
        a.append(v)
    growth = _nodal_growth(a)
    if growth.C > NODAL_GROWTH_CLAIM.C:
        raise GrowthBoundError(f"certified constant {growth.C} exceeds {NODAL_GROWTH_CLAIM.C}")
    t = ThetaSeries(tuple(a), 3, "conjectural", growth)
    t.check_growth()
    ThetaSeries(tuple(a), 3, "conjectural", NODAL_GROWTH_CLAIM).check_growth()
    return t


# -- combination --------------------------------------------------------------

def hadamard(ts: Sequence[ThetaSeries]) -> ThetaSeries:
    """Coefficientwise product; the result is truncated to the smallest order among the inputs."""
    ts = list(ts)
    if not ts:
        raise ValueError("hadamard of an empty list")
    N = min(t.N for t in ts)
    coeffs = []
    for n in range(N + 1):
        p = 1
        for t in ts:
            p *= t.coeffs[n]
        coeffs.append(p)
    growth = Growth(math.prod((t.growth.C for t in ts), start=Fraction(1)),
                    math.prod((t.growth.rho for t in ts), start=Fraction(1)))
    pat = None
    if all(t.pattern is not None for t in ts):
        pats = _align_patterns([t.pattern for t in ts])
        pat = Pattern(tuple(math.prod(v) for v in zip(*(p.prefix for p in pats))),
                      tuple(math.prod(v) for v in zip(*(p.cycle for p in pats))))
        growth = Growth(pat.max_abs(), 1)
    return ThetaSeries(tuple(coeffs), sum(t.r for t in ts), weakest(t.source for t in ts), growth, pat)


def linear_combination(terms: Sequence[tuple[int, ThetaSeries]]) -> ThetaSeries:
    """sum c_i * t_i for integer c_i; all series must share r."""
    rs = {t.r for _, t in terms}
    if len(rs) != 1:
        raise ValueError("linear combination of series with different variable counts")
    N = min(t.N for _, t in terms)
    coeffs = tuple(sum(c * t.coeffs[n] for c, t in terms) for n in range(N + 1))
    rho = max(t.growth.rho for _, t in terms)
    growth = Growth(sum((abs(c) * t.growth.C for c, t in terms), Fraction(0)), rho)
    pat = None
    if all(t.pattern is not None for _, t in terms):
        pats = _align_patterns([t.pattern for _, t in terms])
        cs = [c for c, _ in terms]
        pat = Pattern(tuple(sum(c * x for c, x in zip(cs, v)) for v in zip(*(p.prefix for p in pats))),
                      tuple(sum(c * x for c, x in zip(cs, v)) for v in zip(*(p.cycle for p in pats))))
        growth = Growth(pat.max_abs(), 1)
    return ThetaSeries(coeffs, rs.pop(), weakest(t.source for _, t in terms), growth, pat)


def even_selector(N: int = 12) -> ThetaSeries:
    """theta(x^5) - theta(x^3) = 2 w^2 + 2 w^4 + ..."""
    return linear_combination([(1, theta_monomial(5, N)), (-1, theta_monomial(3, N))])


def odd_selector(N: int = 12) -> ThetaSeries:
    """2 theta(x^3) - theta(x^5) = 1 + 2 w + 2 w^3 + ..."""
    return linear_combination([(2, theta_monomial(3, N)), (-1, theta_monomial(5, N))])


# -- evaluation ---------------------------------------------------------------

def partial_sum(t: ThetaSeries, w) -> Fraction:
    w = Fraction(w)
    total, p = Fraction(0), Fraction(1)
    for a in t.coeffs:
        total += a * p
        p *= w
    return total


def evaluate(t: ThetaSeries, w) -> RationalEnclosure:
    """Rigorous enclosure of the full series at w, for |w| < 1/2^r.

    Uses the exact closed form when one is known; otherwise the partial sum
    plus the geometric tail C (rho|w|)^(N+1) / (1 - rho|w|).
    """
    w = Fraction(w)
    if abs(w) >= Fraction(1, 2**t.r):
        raise ConvergenceError(f"|w| = {abs(w)} is not below 1/2^{t.r}")
    t.check_growth()
    if t.pattern is not None:
        return RationalEnclosure(t.pattern.value(w), 0)
    x = t.growth.rho * abs(w)
    if x >= 1:
        raise ConvergenceError(f"growth rate {t.growth.rho} gives no tail bound at w = {w}")
    tail = t.growth.C * x ** (t.N + 1) / (1 - x)
    return RationalEnclosure(partial_sum(t, w), tail)


def multiplicity(t: ThetaSeries) -> RationalEnclosure:
    """Hilbert-Kunz multiplicity of uv + g, the value at 1/2^(r+1)."""
    return evaluate(t, Fraction(1, 2 ** (t.r + 1)))
