"""Exact identity checks, each reported coefficient by coefficient."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable

from . import dyadic
from .cache import HKCache
from .colength import DEFAULT_SIZE_LIMIT, QuotientSpec, SizeLimitError
from .hilbert_kunz import hk_value, phi_sample
from .poly import Poly2, disjoint_sum, parse_poly
from .theta import (even_selector, hadamard, monomial_coefficient, monomial_coefficient_direct,
                    odd_selector, theta_empirical, theta_nodal_conjectural, theta_square)

NODAL = ("x^3+y^3+x*y*z", ("x", "y", "z"))


@dataclass(frozen=True)
class Check:
    label: str
    expected: Any
    actual: Any

    @property
    def ok(self) -> bool:
        return self.expected == self.actual


@dataclass
class SuiteReport:
    name: str
    params: dict = field(default_factory=dict)
    checks: list[Check] = field(default_factory=list)

    def add(self, label, expected, actual) -> None:
        self.checks.append(Check(label, expected, actual))

    def extend(self, prefix: str, expected, actual) -> None:
        if len(expected) != len(actual):
            self.add(f"{prefix} length", len(expected), len(actual))
        for n, (e, a) in enumerate(zip(expected, actual)):
            self.add(f"{prefix}[{n}]", e, a)

    @property
    def passed(self) -> bool:
        return bool(self.checks) and all(c.ok for c in self.checks)

    def to_json(self) -> dict:
        return {"suite": self.name, "passed": self.passed, "params": self.params,
                "checks": [{"label": c.label, "expected": _plain(c.expected),
                            "actual": _plain(c.actual), "ok": c.ok} for c in self.checks]}


def _plain(x):
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    return x


def nodal_cubic() -> Poly2:
    return parse_poly(*NODAL)


def _budget(polys, N: int, size_limit: int) -> None:
    for f in polys:
        if (2**N) ** f.r > size_limit:
            raise SizeLimitError(f"level {N} for {f.r} variables needs q^r = {(2**N) ** f.r} > {size_limit}")


def suite_parity(N: int = 12, **_) -> SuiteReport:
    """Parity selectors built from the one-variable series of x^3 and x^5, via min(m, q)."""
    rep = SuiteReport("parity", {"N": N})
    t3 = [monomial_coefficient_direct(3, n) for n in range(N + 1)]
    t5 = [monomial_coefficient_direct(5, n) for n in range(N + 1)]
    even = [2 if n >= 2 and n % 2 == 0 else 0 for n in range(N + 1)]
    odd = [1 if n == 0 else (2 if n % 2 else 0) for n in range(N + 1)]
    rep.extend("x5-x3", even, [b - a for a, b in zip(t3, t5)])
    rep.extend("2x3-x5", odd, [2 * a - b for a, b in zip(t3, t5)])
    rep.extend("x3 closed form", t3, [monomial_coefficient(3, n) for n in range(N + 1)])
    rep.extend("x5 closed form", t5, [monomial_coefficient(5, n) for n in range(N + 1)])
    rep.extend("even selector", even, list(even_selector(N).coeffs))
    rep.extend("odd selector", odd, list(odd_selector(N).coeffs))
    return rep


def suite_hadamard(polys: list[Poly2] | None = None, N: int = 3, cache: HKCache | None = None,
                   threads: int = 1, size_limit: int = DEFAULT_SIZE_LIMIT, **_) -> SuiteReport:
    """Series of a disjoint-variable sum versus the Hadamard product of the summands' series."""
    if polys is None:
        polys = [parse_poly("x^3", ["x"]), parse_poly("y^3", ["y"])]
    total = disjoint_sum(polys)
    _budget([total], N, size_limit)
    rep = SuiteReport("hadamard", {"N": N, "polys": [f.key() for f in polys]})
    kw = dict(cache=cache, threads=threads, size_limit=size_limit)
    direct = theta_empirical(total, N, **kw)
    product = hadamard([theta_empirical(f, N, **kw) for f in polys])
    rep.extend("theta(sum)", list(product.coeffs), list(direct.coeffs))
    return rep


def suite_square(f: Poly2 | None = None, N: int = 3, cache: HKCache | None = None,
                 threads: int = 1, size_limit: int = DEFAULT_SIZE_LIMIT, **_) -> SuiteReport:
    """Series of f^2 from brute force versus 1 + 2^r w theta_f."""
    f = f if f is not None else nodal_cubic()
    _budget([f], N, size_limit)
    rep = SuiteReport("square", {"N": N, "poly": f.key()})
    kw = dict(cache=cache, threads=threads, size_limit=size_limit)
    predicted = theta_square(theta_empirical(f, N - 1, **kw))
    direct = theta_empirical(f * f, N, **kw)
    rep.extend("theta(f^2)", list(predicted.coeffs), list(direct.coeffs))
    return rep


def uv_plus(g: Poly2) -> Poly2:
    names = [v for v in ("u", "v") if v not in g.var_names]
    if len(names) < 2:
        names = ["_u", "_v"]
    uv = Poly2.from_terms([(1, 1)], names)
    return disjoint_sum([uv, g])


def suite_recursion(g: Poly2 | None = None, N: int = 3, cache: HKCache | None = None,
                    threads: int = 1, size_limit: int = DEFAULT_SIZE_LIMIT, **_) -> SuiteReport:
    """Direct e_n(uv + g) in r + 2 variables versus e_n = 2^(r+1) e_(n-1) + 2^(rn) aug(to_gamma(phi_g))."""
    g = g if g is not None else parse_poly("x^3", ["x"])
    G = uv_plus(g)
    _budget([G], N, size_limit)
    r = g.r
    rep = SuiteReport("recursion", {"N": N, "poly": g.key()})
    direct = [hk_value(G, 1, n, cache=cache, size_limit=size_limit) for n in range(N + 1)]
    rec = [1]
    for n in range(1, N + 1):
        phi = phi_sample(g, n, cache=cache, threads=threads, size_limit=size_limit)
        step = 2 ** (r * n) * dyadic.augmentation(dyadic.to_gamma(phi))
        rec.append(2 ** (r + 1) * rec[-1] + step)
    rep.extend("e_n(uv+g)", rec, direct)
    return rep


def suite_nodal(N: int = 4, cache: HKCache | None = None, threads: int = 1,
                size_limit: int = DEFAULT_SIZE_LIMIT, **_) -> SuiteReport:
    """Brute-force series of the nodal cubic versus the conjectured closed form."""
    f = nodal_cubic()
    _budget([f], N, size_limit)
    rep = SuiteReport("nodal", {"N": N})
    conj = theta_nodal_conjectural(N)
    emp = theta_empirical(f, N, cache=cache, threads=threads, size_limit=size_limit)
    rep.extend("theta", list(conj.coeffs), list(emp.coeffs))
    return rep


def random_x(level: int, rng: random.Random, den: int = 12) -> dyadic.XElement:
    d = [Fraction(rng.randint(-den, den), rng.randint(1, den)) for _ in range(1 << level)]
    return dyadic.XElement.from_increments(level, d)


def suite_dyadic(N: int = 6, samples: int = 100, seed: int = 0, **_) -> SuiteReport:
    """Random-element checks of the # product, multiplicativity of aug, and the uv identity."""
    rng = random.Random(seed)
    rep = SuiteReport("dyadic", {"levels": N, "samples": samples, "seed": seed})
    for level in range(1, N + 1):
        bad_mul = bad_aug = bad_uv = 0
        for _ in range(samples):
            a, b = random_x(level, rng), random_x(level, rng)
            ga, gb = dyadic.to_gamma(a), dyadic.to_gamma(b)
            prod = dyadic.gamma_mul(ga, gb)
            bad_mul += dyadic.to_gamma(dyadic.sharp(a, b)) != prod
            bad_aug += dyadic.augmentation(prod) != dyadic.augmentation(ga) * dyadic.augmentation(gb)
            bad_uv += not dyadic.uv_identity_holds(a)
        rep.add(f"level {level}: sharp vs gamma product failures", 0, bad_mul)
        rep.add(f"level {level}: augmentation multiplicativity failures", 0, bad_aug)
        rep.add(f"level {level}: uv identity failures", 0, bad_uv)
    return rep


SUITES: dict[str, Callable[..., SuiteReport]] = {
    "parity": suite_parity,
    "hadamard": suite_hadamard,
    "square": suite_square,
    "recursion": suite_recursion,
    "nodal": suite_nodal,
    "dyadic": suite_dyadic,
}

# suite labels used on the command line, keyed to the results they check
ALIASES = {"lemma19": "parity", "thm16": "hadamard", "thm18": "square", "cor14": "recursion",
           "conjecture": "nodal", "lemma13": "dyadic"}


def verify_suite(name: str, **kw) -> SuiteReport:
    key = ALIASES.get(name, name)
    if key not in SUITES:
        raise KeyError(f"unknown suite {name!r}")
    return SUITES[key](**kw)
