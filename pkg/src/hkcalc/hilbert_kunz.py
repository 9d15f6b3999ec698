"""Hilbert-Kunz values e_n(f^i) and the sampled functions phi_f."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .cache import HKCache
from .colength import DEFAULT_SIZE_LIMIT, QuotientSpec, SizeLimitError, colength
from .dyadic import XElement
from .poly import Poly2, poly_mul, poly_pow


@dataclass(frozen=True)
class PhiSample(XElement):
    """phi_f at the points i/q, with value e_n(f^i) / q^r at i/q."""

    def __post_init__(self):
        super().__post_init__()
        prev = Fraction(0)
        for v in self.values:
            if v < prev or v > 1:
                raise ValueError("sample values must be non-decreasing and in [0, 1]")
            prev = v


def hk_value(f: Poly2, i: int, n: int, cache: HKCache | None = None,
             size_limit: int = DEFAULT_SIZE_LIMIT) -> int:
    """e_n(f^i) = dim F[x]/(f^i, x_1^q, ..., x_r^q) with q = 2^n."""
    if i < 0 or n < 0:
        raise ValueError("i and n must be non-negative")
    spec = QuotientSpec(f.r, n)
    if spec.dim > size_limit:
        raise SizeLimitError(f"q^r = {spec.dim} exceeds size limit {size_limit}")
    key = f.key()
    if cache is not None:
        hit = cache.get(key, i, n)
        if hit is not None:
            return hit
    value = colength(poly_pow(f, i, bound=spec.q), spec, size_limit=size_limit)
    if cache is not None:
        cache.put(key, i, n, value)
    return value


def hk_values(f: Poly2, n: int, powers, cache: HKCache | None = None, threads: int = 1,
              size_limit: int = DEFAULT_SIZE_LIMIT) -> list[int]:
    """e_n(f^i) for each i in ``powers``; colength jobs run on a thread pool."""
    spec = QuotientSpec(f.r, n)
    if spec.dim > size_limit:
        raise SizeLimitError(f"q^r = {spec.dim} exceeds size limit {size_limit}")
    powers = list(powers)
    key = f.key()
    out: dict[int, int] = {}
    todo = []
    for i in sorted(set(powers)):
        hit = cache.get(key, i, n) if cache is not None else None
        if hit is None:
            todo.append(i)
        else:
            out[i] = hit
    # successive truncated powers are cheap; the rank computations are not
    polys = {}
    if todo:
        current, last = poly_pow(f, todo[0], bound=spec.q), todo[0]
        polys[last] = current
        for i in todo[1:]:
            step = poly_pow(f, i - last, bound=spec.q)
            current = poly_mul(current, step, bound=spec.q)
            polys[i], last = current, i

    def job(i):
        return i, colength(polys[i], spec, size_limit=size_limit)

    if threads > 1 and len(todo) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(job, todo))
    else:
        results = [job(i) for i in todo]
    for i, value in results:
        out[i] = value
        if cache is not None:
            cache.put(key, i, n, value)
    return [out[i] for i in powers]


def phi_sample(f: Poly2, n: int, cache: HKCache | None = None, threads: int = 1,
               size_limit: int = DEFAULT_SIZE_LIMIT) -> PhiSample:
    if f.is_zero() or f.has_constant_term():
        raise ValueError("phi_f needs a nonzero f without constant term")
    q = 1 << n
    vals = hk_values(f, n, range(q + 1), cache=cache, threads=threads, size_limit=size_limit)
    denom = q**f.r
    return PhiSample(n, tuple(Fraction(v, denom) for v in vals))
