"""Independent reference computations used only by the tests.

Nothing here shares code with the package's fast paths: matrices are built
with explicit loops over monomials and reduced with unpacked 0/1 arithmetic.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np


def naive_rank_gf2(dense) -> int:
    m = (np.array(dense, dtype=np.uint8) & 1).copy()
    nrows, ncols = m.shape
    rank = 0
    for col in range(ncols):
        rows = np.nonzero(m[rank:, col])[0]
        if rows.size == 0:
            continue
        piv = rank + rows[0]
        m[[rank, piv]] = m[[piv, rank]]
        hit = np.nonzero(m[:, col])[0]
        hit = hit[hit != rank]
        m[hit] ^= m[rank]
        rank += 1
        if rank == nrows:
            break
    return rank


def dense_multiplication_matrix(terms, r: int, q: int) -> np.ndarray:
    basis = list(itertools.product(range(q), repeat=r))
    index = {m: k for k, m in enumerate(basis)}
    mat = np.zeros((len(basis), len(basis)), dtype=np.uint8)
    for row, m in enumerate(basis):
        for t in terms:
            target = tuple(a + b for a, b in zip(m, t))
            if target in index:
                mat[row, index[target]] ^= 1
    return mat


def brute_poly_power(terms, r: int, k: int, q: int) -> set:
    """Terms of f^k mod (x_i^q) by repeated multiplication with a coefficient dict."""
    acc = {(0,) * r: 1}
    for _ in range(k):
        nxt: dict = {}
        for s, c in acc.items():
            for t in terms:
                m = tuple(a + b for a, b in zip(s, t))
                if max(m, default=0) < q:
                    nxt[m] = nxt.get(m, 0) + c
        acc = {m: c % 2 for m, c in nxt.items() if c % 2}
    return set(acc)


def brute_colength(terms, r: int, q: int, power: int = 1) -> int:
    powered = brute_poly_power(list(terms), r, power, q)
    return q**r - naive_rank_gf2(dense_multiplication_matrix(powered, r, q))


def naive_xor_convolve(u, v):
    n = len(u)
    return [sum((Fraction(u[i]) * Fraction(v[j]) for i in range(n) for j in range(n) if i ^ j == k),
                Fraction(0)) for k in range(n)]
