"""Colength of (f, x_1^q, ..., x_r^q) via the rank of multiplication by f.

The quotient R_q = F[x]/(x_1^q, ..., x_r^q) has the monomial basis
{x^a : 0 <= a_i < q}, indexed lexicographically.  Multiplication by f sends
x^a to the sum of x^(a+t) over terms t of f, dropping monomials that leave the
box, and colength(f) = q^r - rank.

Any integer weight vector w with w.t constant over the terms t of f makes the
map homogeneous, so the matrix splits into independent blocks indexed by the
weighted degree.  Ranks are computed block by block.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import kernels
from .poly import Poly2

DEFAULT_SIZE_LIMIT = 2**21
DEFAULT_BLOCK_LIMIT = 2**30


class SizeLimitError(RuntimeError):
    """The requested quotient is larger than the configured guard."""


@dataclass(frozen=True)
class QuotientSpec:
    r: int
    n: int

    def __post_init__(self):
        if self.r < 0 or self.n < 0:
            raise ValueError("r and n must be non-negative")

    @property
    def q(self) -> int:
        return 1 << self.n

    @property
    def dim(self) -> int:
        return self.q**self.r


def grading_weights(terms) -> np.ndarray:
    """Integer basis (rows) of {w : w.t is the same for every term t}."""
    terms = [tuple(t) for t in terms]
    r = len(terms[0]) if terms else 0
    if not terms:
        return np.zeros((0, r), dtype=np.int64)
    base = terms[0]
    rows = [[Fraction(a - b) for a, b in zip(t, base)] for t in terms[1:]]
    # reduced row echelon form over Q
    pivots: list[int] = []
    lead = 0
    for col in range(r):
        p = next((i for i in range(lead, len(rows)) if rows[i][col] != 0), None)
        if p is None:
            continue
        rows[lead], rows[p] = rows[p], rows[lead]
        inv = 1 / rows[lead][col]
        rows[lead] = [x * inv for x in rows[lead]]
        for i in range(len(rows)):
            if i != lead and rows[i][col] != 0:
                c = rows[i][col]
                rows[i] = [x - c * y for x, y in zip(rows[i], rows[lead])]
        pivots.append(col)
        lead += 1
    free = [c for c in range(r) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * r
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -rows[i][fc]
        den = math.lcm(*(x.denominator for x in v))
        basis.append([int(x * den) for x in v])
    return np.array(basis, dtype=np.int64).reshape(len(basis), r)


def _basis_exponents(q: int, r: int) -> np.ndarray:
    if r == 0:
        return np.zeros((1, 0), dtype=np.int64)
    grid = np.indices((q,) * r, dtype=np.int64).reshape(r, -1).T
    return np.ascontiguousarray(grid)


def _ravel(exps: np.ndarray, q: int) -> np.ndarray:
    r = exps.shape[1]
    idx = np.zeros(exps.shape[0], dtype=np.int64)
    for j in range(r):
        idx = idx * q + exps[:, j]
    return idx


def multiplication_rank(f: Poly2, q: int, *, graded: bool = True, backend: str | None = None,
                        block_limit: int = DEFAULT_BLOCK_LIMIT) -> int:
    """Rank over GF(2) of multiplication by f on R_q."""
    f = f.truncate(q)
    if f.is_zero():
        return 0
    r = f.r
    exps = _basis_exponents(q, r)
    dim = exps.shape[0]
    terms = np.array(sorted(f.terms), dtype=np.int64).reshape(len(f.terms), r)

    if graded:
        weights = grading_weights(f.terms)
    else:
        weights = np.zeros((0, r), dtype=np.int64)

    # one block label per basis monomial
    if weights.shape[0]:
        keys = exps @ weights.T
        shift = weights @ terms[0]
        uniq, group = np.unique(keys, axis=0, return_inverse=True)
        group = group.reshape(-1)
        lookup = {tuple(k): g for g, k in enumerate(uniq.tolist())}
        target_group = np.array([lookup.get(tuple(k + shift), -1) for k in uniq.tolist()],
                                dtype=np.int64)
    else:
        group = np.zeros(dim, dtype=np.int64)
        target_group = np.zeros(1, dtype=np.int64)
    ngroups = target_group.shape[0]
    sizes = np.bincount(group, minlength=ngroups)
    order = np.argsort(group, kind="stable")
    local = np.empty(dim, dtype=np.int64)
    starts = np.concatenate(([0], np.cumsum(sizes)[:-1]))
    local[order] = np.arange(dim) - np.repeat(starts, sizes)

    # nonzero entries (row, col); distinct terms never collide within a row
    row_list, col_list = [], []
    for t in terms:
        tgt = exps + t
        ok = np.all(tgt < q, axis=1)
        row_list.append(np.nonzero(ok)[0])
        col_list.append(_ravel(tgt[ok], q))
    rows = np.concatenate(row_list)
    cols = np.concatenate(col_list)
    if rows.size == 0:
        return 0
    rgroup = group[rows]
    eorder = np.argsort(rgroup, kind="stable")
    rows, cols, rgroup = rows[eorder], cols[eorder], rgroup[eorder]
    bounds = np.searchsorted(rgroup, np.arange(ngroups + 1))

    total = 0
    for g in range(ngroups):
        lo, hi = bounds[g], bounds[g + 1]
        if lo == hi:
            continue
        tg = target_group[g]
        nr, nc = int(sizes[g]), int(sizes[tg])
        if nr == 1 or nc == 1:
            total += 1
            continue
        if nr * nc > block_limit:
            raise SizeLimitError(f"dense block {nr}x{nc} exceeds block limit {block_limit}")
        nwords = (nc + 63) // 64
        m = np.zeros((nr, nwords), dtype=np.uint64)
        lr = local[rows[lo:hi]]
        lc = local[cols[lo:hi]]
        np.bitwise_or.at(m, (lr, lc >> 6), np.left_shift(np.uint64(1), (lc & 63).astype(np.uint64)))
        total += kernels.gf2_rank(m, nc, overwrite=True, backend=backend)
    return total


def colength(f: Poly2, spec: QuotientSpec, *, size_limit: int = DEFAULT_SIZE_LIMIT,
             graded: bool = True, backend: str | None = None) -> int:
    """dim_F F[x]/(f, x_1^q, ..., x_r^q)."""
    if spec.r != f.r:
        raise ValueError(f"spec has r={spec.r} but polynomial has {f.r} variables")
    if spec.dim > size_limit:
        raise SizeLimitError(f"q^r = {spec.dim} exceeds size limit {size_limit}")
    return spec.dim - multiplication_rank(f, spec.q, graded=graded, backend=backend)
