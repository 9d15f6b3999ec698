"""Pure-Python GF(2) rank, used when the compiled extension is unavailable."""

from __future__ import annotations

import numpy as np


def rows_from_packed(m: np.ndarray) -> list[int]:
    """Convert a (rows, words) uint64 array into one Python int per row."""
    m = np.ascontiguousarray(m, dtype="<u8")
    return [int.from_bytes(row.tobytes(), "little") for row in m]


def rank_rows(rows) -> int:
    """Rank of rows given as int bitsets, by reduction against leading-bit pivots."""
    pivots: dict[int, int] = {}
    for row in rows:
        while row:
            lead = row.bit_length() - 1
            p = pivots.get(lead)
            if p is None:
                pivots[lead] = row
                break
            row ^= p
    return len(pivots)


def rank_packed(m: np.ndarray, ncols: int) -> int:
    if ncols > m.shape[1] * 64:
        raise ValueError("ncols exceeds packed width")
    mask = (1 << ncols) - 1
    return rank_rows(r & mask for r in rows_from_packed(m))
