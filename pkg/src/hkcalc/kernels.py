"""Backend selection for the GF(2) rank kernel.

The compiled extension is used when it imports; set ``HKCALC_PURE_PYTHON=1``
to force the pure-Python path.
"""

from __future__ import annotations

import os

import numpy as np

from . import _gf2py

try:
    from . import _gf2ext
except ImportError:  # extension not built
    _gf2ext = None

if _gf2ext is not None and os.environ.get("HKCALC_PURE_PYTHON", "") not in ("1", "true", "yes"):
    BACKEND = "cython"
else:
    BACKEND = "python"


def has_extension() -> bool:
    return _gf2ext is not None


def rank_python(m: np.ndarray, ncols: int) -> int:
    return _gf2py.rank_packed(m, ncols)


def rank_compiled(m: np.ndarray, ncols: int, overwrite: bool = False) -> int:
    if _gf2ext is None:
        raise RuntimeError("compiled extension hkcalc._gf2ext is not built")
    buf = np.ascontiguousarray(m, dtype=np.uint64)
    if buf is m and not overwrite:
        buf = buf.copy()
    return int(_gf2ext.rank_packed(buf, ncols))


def gf2_rank(m: np.ndarray, ncols: int, overwrite: bool = False, backend: str | None = None) -> int:
    """Rank over GF(2) of a bit-packed uint64 matrix with ``ncols`` meaningful columns."""
    backend = backend or BACKEND
    if backend == "cython":
        return rank_compiled(m, ncols, overwrite=overwrite)
    if backend == "python":
        return rank_python(m, ncols)
    raise ValueError(f"unknown backend {backend!r}")


def pack_rows(dense: np.ndarray) -> np.ndarray:
    """Pack a 0/1 matrix into uint64 words, bit c of a row at word c>>6, position c&63."""
    dense = np.asarray(dense, dtype=np.uint8) & 1
    nrows, ncols = dense.shape
    nwords = max(1, (ncols + 63) // 64)
    padded = np.zeros((nrows, nwords * 64), dtype=np.uint8)
    padded[:, :ncols] = dense
    packed = np.packbits(padded, axis=1, bitorder="little")
    return packed.view("<u8").astype(np.uint64).reshape(nrows, nwords)
