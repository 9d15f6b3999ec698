"""Persistent store of computed Hilbert-Kunz values.

Records are plain text lines ``poly_key,i,n,value``.  Saving rewrites the
whole file through a temporary file and an atomic rename, merging with what
is already on disk.  Two different values for one key is a hard error.
"""

from __future__ import annotations

import logging
import os
import tempfile
import threading
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

log = logging.getLogger(__name__)

RECORD_FILE = "hk_records.csv"


class CacheConflictError(RuntimeError):
    pass


@dataclass(frozen=True)
class HKRecord:
    poly_key: str
    i: int
    n: int
    value: int

    @property
    def key(self) -> tuple[str, int, int]:
        return (self.poly_key, self.i, self.n)

    def to_line(self) -> str:
        return f"{self.poly_key},{self.i},{self.n},{self.value}"

    @classmethod
    def from_line(cls, line: str) -> "HKRecord":
        parts = line.strip().split(",")
        if len(parts) != 4 or not parts[0]:
            raise ValueError(f"expected 4 comma-separated fields: {line!r}")
        i, n, value = (int(p) for p in parts[1:])
        if i < 0 or n < 0 or value < 0:
            raise ValueError(f"negative field in {line!r}")
        return cls(parts[0], i, n, value)


def parse_records(lines: Iterable[str], source: str = "<records>") -> tuple[list[HKRecord], list[str]]:
    """Parse record lines; returns (records, error messages for skipped lines)."""
    records, errors = [], []
    for lineno, line in enumerate(lines, 1):
        if not line.strip() or line.startswith("#"):
            continue
        try:
            records.append(HKRecord.from_line(line))
        except ValueError as exc:
            msg = f"{source}:{lineno}: skipping corrupt record ({exc})"
            log.warning(msg)
            errors.append(msg)
    return records, errors


def merge(table: dict, records: Iterable[HKRecord]) -> int:
    """Merge records into ``table``; returns the number of new keys."""
    added = 0
    for rec in records:
        old = table.get(rec.key)
        if old is None:
            table[rec.key] = rec.value
            added += 1
        elif old != rec.value:
            raise CacheConflictError(
                f"conflicting values for {rec.key}: {old} vs {rec.value}")
    return added


def load_file(path: Path) -> tuple[list[HKRecord], list[str]]:
    path = Path(path)
    if not path.exists():
        return [], []
    with open(path, encoding="utf-8") as fh:
        return parse_records(fh, str(path))


def store_file(path: Path, records: Iterable[HKRecord]) -> int:
    """Merge ``records`` into the file at ``path`` atomically; returns the total record count."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    table: dict = {}
    existing, _ = load_file(path)
    merge(table, existing)
    merge(table, records)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".hk_records.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            for (key, i, n), value in sorted(table.items()):
                fh.write(HKRecord(key, i, n, value).to_line() + "\n")
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return len(table)


class HKCache:
    """In-memory table of e_n(f^i), optionally backed by a record file in ``directory``."""

    def __init__(self, directory: str | os.PathLike | None = None):
        self.directory = Path(directory) if directory is not None else None
        self._table: dict[tuple[str, int, int], int] = {}
        self._pending: list[HKRecord] = []
        self._lock = threading.Lock()
        self.errors: list[str] = []
        if self.path is not None:
            records, self.errors = load_file(self.path)
            merge(self._table, records)

    @property
    def path(self) -> Path | None:
        return self.directory / RECORD_FILE if self.directory is not None else None

    def __len__(self) -> int:
        return len(self._table)

    def get(self, poly_key: str, i: int, n: int) -> int | None:
        return self._table.get((poly_key, i, n))

    def put(self, poly_key: str, i: int, n: int, value: int) -> None:
        rec = HKRecord(poly_key, i, n, value)
        with self._lock:
            if merge(self._table, [rec]):
                self._pending.append(rec)

    def records(self) -> list[HKRecord]:
        return [HKRecord(k, i, n, v) for (k, i, n), v in sorted(self._table.items())]

    def flush(self) -> None:
        if self.path is None:
            return
        with self._lock:
            if self._pending:
                store_file(self.path, self._pending)
                self._pending = []
