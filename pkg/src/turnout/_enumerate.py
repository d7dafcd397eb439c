"""Chunked enumeration of all subsets of a small index set."""

from __future__ import annotations

from typing import Iterator

import numpy as np

CHUNK_BITS = 14


def subset_chunks(k: int) -> Iterator[tuple[np.ndarray, np.ndarray]]:
    """Yield ``(ids, masks)`` covering every subset of ``range(k)``.

    ``ids`` are subset codes (bit ``i`` set iff ``i`` is a member) in increasing
    order; ``masks`` is the matching ``(len(ids), k)`` boolean membership matrix.
    """
    total = 1 << k
    step = 1 << min(k, CHUNK_BITS)
    bits = np.arange(k, dtype=np.int64)
    for start in range(0, total, step):
        ids = np.arange(start, min(start + step, total), dtype=np.int64)
        yield ids, ((ids[:, None] >> bits) & 1).astype(bool)


def members(code: int) -> tuple[int, ...]:
    return tuple(i for i in range(code.bit_length()) if code >> i & 1)
