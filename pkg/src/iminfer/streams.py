"""Deterministic, schedule-independent random streams.

All randomness in the package flows through counter-based Philox streams.
Stream ``i`` under a seed is fully determined by ``(seed, i)``, so any work
partitioned across threads or processes by stream index reproduces the same
numbers regardless of worker count or scheduling order.
"""

from __future__ import annotations

import os

import numpy as np

DEFAULT_SEED = 20160518


def stream(seed: int, index: int = 0) -> np.random.Generator:
    """Generator for stream ``index`` derived from ``seed``.

    Distinct indices give non-overlapping Philox counter ranges (jumps of
    2**128 states), so streams never collide.
    """
    if index < 0:
        raise ValueError("stream index must be nonnegative")
    bits = np.random.Philox(key=int(seed) & (2**64 - 1))
    if index:
        bits = bits.jumped(int(index))
    return np.random.Generator(bits)


def worker_count() -> int:
    """Worker cap from the IM_INFER_THREADS environment variable.

    Affects speed only; results are merged by stream index and therefore
    identical for every value.
    """
    raw = os.environ.get("IM_INFER_THREADS", "").strip()
    if not raw:
        return 1
    try:
        n = int(raw)
    except ValueError:
        return 1
    return max(1, n)
