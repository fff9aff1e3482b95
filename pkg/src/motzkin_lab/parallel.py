"""Worker-count policy shared by the report and sampling code."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

ENV_THREADS = "MOTZKIN_LAB_THREADS"


def worker_count(requested: int | None = None) -> int:
    """Number of worker threads, capped by ``MOTZKIN_LAB_THREADS`` when set."""
    n = requested if requested is not None else (os.cpu_count() or 1)
    cap = os.environ.get(ENV_THREADS)
    if cap:
        try:
            n = min(n, int(cap))
        except ValueError:
            raise ValueError(f"{ENV_THREADS} must be an integer, got {cap!r}") from None
    return max(1, n)


def pmap(fn, items, workers: int | None = None):
    """Order-preserving map over threads (sequential when one worker)."""
    items = list(items)
    n = worker_count(workers)
    if n == 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as ex:
        return list(ex.map(fn, items))
