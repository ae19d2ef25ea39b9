"""Ordered thread-pool map capped by the QHA_THREADS environment variable."""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor


def max_workers() -> int:
    raw = os.environ.get("QHA_THREADS")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            raise ValueError(f"QHA_THREADS must be an integer, got {raw!r}") from None
    return min(8, os.cpu_count() or 1)


def pmap(func, items) -> list:
    """``[func(x) for x in items]`` evaluated on a pool; output keeps input order."""
    items = list(items)
    workers = min(max_workers(), len(items))
    if workers <= 1:
        return [func(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, items))
