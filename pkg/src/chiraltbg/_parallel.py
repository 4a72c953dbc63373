"""Thread-pool map capped by the ``TBG_THREADS`` environment variable."""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor


def worker_count() -> int:
    try:
        n = int(os.environ.get("TBG_THREADS", "1"))
    except ValueError:
        n = 1
    return max(1, n)


def pmap(fn, items) -> list:
    """``[fn(x) for x in items]``, threaded when more than one worker is allowed (order kept)."""
    items = list(items)
    n = min(worker_count(), len(items))
    if n <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))
