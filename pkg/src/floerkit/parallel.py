"""Deterministic worker-pool helpers.

Work is split into an ordered chunk list; each worker returns a locally
sorted result and the merge is a sorted union, so output never depends on
the worker count.  Worker count 1 bypasses multiprocessing entirely.
"""

from __future__ import annotations

import os
from multiprocessing import get_context


def effective_workers(requested=None):
    """Resolve the worker count: explicit flag wins, else the
    FLOERKIT_THREADS environment variable, else 1."""
    if requested is not None and requested > 0:
        return requested
    env = os.environ.get("FLOERKIT_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return 1


def run_chunks(fn, chunks, workers):
    """Apply fn to each chunk, preserving chunk order in the result list."""
    chunks = list(chunks)
    if workers <= 1 or len(chunks) <= 1:
        return [fn(c) for c in chunks]
    ctx = get_context("fork")
    with ctx.Pool(min(workers, len(chunks))) as pool:
        return pool.map(fn, chunks)


def merge_sorted_sets(parts):
    out = set()
    for p in parts:
        out.update(p)
    return tuple(sorted(out))
