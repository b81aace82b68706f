"""Deterministic shard execution for exhaustive sweeps.

Shards are processed in submission order and combined by the caller with
a commutative reduction (integer sums), so the worker count never changes
a result.
"""

from __future__ import annotations


def map_shards(fn, shard_args, threads: int) -> list:
    if threads <= 1 or len(shard_args) <= 1:
        return [fn(a) for a in shard_args]
    import multiprocessing

    with multiprocessing.Pool(min(threads, len(shard_args))) as pool:
        return pool.map(fn, shard_args)
