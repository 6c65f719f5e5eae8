"""Counter-based random streams keyed by (seed, index).

Each sample index gets its own stream, so any sample can be regenerated
without replaying the ones before it and shards can run in any order.
Keys come from a splitmix64 avalanche of the seed, the index and a stream
tag; draw ``k`` of a stream is the same finalizer applied to
``key + (k + 1) * golden``.  Everything is vectorized over indices.
"""

from __future__ import annotations

import numpy as np

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)
_TWO53 = float(2**53)

STREAM_NORMAL = 0
STREAM_UNIFORM = 1


def mix64(x: np.ndarray) -> np.ndarray:
    """splitmix64 finalizer (wrapping uint64 arithmetic)."""
    x = np.asarray(x, dtype=np.uint64)
    with np.errstate(over="ignore"):
        x = (x ^ (x >> np.uint64(30))) * _M1
        x = (x ^ (x >> np.uint64(27))) * _M2
        return x ^ (x >> np.uint64(31))


def stream_keys(seed: int, indices, stream: int) -> np.ndarray:
    idx = np.asarray(indices, dtype=np.uint64)
    base = mix64(np.array([seed & 0xFFFFFFFFFFFFFFFF], dtype=np.uint64) ^ _GOLDEN)
    with np.errstate(over="ignore"):
        k = mix64(base ^ mix64(idx + _GOLDEN))
        return mix64(k + np.uint64(stream) * _M2)


def raw64(keys: np.ndarray, counters: np.ndarray) -> np.ndarray:
    keys = np.asarray(keys, dtype=np.uint64)
    counters = np.asarray(counters, dtype=np.uint64)
    with np.errstate(over="ignore"):
        return mix64(keys + (counters + np.uint64(1)) * _GOLDEN)


def uniforms(seed: int, indices, count: int, stream: int = STREAM_UNIFORM) -> np.ndarray:
    """Array of shape (len(indices), count) with doubles in [0, 1)."""
    keys = stream_keys(seed, indices, stream)[:, None]
    ctr = np.arange(count, dtype=np.uint64)[None, :]
    bits = raw64(keys, ctr) >> np.uint64(11)
    return bits.astype(np.float64) / _TWO53


def normals(seed: int, indices, count: int) -> np.ndarray:
    """Standard normal variates via the Marsaglia polar method.

    Candidate pair ``j`` of an index uses counters ``2j`` and ``2j + 1``; the
    first accepted pairs are kept, so results do not depend on batching.
    """
    indices = np.atleast_1d(np.asarray(indices, dtype=np.uint64))
    rows = indices.size
    need = (count + 1) // 2
    keys = stream_keys(seed, indices, STREAM_NORMAL)[:, None]
    width = max(4, 2 * need + 4)
    while True:
        j = np.arange(width, dtype=np.uint64)[None, :]
        u1 = (raw64(keys, 2 * j) >> np.uint64(11)).astype(np.float64) / _TWO53
        u2 = (raw64(keys, 2 * j + np.uint64(1)) >> np.uint64(11)).astype(np.float64) / _TWO53
        v1 = 2.0 * u1 - 1.0
        v2 = 2.0 * u2 - 1.0
        s = v1 * v1 + v2 * v2
        ok = (s > 0.0) & (s < 1.0)
        if np.all(ok.sum(axis=1) >= need):
            break
        width *= 2
    take = ok & (np.cumsum(ok, axis=1) <= need)
    safe = np.where(ok, s, 0.5)
    factor = np.sqrt(-2.0 * np.log(safe) / safe)
    g1 = (v1 * factor)[take].reshape(rows, need)
    g2 = (v2 * factor)[take].reshape(rows, need)
    out = np.empty((rows, 2 * need))
    out[:, 0::2] = g1
    out[:, 1::2] = g2
    return out[:, :count]
