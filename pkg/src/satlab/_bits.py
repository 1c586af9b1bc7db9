"""Bitset and deterministic-hash helpers.

Graphs store one Python int per vertex as an adjacency bitmask; the helpers
here convert between those ints and numpy buffers, and provide the keyed
64-bit mixer that drives all seeded randomness in the library.
"""

from __future__ import annotations

from typing import Iterable, Iterator

import numpy as np

U64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB
_SCOPE = 0xD1342543DE82EF95


def mix64(x: int) -> int:
    """splitmix64 finalizer on a 64-bit word."""
    z = x & U64
    z = ((z ^ (z >> 30)) * _MIX1) & U64
    z = ((z ^ (z >> 27)) * _MIX2) & U64
    return z ^ (z >> 31)


def stream_key(seed: int, scope: int) -> int:
    """Derive the per-instance key for a (seed, scope) pair."""
    return mix64(mix64(seed + _GOLDEN) ^ ((scope * _SCOPE) & U64))


def word_at(key: int, index: int) -> int:
    """Deterministic 64-bit word at a counter position; order-free."""
    return mix64((key + ((index + 1) * _GOLDEN)) & U64)


def words_at(key: int, indices: np.ndarray) -> np.ndarray:
    """Vectorised word_at over a uint64 index array."""
    z = (indices + np.uint64(1)) * np.uint64(_GOLDEN) + np.uint64(key)
    z ^= z >> np.uint64(30)
    z *= np.uint64(_MIX1)
    z ^= z >> np.uint64(27)
    z *= np.uint64(_MIX2)
    return z ^ (z >> np.uint64(31))


def prob_threshold(p: float) -> int:
    """Integer threshold t such that (word < t) has probability p.

    Multiplying a float by 2**64 is exact, so p=0 and p=1 are exact.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"probability {p} outside [0, 1]")
    return int(p * 2.0**64)


def bits_of(mask: int) -> Iterator[int]:
    """Yield set-bit positions of mask in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(members: Iterable[int]) -> int:
    m = 0
    for v in members:
        m |= 1 << v
    return m


def mask_to_numpy(mask: int, n: int) -> np.ndarray:
    """Bitmask -> uint64 array of ceil(n/64) words (little endian)."""
    nwords = (n + 63) // 64
    return np.frombuffer(mask.to_bytes(nwords * 8, "little"), dtype=np.uint64)


def numpy_to_mask(words: np.ndarray) -> int:
    return int.from_bytes(words.tobytes(), "little")


def bool_row_to_mask(row: np.ndarray) -> int:
    """Boolean vector (index = vertex) -> bitmask int."""
    packed = np.packbits(row, bitorder="little")
    return int.from_bytes(packed.tobytes(), "little")
