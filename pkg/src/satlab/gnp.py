"""Seeded G(n,p) with lazy, order-independent pair exposure.

Every pair {u,v} owns one deterministic 64-bit word derived from
(seed, n, min(u,v), max(u,v)). Presence is `word < threshold(p)`, so the
order in which pairs are exposed can never change an outcome, and bulk
exposure (numpy) agrees bit-for-bit with single-pair exposure.

Round splitting: a pair may instead be exposed as k independent
Bernoulli(q) indicators with 1-(1-q)^k = p. The word's unit interval is
partitioned so that the all-zero indicator pattern occupies exactly
[threshold(p), 2^64); hence OR(indicators) == plain presence, exactly.
"""

from __future__ import annotations

import math
import threading
from bisect import bisect_right
from typing import Sequence

import numpy as np

from ._bits import (
    U64,
    bool_row_to_mask,
    mask_of,
    prob_threshold,
    stream_key,
    word_at,
    words_at,
)
from .errors import CouplingViolation, ParameterError
from .graphs import Graph

_ROUNDS_TOL = 1e-9
_MAX_ROUNDS = 16


def _round_boundaries(p: float, k: int, q: float) -> list[int]:
    """Cumulative 2^64-scaled thresholds for the 2^k - 1 nonzero patterns.

    Patterns are ordered by integer value; the last boundary is pinned to
    threshold(p) so that OR(pattern bits) == (word < threshold(p)).
    """
    log1q = math.log1p(-q)
    bounds = []
    acc = 0.0
    for pattern in range(1, 1 << k):
        ones = pattern.bit_count()
        acc += math.exp(ones * math.log(q) + (k - ones) * log1q)
        bounds.append(int(acc * 2.0**64))
    bounds[-1] = prob_threshold(p)
    return bounds


class DeferredGnp:
    """A G(n,p) instance whose pairs are exposed lazily.

    Concurrent exposure of distinct pairs is allowed; a lock serializes
    all mutation, which covers the same-pair requirement as well.
    """

    def __init__(self, n: int, p: float, seed: int):
        if n < 0:
            raise ParameterError("n must be nonnegative")
        if not 0.0 <= p <= 1.0:
            raise ParameterError(f"edge probability {p} outside [0, 1]")
        self.n = n
        self.p = p
        self.seed = seed
        self._key = stream_key(seed, n)
        self._thr = prob_threshold(p)
        self._value = [0] * n    # bit u of row v: pair present
        self._exposed = [0] * n  # bit u of row v: pair exposed
        self._bounds_cache: dict[tuple[int, float], list[int]] = {}
        self._lock = threading.Lock()

    # -- pair words ---------------------------------------------------------

    def _pair_word(self, u: int, v: int) -> int:
        a, b = (u, v) if u < v else (v, u)
        return word_at(self._key, a * self.n + b)

    def _check_pair(self, u: int, v: int) -> None:
        if u == v:
            raise ParameterError(f"self-loop pair ({u},{v})")
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise ParameterError(f"pair ({u},{v}) outside 0..{self.n - 1}")

    # -- exposure -----------------------------------------------------------

    def is_exposed(self, u: int, v: int) -> bool:
        self._check_pair(u, v)
        return bool(self._exposed[u] & (1 << v))

    def expose_pair(self, u: int, v: int) -> bool:
        """Expose (and cache) one pair; idempotent."""
        self._check_pair(u, v)
        with self._lock:
            bit_v, bit_u = 1 << v, 1 << u
            if self._exposed[u] & bit_v:
                return bool(self._value[u] & bit_v)
            present = self._pair_word(u, v) < self._thr
            self._exposed[u] |= bit_v
            self._exposed[v] |= bit_u
            if present:
                self._value[u] |= bit_v
                self._value[v] |= bit_u
            return present

    def expose_pair_rounds(self, u: int, v: int, k: int, q: float) -> list[bool]:
        """Expose one pair as k independent Bernoulli(q) round indicators.

        The pair's recorded presence is the OR of the indicators, which by
        construction equals what expose_pair would have returned.
        """
        self._check_pair(u, v)
        if not (1 <= k <= _MAX_ROUNDS):
            raise ParameterError(f"round count {k} outside 1..{_MAX_ROUNDS}")
        if not 0.0 < q < 1.0:
            raise ParameterError(f"per-round probability {q} outside (0, 1)")
        if abs(1.0 - (1.0 - q) ** k - self.p) > _ROUNDS_TOL:
            raise ParameterError(
                f"rounds ({k}, {q}) inconsistent with p={self.p}: "
                f"1-(1-q)^k = {1.0 - (1.0 - q) ** k}"
            )
        with self._lock:
            bit_v, bit_u = 1 << v, 1 << u
            if self._exposed[u] & bit_v:
                raise CouplingViolation(
                    f"pair ({u},{v}) already exposed; rounds would redefine it"
                )
            word = self._pair_word(u, v)
            if word >= self._thr:
                pattern = 0
            else:
                key = (k, q)
                bounds = self._bounds_cache.get(key)
                if bounds is None:
                    bounds = self._bounds_cache[key] = _round_boundaries(self.p, k, q)
                pattern = bisect_right(bounds, word) + 1
            self._exposed[u] |= bit_v
            self._exposed[v] |= bit_u
            if pattern:
                self._value[u] |= bit_v
                self._value[v] |= bit_u
            return [bool(pattern >> i & 1) for i in range(k)]

    # -- bulk exposure ------------------------------------------------------

    def _fresh_row(self, v: int, us: np.ndarray) -> int:
        """Presence bitmask of pairs {v,u} over a sorted vertex array us."""
        n = np.uint64(self.n)
        u_arr = us.astype(np.uint64)
        vv = np.uint64(v)
        lo = np.minimum(u_arr, vv)
        hi = np.maximum(u_arr, vv)
        words = words_at(self._key, lo * n + hi)
        if self._thr > U64:
            present = np.ones(len(us), dtype=bool)
        else:
            present = words < np.uint64(self._thr)
        row = np.zeros(self.n, dtype=bool)
        row[us] = present
        row[v] = False
        return bool_row_to_mask(row)

    def expose_block(self, a: Sequence[int], b: Sequence[int] | None = None) -> None:
        """Expose all pairs within a (b omitted) or all pairs between a and b.

        Already-exposed pairs keep their recorded values. The pair function
        is symmetric, so each vertex's row is computed independently.
        """
        avs = sorted(set(a))
        if b is None:
            sides = [(avs, avs)]
        else:
            bvs = sorted(set(b))
            if set(avs) & set(bvs):
                raise ParameterError("expose_block between overlapping sets")
            sides = [(avs, bvs), (bvs, avs)]
        with self._lock:
            for mine, theirs in sides:
                arr = np.array(theirs, dtype=np.int64)
                their_mask = mask_of(theirs)
                for v in mine:
                    scope = their_mask & ~(1 << v)
                    todo = scope & ~self._exposed[v]
                    if not todo:
                        continue
                    fresh = self._fresh_row(v, arr)
                    self._value[v] |= fresh & todo
                    self._exposed[v] |= scope

    def expose_all(self) -> None:
        self.expose_block(range(self.n))

    # -- views --------------------------------------------------------------

    def exposed_value_mask(self, v: int, within: int) -> int:
        """Bitmask of exposed-present neighbors of v inside `within`."""
        if (self._exposed[v] & within) != within:
            raise CouplingViolation(f"vertex {v}: some pairs in scope are unexposed")
        return self._value[v] & within

    def snapshot_graph(self) -> Graph:
        """Graph of currently exposed present pairs."""
        return Graph(self.n, list(self._value))

    def to_graph(self) -> Graph:
        """Expose everything and return the full instance."""
        self.expose_all()
        return Graph(self.n, list(self._value))


def gen_gnp(n: int, p: float, seed: int) -> Graph:
    """Seeded binomial random graph; identical (n,p,seed) => identical edges."""
    return DeferredGnp(n, p, seed).to_graph()


def split_rounds_probability(p: float, k: int) -> float:
    """Per-round probability q with 1-(1-q)^k = p."""
    if not 0.0 < p < 1.0:
        raise ParameterError("round splitting needs 0 < p < 1")
    if k < 1:
        raise ParameterError("round count must be >= 1")
    return 1.0 - (1.0 - p) ** (1.0 / k)
