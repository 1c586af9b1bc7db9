"""Cheap exact completion tests for the common small patterns.

Each route answers "does adding {u,v} close a copy of this member through
the new edge" with a handful of bitmask operations. Routes only ever claim
completions that exist, so they are safe skips in front of the exhaustive
anchored search; for triangle, 4-cycle, and star members they are exact.
"""

from __future__ import annotations

from typing import Callable, Optional, Sequence

from ..embed import Family, clique, cycle, isomorphic, star


def make_fast_route(rows: Sequence[int], fam: Family) -> Optional[Callable[[int, int], bool]]:
    """Bitmask completion test over fixed adjacency rows, or None.

    The caller scans pairs u-major, so the 2-walk mask for the 4-cycle route
    is cached per u.
    """
    want_triangle = False
    want_c4 = False
    star_needs: list[int] = []
    for f in fam:
        if f.n == 3 and f.graph.edge_count == 3:
            want_triangle = True
        elif isomorphic(f.graph, cycle(4).graph):
            want_c4 = True
        elif f.graph.edge_count == f.n - 1 and max(
            f.graph.degree(v) for v in range(f.n)
        ) == f.n - 1:
            star_needs.append(f.n - 1)  # K_{1,j}: center degree j
    if not (want_triangle or want_c4 or star_needs):
        return None
    min_star = min(star_needs) if star_needs else None
    cache_u = -1
    cache_w2 = 0

    def route(u: int, v: int) -> bool:
        nonlocal cache_u, cache_w2
        ru, rv = rows[u], rows[v]
        if want_triangle and ru & rv:
            return True
        if min_star is not None:
            # u or v becomes a star center using the new edge plus old ones
            if ru.bit_count() >= min_star - 1 or rv.bit_count() >= min_star - 1:
                return True
        if want_c4:
            if cache_u != u:
                w2 = 0
                m = ru
                while m:
                    low = m & -m
                    w2 |= rows[low.bit_length() - 1]
                    m ^= low
                cache_u, cache_w2 = u, w2 & ~(1 << u)
            # u-a-b-v path: a in N(u) (a != v since {u,v} missing), b != u
            if rv & cache_w2:
                return True
        return False

    return route
