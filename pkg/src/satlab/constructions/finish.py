"""Shared finishing pass: count uncompleted pairs, patch, verify.

The two-pass scheme reproduces patch_up's lexicographic output exactly:
pairs completed by the pre-patch graph can never be added by the naive
pass (completion is monotone under edge additions), so pass B only has to
walk the genuinely uncompleted pairs against the growing graph.
"""

from __future__ import annotations

import time
from typing import Callable, Optional

from .._bits import bits_of
from ..embed import Family, copy_through
from ..graphs import Graph, MutableGraph
from ..saturation import is_saturated, sampled_saturation_check
from .params import ConstructionReport


def count_and_patch(
    g: Graph,
    h: Graph,
    fam: Family,
    report: ConstructionReport,
    fast_route: Optional[Callable[[int, int], bool]] = None,
    class_of: Optional[Callable[[int, int], str]] = None,
) -> Graph:
    """Count uncompleted missing pairs against h, then patch lexicographically.

    fast_route is a sound sufficient completion test (never claims a
    completion that does not exist); pairs it accepts are skipped without
    an exact search. class_of labels uncompleted pairs for the report.
    """
    scratch = MutableGraph.from_graph(h)
    uncompleted: list[tuple[int, int]] = []
    for u in range(g.n):
        missing = (g.row(u) & ~h.row(u)) >> (u + 1)
        for off in bits_of(missing):
            v = off + u + 1
            if fast_route is not None and fast_route(u, v):
                continue
            scratch.add_edge(u, v)
            hit = copy_through(scratch, u, v, fam)
            scratch.remove_edge(u, v)
            if not hit:
                uncompleted.append((u, v))
                if class_of is not None:
                    key = class_of(u, v)
                    report.uncompleted_by_class[key] = (
                        report.uncompleted_by_class.get(key, 0) + 1
                    )
    report.uncompleted_before_patch = len(uncompleted)

    work = MutableGraph.from_graph(h)
    added = 0
    for u, v in uncompleted:
        work.add_edge(u, v)
        if copy_through(work, u, v, fam):
            work.remove_edge(u, v)
        else:
            added += 1
    report.patch_added = added
    return work.freeze()


def verify_and_stamp(
    g: Graph,
    final: Graph,
    fam: Family,
    report: ConstructionReport,
    guard: int,
    samples: int,
    seed: int,
) -> None:
    if g.n <= guard:
        verdict = is_saturated(g, final, fam)
        report.verified = "true" if verdict.saturated else "false"
        if not verdict.saturated:
            report.warnings.append(f"saturation violated: {verdict.first_violation}")
    else:
        verdict = sampled_saturation_check(g, final, fam, samples, seed)
        report.verified = "sampled" if verdict.saturated else "sampled-fail"
        if not verdict.saturated:
            report.warnings.append(f"sampled violation: {verdict.first_violation}")


def finalize(
    g: Graph,
    h: Graph,
    fam: Family,
    report: ConstructionReport,
    t0: float,
    guard: int,
    samples: int,
    fast_route=None,
    class_of=None,
) -> Graph:
    """count_and_patch + verification + accounting, in one call."""
    report.edges_before_patch = h.edge_count
    final = count_and_patch(g, h, fam, report, fast_route, class_of)
    report.edges_final = final.edge_count
    verify_and_stamp(g, final, fam, report, guard, samples, report.seed)
    report.runtime_ms = (time.perf_counter() - t0) * 1000.0
    report.check_accounting()
    return final
