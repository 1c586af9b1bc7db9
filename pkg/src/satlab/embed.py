"""Small forbidden patterns and subgraph containment.

Containment is subgraph containment (not induced) throughout. The search
is a backtracking embedder over bitset candidate masks: pattern vertices
are ordered connectivity-first and degree-descending, candidates are the
intersection of already-matched neighbors' adjacency rows, and hosts are
pruned by degree. The anchored variant pins a host edge to a pattern edge,
which is what every construction's completion check runs on.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Optional, Sequence

from ._bits import bits_of
from .errors import ParameterError, PatternGuardError
from .graphs import Graph

PATTERN_GUARD = 12


@dataclass(frozen=True)
class Pattern:
    """A small forbidden graph with a canonical name.

    No isolated vertices; every component carries at least one edge.
    """

    graph: Graph
    name: str

    def __post_init__(self):
        g = self.graph
        if g.n > PATTERN_GUARD:
            raise PatternGuardError(f"pattern {self.name}: {g.n} vertices > {PATTERN_GUARD}")
        if g.n == 0 or g.edge_count == 0:
            raise ParameterError(f"pattern {self.name}: needs at least one edge")
        for v in range(g.n):
            if g.degree(v) == 0:
                raise ParameterError(f"pattern {self.name}: isolated vertex {v}")

    @property
    def n(self) -> int:
        return self.graph.n

    def __repr__(self) -> str:
        return f"Pattern({self.name})"


# -- constructors ------------------------------------------------------------


def clique(j: int) -> Pattern:
    if j < 2:
        raise ParameterError("clique needs j >= 2")
    return Pattern(Graph.complete(j), f"K{j}")


def cycle(j: int) -> Pattern:
    if j < 3:
        raise ParameterError("cycle needs j >= 3")
    return Pattern(Graph.from_edges(j, [(i, (i + 1) % j) for i in range(j)]), f"C{j}")


def path(j: int) -> Pattern:
    """Path on j vertices (j-1 edges)."""
    if j < 2:
        raise ParameterError("path needs j >= 2 vertices")
    return Pattern(Graph.from_edges(j, [(i, i + 1) for i in range(j - 1)]), f"P{j}")


def star(j: int) -> Pattern:
    """Star with j leaves, center 0."""
    if j < 1:
        raise ParameterError("star needs j >= 1 leaves")
    return Pattern(Graph.from_edges(j + 1, [(0, i) for i in range(1, j + 1)]), f"S{j}")


def complete_multipartite(sizes: Sequence[int]) -> Pattern:
    if len(sizes) < 2 or any(s < 1 for s in sizes):
        raise ParameterError("complete multipartite needs >= 2 parts of size >= 1")
    n = sum(sizes)
    part = []
    for i, s in enumerate(sizes):
        part.extend([i] * s)
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if part[u] != part[v]]
    return Pattern(Graph.from_edges(n, edges), "M:" + ",".join(map(str, sizes)))


def pattern_from_graph(g: Graph, name: str) -> Pattern:
    return Pattern(g, name)


def strip_isolated(g: Graph) -> Graph:
    keep = [v for v in range(g.n) if g.degree(v) > 0]
    sub, _ = g.induced(keep)
    return sub


# -- isomorphism (small graphs only) -----------------------------------------


def _canon_key(g: Graph) -> tuple:
    return (g.n, g.edge_count, tuple(sorted(g.degree(v) for v in range(g.n))))


def isomorphic(a: Graph, b: Graph) -> bool:
    """Exact isomorphism test for pattern-sized graphs."""
    if _canon_key(a) != _canon_key(b):
        return False
    hit = _embed(b, a, require_all_edges=True)
    return hit is not None


@dataclass(frozen=True)
class Family:
    """A nonempty family of patterns with no duplicate isomorphic members."""

    members: tuple[Pattern, ...]

    def __post_init__(self):
        if not self.members:
            raise ParameterError("family must be nonempty")
        for i, a in enumerate(self.members):
            for b in self.members[i + 1 :]:
                if isomorphic(a.graph, b.graph):
                    raise ParameterError(f"duplicate isomorphic members {a.name}, {b.name}")

    @classmethod
    def of(cls, *patterns: Pattern) -> "Family":
        """Build a family, silently dropping isomorphic duplicates."""
        kept: list[Pattern] = []
        for p in patterns:
            if not any(isomorphic(p.graph, q.graph) for q in kept):
                kept.append(p)
        return cls(tuple(kept))

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)

    @property
    def name(self) -> str:
        return "{" + ",".join(p.name for p in self.members) + "}"


# -- embedding search ---------------------------------------------------------
#
# Hot-path design: per pattern we compile "plans" (a vertex placement order
# plus, for each placed vertex, the positions of its already-placed
# neighbors). Anchored plans pin a pattern edge to the probed host edge and
# are deduplicated by ordered-edge orbits under the pattern's automorphisms,
# which prunes e.g. a cycle's 2m anchorings down to one.


def _search_order(f: Graph, seeds: Sequence[int]) -> list[int]:
    """Pattern vertices: seeds first, then connectivity-first, degree-descending.

    Ties prefer vertices attached to the earliest-placed neighbor, which
    grows the frontier from both anchor endpoints instead of one.
    """
    order = list(seeds)
    pos = {q: i for i, q in enumerate(order)}
    while len(order) < f.n:
        best, best_key = -1, None
        for q in range(f.n):
            if q in pos:
                continue
            attach_positions = [pos[w] for w in f.neighbors(q) if w in pos]
            key = (
                len(attach_positions),
                f.degree(q),
                -(min(attach_positions) if attach_positions else f.n),
            )
            if best_key is None or key > best_key:
                best, best_key = q, key
        pos[best] = len(order)
        order.append(best)
    return order


def _embed(
    h: Graph,
    f: Graph,
    seeds: dict[int, int] | None = None,
    require_all_edges: bool = False,
) -> Optional[dict[int, int]]:
    """Injective map f -> h preserving f's edges, or None.

    seeds pins pattern vertices to host vertices. require_all_edges also
    forbids mapping non-adjacent pattern vertices onto host edges (used
    for the isomorphism test when the graphs have equal edge counts).
    """
    if f.n > h.n:
        return None
    seeds = seeds or {}
    order = _search_order(f, list(seeds.keys()))
    full = (1 << h.n) - 1
    assignment: dict[int, int] = {}
    used = 0

    def candidates(q: int) -> int:
        cand = full & ~used
        for w in f.neighbors(q):
            if w in assignment:
                cand &= h.row(assignment[w])
        return cand

    def extend(idx: int) -> bool:
        nonlocal used
        if idx == len(order):
            return True
        q = order[idx]
        if q in seeds:
            v = seeds[q]
            cand = candidates(q)
            if not (cand >> v) & 1:
                return False
            choices: Iterable[int] = (v,)
        else:
            choices = bits_of(candidates(q))
        fdeg_q = f.degree(q)
        for v in choices:
            if h.degree(v) < fdeg_q:
                continue
            if require_all_edges:
                bad = False
                for w, hv in assignment.items():
                    if not f.has_edge(q, w) and h.has_edge(v, hv):
                        bad = True
                        break
                if bad:
                    continue
            assignment[q] = v
            used |= 1 << v
            if extend(idx + 1):
                return True
            del assignment[q]
            used &= ~(1 << v)
        return False

    for q, v in seeds.items():
        if (used >> v) & 1:
            return None
        assignment[q] = v
        used |= 1 << v
    # seeded pattern edges must already map onto host edges
    for q, v in seeds.items():
        for w in f.neighbors(q):
            if w in seeds and w > q and not h.has_edge(v, seeds[w]):
                return None
    if not extend(len(seeds)):
        return None
    return dict(assignment)


@dataclass(frozen=True)
class _Plan:
    """Compiled placement schedule: order[i] is the pattern vertex placed at
    step i; pre[i] lists earlier steps whose images must be neighbors; deg[i]
    is the pattern degree (host-degree prune)."""

    order: tuple[int, ...]
    pre: tuple[tuple[int, ...], ...]
    deg: tuple[int, ...]


def _compile(f: Graph, order: list[int]) -> _Plan:
    pos = {q: i for i, q in enumerate(order)}
    pre = []
    for i, q in enumerate(order):
        pre.append(tuple(sorted(pos[w] for w in f.neighbors(q) if pos[w] < i)))
    return _Plan(tuple(order), tuple(pre), tuple(f.degree(q) for q in order))


def _candidate_mask(h, plan: _Plan, images: list[int], used: int, i: int) -> int:
    cand = -1
    for j in plan.pre[i]:
        cand &= h.row(images[j])
    if cand == -1:  # unattached pattern vertex: scan the whole host
        cand = (1 << h.n) - 1
    return cand & ~used


def _tail_pair(h, plan: _Plan, images: list[int], used: int) -> bool:
    """Joint existence test for the final two placements.

    Iterating the smaller candidate side keeps high-degree hub images from
    exploding the search; on success the two images are recorded.
    """
    k = len(plan.order)
    iw, iz = k - 2, k - 1
    a = _candidate_mask(h, plan, images, used, iw)
    if not a:
        return False
    b = -1
    for j in plan.pre[iz]:
        if j != iw:
            b &= h.row(images[j])
    if b == -1:
        b = (1 << h.n) - 1
    b &= ~used
    if not b:
        return False
    if iw in plan.pre[iz]:  # the two remaining pattern vertices are adjacent
        if a.bit_count() <= b.bit_count():
            for w in bits_of(a):
                hit = h.row(w) & b & ~(1 << w)
                if hit:
                    images[iw] = w
                    images[iz] = (hit & -hit).bit_length() - 1
                    return True
        else:
            for z in bits_of(b):
                hit = h.row(z) & a & ~(1 << z)
                if hit:
                    images[iz] = z
                    images[iw] = (hit & -hit).bit_length() - 1
                    return True
        return False
    only_a = a & ~b
    if only_a:
        images[iw] = (only_a & -only_a).bit_length() - 1
        images[iz] = (b & -b).bit_length() - 1
        return True
    only_b = b & ~a
    if only_b:
        images[iw] = (a & -a).bit_length() - 1
        images[iz] = (only_b & -only_b).bit_length() - 1
        return True
    # a == b here; need two distinct vertices
    if a.bit_count() >= 2:
        w = (a & -a).bit_length() - 1
        rest = a & ~(1 << w)
        images[iw] = w
        images[iz] = (rest & -rest).bit_length() - 1
        return True
    return False


def _run_plan(h, plan: _Plan, images: list[int], used: int, start: int) -> bool:
    """Iterative backtracking over the compiled plan; images[:start] fixed."""
    k = len(plan.order)
    if start == k:
        return True
    stack: list = [None] * k
    i = start
    while True:
        remaining = k - i
        if remaining <= 2 and stack[i] is None:
            if remaining == 1:
                cand = _candidate_mask(h, plan, images, used, i)
                if cand:
                    images[i] = (cand & -cand).bit_length() - 1
                    return True
            else:
                if _tail_pair(h, plan, images, used):
                    return True
            i -= 1
            if i < start:
                return False
            used &= ~(1 << images[i])
            continue
        if stack[i] is None:
            stack[i] = bits_of(_candidate_mask(h, plan, images, used, i))
        placed = False
        need = plan.deg[i]
        for v in stack[i]:
            if h.degree(v) < need:
                continue
            images[i] = v
            used |= 1 << v
            i += 1
            placed = True
            break
        if not placed:
            stack[i] = None
            i -= 1
            if i < start:
                return False
            used &= ~(1 << images[i])


@lru_cache(maxsize=None)
def _free_plan(f: Pattern) -> _Plan:
    return _compile(f.graph, _search_order(f.graph, []))


@lru_cache(maxsize=None)
def _anchor_plans(f: Pattern) -> tuple[tuple[_Plan, bool], ...]:
    """One plan per unordered-edge orbit under Aut(f); callers probe both
    orientations of the host edge unless an automorphism flips the anchor
    (the bool marks such flip-symmetric orbits)."""
    g = f.graph
    reps: list[tuple[int, int]] = []
    for a in range(g.n):
        for b in bits_of(g.row(a)):
            covered = any(
                _embed(g, g, seeds={ra: a, rb: b}, require_all_edges=True) is not None
                or _embed(g, g, seeds={ra: b, rb: a}, require_all_edges=True) is not None
                for ra, rb in reps
            )
            if not covered:
                reps.append((a, b))
    out = []
    for a, b in reps:
        flip = _embed(g, g, seeds={a: b, b: a}, require_all_edges=True) is not None
        out.append((_compile(g, _search_order(g, [a, b])), flip))
    return tuple(out)


def contains_copy(h: Graph, f: Pattern) -> Optional[dict[int, int]]:
    """First embedding of f into h (subgraph sense), or None; deterministic."""
    if f.n > PATTERN_GUARD:
        raise PatternGuardError(f"pattern {f.name} exceeds guard")
    plan = _free_plan(f)
    images = [0] * f.n
    if _run_plan(h, plan, images, 0, 0):
        return {q: images[i] for i, q in enumerate(plan.order)}
    return None


def is_family_free(h: Graph, fam: Family) -> bool:
    return all(contains_copy(h, f) is None for f in fam)


def completes(h: Graph, e: tuple[int, int], fam: Family) -> bool:
    """Does h + e contain a member copy whose edge set includes e?"""
    u, v = e
    if not (0 <= u < h.n and 0 <= v < h.n) or u == v:
        raise ParameterError(f"edge {e} outside host range")
    if h.has_edge(u, v):
        raise ParameterError(f"edge {e} already present in host")
    rows = list(h.rows())
    rows[u] |= 1 << v
    rows[v] |= 1 << u
    hp = _RowsView(h.n, rows)
    return copy_through(hp, u, v, fam)


class _RowsView:
    """Minimal host-protocol wrapper over raw adjacency rows (no validation)."""

    __slots__ = ("n", "_rows")

    def __init__(self, n: int, rows):
        self.n = n
        self._rows = rows

    def row(self, v: int) -> int:
        return self._rows[v]

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self._rows[u] & (1 << v))

    def degree(self, v: int) -> int:
        return self._rows[v].bit_count()

    def neighbors(self, v: int):
        return bits_of(self._rows[v])


def copy_through(hp, u: int, v: int, fam: Family) -> bool:
    """Anchored search in hp (which already contains {u,v}) for a member copy
    using that edge. hp is any host-protocol object; no copies are made."""
    return any(_completes_one(hp, u, v, f) for f in fam)


def _completes_one(hp, u: int, v: int, f: Pattern) -> bool:
    """Anchored search: some pattern edge maps onto {u,v} (either direction)."""
    bit_uv = (1 << u) | (1 << v)
    for plan, flip_symmetric in _anchor_plans(f):
        d0, d1 = plan.deg[0], plan.deg[1]
        for x, y in ((u, v), (v, u)):
            if hp.degree(x) < d0 or hp.degree(y) < d1:
                continue
            images = [0] * len(plan.order)
            images[0], images[1] = x, y
            if _run_plan(hp, plan, images, bit_uv, 2):
                return True
            if flip_symmetric:
                break
    return False


# -- empirical density probe --------------------------------------------------


@dataclass
class DensityReport:
    subset_size: int
    trials: int
    hits: int
    first_miss: Optional[tuple[int, ...]]

    @property
    def hit_fraction(self) -> float:
        return self.hits / self.trials


def density_probe(h: Graph, a: Pattern, eps: float, trials: int, seed: int) -> DensityReport:
    """Sample induced subsets of size ceil(eps*n) and count those containing a.

    An empirical probe, not a certificate.
    """
    import math
    import random

    if not 0.0 < eps <= 1.0:
        raise ParameterError("eps must lie in (0, 1]")
    if trials < 1:
        raise ParameterError("trials must be >= 1")
    size = max(1, math.ceil(eps * h.n))
    if size < a.n:
        raise ParameterError(f"subset size {size} smaller than pattern ({a.n})")
    hits = 0
    first_miss = None
    rng = random.Random(seed)
    for _ in range(trials):
        chosen = rng.sample(range(h.n), size)
        sub, _ = h.induced(chosen)
        if contains_copy(sub, a) is not None:
            hits += 1
        elif first_miss is None:
            first_miss = tuple(sorted(chosen))
    return DensityReport(size, trials, hits, first_miss)


# -- naive oracles (exported for cross-checks) --------------------------------


def brute_force_contains(h: Graph, f: Pattern) -> bool:
    """Exhaustive containment over injective vertex tuples; test oracle."""
    from itertools import permutations

    fedges = list(f.graph.edges())
    for combo in combinations(range(h.n), f.n):
        for perm in permutations(combo):
            if all(h.has_edge(perm[a], perm[b]) for a, b in fedges):
                return True
    return False
