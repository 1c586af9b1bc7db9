"""Immutable simple undirected graphs over 0-indexed vertices.

Adjacency is stored bit-parallel: one Python int per vertex, bit u of
row v set iff {u, v} is an edge. Neighborhood intersection is a single
integer AND, which is the performance kernel of the whole library.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Sequence

from ._bits import bits_of, mask_of
from .errors import ParameterError

VertexSet = frozenset  # subsets of 0..n-1; functions accept any iterable of ints


class Graph:
    __slots__ = ("n", "_rows", "_m")

    def __init__(self, n: int, rows: Sequence[int]):
        if n < 0:
            raise ParameterError("vertex count must be nonnegative")
        if len(rows) != n:
            raise ParameterError("adjacency row count must equal n")
        self.n = n
        self._rows = tuple(rows)
        self._m = sum(r.bit_count() for r in rows) // 2
        self._check()

    def _check(self) -> None:
        degsum = 0
        for v, row in enumerate(self._rows):
            if row >> self.n:
                raise ParameterError(f"row {v} references vertices >= n")
            if row & (1 << v):
                raise ParameterError(f"self-loop at vertex {v}")
            degsum += row.bit_count()
        if degsum % 2:
            raise ParameterError("asymmetric adjacency (odd degree sum)")
        # full symmetry scan only at test scale; large graphs come from
        # builders that write both directions
        if self.n <= 256:
            for v, row in enumerate(self._rows):
                for u in bits_of(row):
                    if u > v:
                        break
                    if not self._rows[u] & (1 << v):
                        raise ParameterError(f"asymmetric adjacency at {{{u},{v}}}")

    # -- construction ------------------------------------------------------

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise ParameterError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ParameterError(f"edge {{{u},{v}}} outside 0..{n - 1}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, rows)

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, [0] * n)

    @classmethod
    def complete(cls, n: int) -> "Graph":
        full = (1 << n) - 1
        return cls(n, [full ^ (1 << v) for v in range(n)])

    # -- queries -----------------------------------------------------------

    @property
    def edge_count(self) -> int:
        return self._m

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self._rows[u] & (1 << v))

    def row(self, v: int) -> int:
        """Adjacency bitmask of v."""
        return self._rows[v]

    def rows(self) -> tuple[int, ...]:
        return self._rows

    def degree(self, v: int) -> int:
        return self._rows[v].bit_count()

    def neighbors(self, v: int) -> Iterator[int]:
        return bits_of(self._rows[v])

    def vertices(self) -> range:
        return range(self.n)

    def edges(self) -> Iterator[tuple[int, int]]:
        """Edges in ascending lexicographic order (u < v)."""
        for u in range(self.n):
            for v in bits_of(self._rows[u] >> (u + 1)):
                yield (u, v + u + 1)

    def degree_sum(self) -> int:
        return sum(r.bit_count() for r in self._rows)

    def is_subgraph_of(self, other: "Graph") -> bool:
        return self.n == other.n and all(
            self._rows[v] & ~other._rows[v] == 0 for v in range(self.n)
        )

    def induced(self, members: Iterable[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph on `members`; returns it with the vertex relabelling."""
        order = sorted(set(members))
        index = {v: i for i, v in enumerate(order)}
        rows = [0] * len(order)
        msk = mask_of(order)
        for v in order:
            for u in bits_of(self._rows[v] & msk):
                rows[index[v]] |= 1 << index[u]
        return Graph(len(order), rows), order

    def union_edges(self, other: "Graph") -> "Graph":
        if self.n != other.n:
            raise ParameterError("union requires equal vertex counts")
        return Graph(self.n, [a | b for a, b in zip(self._rows, other._rows)])

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self._rows == other._rows

    def __hash__(self) -> int:
        return hash((self.n, self._rows))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self._m})"


class MutableGraph:
    """Builder companion to Graph; same row layout, in-place edits."""

    __slots__ = ("n", "rows")

    def __init__(self, n: int, rows: Sequence[int] | None = None):
        self.n = n
        self.rows = [0] * n if rows is None else list(rows)

    @classmethod
    def from_graph(cls, g: Graph) -> "MutableGraph":
        return cls(g.n, g.rows())

    def add_edge(self, u: int, v: int) -> None:
        self.rows[u] |= 1 << v
        self.rows[v] |= 1 << u

    def remove_edge(self, u: int, v: int) -> None:
        self.rows[u] &= ~(1 << v)
        self.rows[v] &= ~(1 << u)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] & (1 << v))

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    # host protocol shared with Graph, so embedding searches run on builders
    def row(self, v: int) -> int:
        return self.rows[v]

    def neighbors(self, v: int) -> Iterator[int]:
        return bits_of(self.rows[v])

    def edge_total(self) -> int:
        return sum(r.bit_count() for r in self.rows) // 2

    def freeze(self) -> Graph:
        return Graph(self.n, self.rows)


def common_neighbors(g: Graph, s: Iterable[int], a: Iterable[int]) -> frozenset:
    """Common neighborhood of every vertex of s, restricted to a.

    The empty-s convention (all vertices) is deliberately not supported.
    """
    svs = list(s)
    if not svs:
        raise ParameterError("common_neighbors requires a nonempty vertex set")
    mask = mask_of(a)
    for v in svs:
        if not 0 <= v < g.n:
            raise ParameterError(f"vertex {v} outside range")
        mask &= g.row(v)
    return frozenset(bits_of(mask))


def common_neighbors_mask(g: Graph, s: Iterable[int], within: int) -> int:
    """Bitmask version of common_neighbors for hot paths (no emptiness guard)."""
    m = within
    for v in s:
        m &= g.row(v)
    return m


# -- edge-list file format -------------------------------------------------
# First line "n m"; then m lines "u v" with 0 <= u < v < n in ascending
# lexicographic order. Lines starting with '#' are ignored. ASCII, LF.


def write_edge_list(g: Graph, path: str) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(f"{g.n} {g.edge_count}\n")
        for u, v in g.edges():
            fh.write(f"{u} {v}\n")


def read_edge_list(path: str) -> Graph:
    with open(path, "r", encoding="ascii") as fh:
        lines = [ln.strip() for ln in fh if ln.strip() and not ln.startswith("#")]
    if not lines:
        raise ParameterError(f"{path}: empty edge-list file")
    head = lines[0].split()
    if len(head) != 2:
        raise ParameterError(f"{path}: header must be 'n m'")
    n, m = int(head[0]), int(head[1])
    if len(lines) - 1 != m:
        raise ParameterError(f"{path}: expected {m} edge lines, found {len(lines) - 1}")
    edges = []
    prev = (-1, -1)
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise ParameterError(f"{path}: malformed edge line {ln!r}")
        u, v = int(parts[0]), int(parts[1])
        if not (0 <= u < v < n):
            raise ParameterError(f"{path}: edge {u} {v} violates 0 <= u < v < n")
        if (u, v) <= prev:
            raise ParameterError(f"{path}: edges not in ascending lexicographic order")
        prev = (u, v)
        edges.append((u, v))
    return Graph.from_edges(n, edges)
