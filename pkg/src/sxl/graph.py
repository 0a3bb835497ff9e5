"""Immutable dense graphs on at most 64 vertices.

Each vertex owns one adjacency row stored as a Python int bitset; bit ``j`` of
``adj[i]`` is set iff ``ij`` is an edge.  Every operation returns a new graph.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import InvalidEdge, VertexLimitExceeded

MAX_VERTICES = 64


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the positions of the set bits of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


class Graph:
    """Undirected simple graph with bitset rows.

    Construct through :func:`build_graph` (validated) rather than directly.
    """

    __slots__ = ("n", "adj", "m")

    def __init__(self, n: int, adj: Sequence[int]):
        rows = tuple(adj)
        if len(rows) != n:
            raise ValueError("row count does not match vertex count")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "adj", rows)
        object.__setattr__(self, "m", sum(r.bit_count() for r in rows) // 2)

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        return hash((self.n, self.adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m}, edges={self.edges()})"

    def __reduce__(self):
        return (Graph, (self.n, self.adj))

    @property
    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [r.bit_count() for r in self.adj]

    def neighbors(self, v: int) -> list[int]:
        return list(iter_bits(self.adj[v]))

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for i, row in enumerate(self.adj):
            for j in iter_bits(row >> (i + 1)):
                out.append((i, i + 1 + j))
        return out

    def non_edges(self) -> list[tuple[int, int]]:
        out = []
        for i in range(self.n):
            free = ~self.adj[i] & self.vertex_mask
            for j in iter_bits(free >> (i + 1)):
                out.append((i, i + 1 + j))
        return out

    def adjacency_matrix(self) -> np.ndarray:
        a = np.zeros((self.n, self.n))
        for i, row in enumerate(self.adj):
            for j in iter_bits(row):
                a[i, j] = 1.0
        return a

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        return _reach(self.adj, 0, self.vertex_mask) == self.vertex_mask

    def isolated_vertices(self) -> list[int]:
        return [v for v in range(self.n) if not self.adj[v]]

    def add_edge(self, u: int, v: int) -> "Graph":
        _check_pair(self.n, u, v)
        rows = list(self.adj)
        rows[u] |= 1 << v
        rows[v] |= 1 << u
        return Graph(self.n, rows)

    def remove_edge(self, u: int, v: int) -> "Graph":
        rows = list(self.adj)
        rows[u] &= ~(1 << v)
        rows[v] &= ~(1 << u)
        return Graph(self.n, rows)

    def add_vertex(self, neighbors: Iterable[int] = ()) -> "Graph":
        """Append vertex ``n`` adjacent to ``neighbors``."""
        if self.n + 1 > MAX_VERTICES:
            raise VertexLimitExceeded(f"{self.n + 1} vertices exceeds {MAX_VERTICES}")
        rows = list(self.adj) + [0]
        new = self.n
        for u in neighbors:
            rows[u] |= 1 << new
            rows[new] |= 1 << u
        return Graph(self.n + 1, rows)

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Return the graph where old vertex ``v`` becomes ``perm[v]``."""
        rows = [0] * self.n
        for v, row in enumerate(self.adj):
            new_row = 0
            for u in iter_bits(row):
                new_row |= 1 << perm[u]
            rows[perm[v]] = new_row
        return Graph(self.n, rows)

    def without_isolated(self) -> "Graph":
        keep = [v for v in range(self.n) if self.adj[v]]
        if len(keep) == self.n:
            return self
        return induced_subgraph(self, keep)


@dataclass(frozen=True)
class NeighborhoodPartition:
    """Split of V(G) around a centre vertex.

    ``U`` is the neighbourhood of ``center``, ``W`` the non-neighbours, ``U0``
    the vertices of ``U`` isolated in ``G[U]`` and ``components_of_U`` the
    vertex sets of the components of ``G[U]`` (singletons included).
    """

    center: int
    U: frozenset[int]
    W: frozenset[int]
    U0: frozenset[int]
    components_of_U: tuple[frozenset[int], ...]

    @property
    def nontrivial_components(self) -> tuple[frozenset[int], ...]:
        return tuple(c for c in self.components_of_U if len(c) > 1)


def _check_pair(n: int, u: int, v: int) -> None:
    if u == v:
        raise InvalidEdge(f"loop at vertex {u}")
    if not (0 <= u < n and 0 <= v < n):
        raise InvalidEdge(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")


def _reach(adj: Sequence[int], start: int, allowed: int) -> int:
    seen = 1 << start
    frontier = seen
    while frontier:
        nxt = 0
        for v in iter_bits(frontier):
            nxt |= adj[v]
        nxt &= allowed & ~seen
        seen |= nxt
        frontier = nxt
    return seen


def build_graph(n: int, edges: Iterable[tuple[int, int]] = ()) -> Graph:
    """Graph on vertices ``0..n-1`` with the given edges (duplicates collapse)."""
    if n < 0:
        raise InvalidEdge("negative vertex count")
    if n > MAX_VERTICES:
        raise VertexLimitExceeded(f"{n} vertices exceeds {MAX_VERTICES}")
    n = int(n)
    rows = [0] * n
    for u, v in edges:
        u, v = int(u), int(v)  # numpy integers would leak into the bit rows
        _check_pair(n, u, v)
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph(n, rows)


def empty_graph(n: int) -> Graph:
    return build_graph(n)


def disjoint_union(g: Graph, h: Graph) -> Graph:
    n = g.n + h.n
    if n > MAX_VERTICES:
        raise VertexLimitExceeded(f"{n} vertices exceeds {MAX_VERTICES}")
    rows = list(g.adj) + [row << g.n for row in h.adj]
    return Graph(n, rows)


def join(g: Graph, h: Graph) -> Graph:
    """Disjoint union of ``g`` and ``h`` plus every edge between them."""
    n = g.n + h.n
    if n > MAX_VERTICES:
        raise VertexLimitExceeded(f"{n} vertices exceeds {MAX_VERTICES}")
    g_mask = (1 << g.n) - 1
    h_mask = ((1 << h.n) - 1) << g.n
    rows = [row | h_mask for row in g.adj] + [(row << g.n) | g_mask for row in h.adj]
    return Graph(n, rows)


def union_many(graphs: Iterable[Graph]) -> Graph:
    out = empty_graph(0)
    for g in graphs:
        out = disjoint_union(out, g)
    return out


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> Graph:
    """Subgraph induced by ``vertices``, relabelled in ascending id order."""
    keep = sorted(set(vertices))
    pos = {v: i for i, v in enumerate(keep)}
    keep_mask = mask_of(keep)
    rows = []
    for v in keep:
        row = 0
        for u in iter_bits(g.adj[v] & keep_mask):
            row |= 1 << pos[u]
        rows.append(row)
    return Graph(len(keep), rows)


def components(g: Graph) -> list[frozenset[int]]:
    """Connected components, ordered by their smallest vertex."""
    out = []
    remaining = g.vertex_mask
    while remaining:
        start = (remaining & -remaining).bit_length() - 1
        comp = _reach(g.adj, start, g.vertex_mask)
        out.append(frozenset(iter_bits(comp)))
        remaining &= ~comp
    return out


def component_masks(adj: Sequence[int], allowed: int) -> list[int]:
    """Components of the subgraph induced by the bitmask ``allowed``."""
    out = []
    remaining = allowed
    while remaining:
        start = (remaining & -remaining).bit_length() - 1
        comp = _reach(adj, start, allowed)
        out.append(comp)
        remaining &= ~comp
    return out


def neighborhood_partition(g: Graph, u: int) -> NeighborhoodPartition:
    if not 0 <= u < g.n:
        raise InvalidEdge(f"vertex {u} not in graph")
    u_mask = g.adj[u]
    w_mask = g.vertex_mask & ~u_mask & ~(1 << u)
    comps = component_masks(g.adj, u_mask)
    isolated = [c for c in comps if c.bit_count() == 1]
    return NeighborhoodPartition(
        center=u,
        U=frozenset(iter_bits(u_mask)),
        W=frozenset(iter_bits(w_mask)),
        U0=frozenset(iter_bits(mask_of(v for c in isolated for v in iter_bits(c)))),
        components_of_U=tuple(frozenset(iter_bits(c)) for c in comps),
    )
