"""Forbidden-subgraph detection (not necessarily induced containment).

``contains`` runs an exact backtracking embedding search.  Fans, friendship
graphs and books are routed to neighbourhood detectors instead:

* V_k at v   <=>  G[N(v)] has a path on k-1 vertices
* F_k at v   <=>  G[N(v)] has a matching with k edges
* B_k on uv  <=>  |N(u) & N(v)| >= k
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import cached_property

from .errors import InvalidPattern, SizeLimitExceeded
from .families import FamilySpec, make, parse_family
from .graph import Graph, iter_bits

# Cross-check every specialised answer against the generic search.
DEBUG_CROSSCHECK = os.environ.get("SXL_DEBUG", "") not in ("", "0")


@dataclass(frozen=True)
class Pattern:
    spec: FamilySpec | None = None
    explicit: Graph | None = None

    def __post_init__(self):
        if (self.spec is None) == (self.explicit is None):
            raise InvalidPattern("give exactly one of spec or explicit graph")
        g = self.graph
        if g.m == 0:
            raise InvalidPattern("pattern has no edges")
        if g.isolated_vertices():
            raise InvalidPattern("pattern has isolated vertices")

    @cached_property
    def graph(self) -> Graph:
        return make(self.spec) if self.spec is not None else self.explicit

    def __str__(self) -> str:
        return str(self.spec) if self.spec is not None else f"graph(n={self.explicit.n}, m={self.explicit.m})"


def parse_pattern(text: str) -> Pattern:
    return Pattern(spec=parse_family(text))


def as_pattern(p: Pattern | FamilySpec | Graph | str) -> Pattern:
    if isinstance(p, Pattern):
        return p
    if isinstance(p, FamilySpec):
        return Pattern(spec=p)
    if isinstance(p, Graph):
        return Pattern(explicit=p)
    return parse_pattern(p)


@dataclass(frozen=True)
class Witness:
    """``mapping[i]`` is the host vertex carrying pattern vertex ``i``."""

    mapping: tuple[int, ...]

    def verify(self, host: Graph, pattern: Graph) -> bool:
        if len(set(self.mapping)) != len(self.mapping) or len(self.mapping) != pattern.n:
            return False
        return all(host.has_edge(self.mapping[u], self.mapping[v]) for u, v in pattern.edges())


# ---------------------------------------------------------------- generic search

def _search_order(p: Graph) -> list[int]:
    deg = p.degrees()
    order: list[int] = []
    placed = 0
    remaining = set(range(p.n))
    while remaining:
        best = max(remaining, key=lambda v: ((p.adj[v] & placed).bit_count(), deg[v], -v))
        order.append(best)
        placed |= 1 << best
        remaining.discard(best)
    return order


def find_embedding(host: Graph, pattern: Graph) -> Witness | None:
    """Exhaustive backtracking for an injective edge-preserving map."""
    if pattern.m == 0:
        raise InvalidPattern("pattern has no edges")
    if pattern.n > host.n or pattern.m > host.m:
        return None
    order = _search_order(pattern)
    pdeg = pattern.degrees()
    hdeg = host.degrees()
    by_degree = [0] * (max(pdeg) + 1)
    for d in range(len(by_degree)):
        by_degree[d] = sum(1 << v for v in range(host.n) if hdeg[v] >= d)
    back = []  # earlier pattern neighbours of each vertex in search order
    for i, v in enumerate(order):
        back.append([u for u in order[:i] if pattern.has_edge(u, v)])
    image = [-1] * pattern.n

    def extend(i: int, used: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        cand = by_degree[pdeg[v]] & ~used
        for u in back[i]:
            cand &= host.adj[image[u]]
        for h in iter_bits(cand):
            image[v] = h
            if extend(i + 1, used | (1 << h)):
                return True
        image[v] = -1
        return False

    if extend(0, 0):
        return Witness(tuple(image))
    return None


# ---------------------------------------------------------------- paths and matchings

def _find_path(adj, mask: int, length: int) -> list[int] | None:
    """A simple path on ``length`` vertices inside the vertex set ``mask``."""

    def grow(path: list[int], used: int) -> list[int] | None:
        if len(path) == length:
            return path
        for u in iter_bits(adj[path[-1]] & mask & ~used):
            found = grow(path + [u], used | (1 << u))
            if found:
                return found
        return None

    if length <= 0:
        return []
    for start in iter_bits(mask):
        found = grow([start], 1 << start)
        if found:
            return found
    return None


def longest_path_vertices(g: Graph) -> int:
    """Number of vertices on a longest simple path (exact DFS)."""
    if g.n > 32:
        raise SizeLimitExceeded("longest path search is limited to 32 vertices")
    if g.n == 0:
        return 0
    best = 1

    def walk(v: int, used: int, count: int) -> None:
        nonlocal best
        if count > best:
            best = count
        if best == g.n:
            return
        for u in iter_bits(g.adj[v] & ~used):
            walk(u, used | (1 << u), count + 1)

    for v in range(g.n):
        walk(v, 1 << v, 1)
        if best == g.n:
            break
    return best


def _max_matching(adj, mask: int) -> list[tuple[int, int]]:
    best: list[tuple[int, int]] = []

    def rec(mask: int, chosen: list[tuple[int, int]]) -> None:
        nonlocal best
        active = 0
        leaf = -1
        top, top_deg = -1, -1
        for v in iter_bits(mask):
            d = (adj[v] & mask).bit_count()
            if d:
                active |= 1 << v
                if d == 1 and leaf < 0:
                    leaf = v
                if d > top_deg:
                    top, top_deg = v, d
        if len(chosen) + active.bit_count() // 2 <= len(best):
            return
        if not active:
            best = list(chosen)
            return
        mask = active
        if leaf >= 0:
            # a pendant vertex can always be matched to its only neighbour
            u = (adj[leaf] & mask).bit_length() - 1
            rec(mask & ~(1 << leaf) & ~(1 << u), chosen + [(min(leaf, u), max(leaf, u))])
            return
        v = top
        for u in sorted(iter_bits(adj[v] & mask), key=lambda w: (adj[w] & mask).bit_count()):
            rec(mask & ~(1 << v) & ~(1 << u), chosen + [(min(v, u), max(v, u))])
        rec(mask & ~(1 << v), chosen)

    rec(mask, [])
    return best


def maximum_matching(g: Graph) -> list[tuple[int, int]]:
    return _max_matching(g.adj, g.vertex_mask)


def max_matching_size(g: Graph) -> int:
    return len(maximum_matching(g))


# ---------------------------------------------------------------- specialised detectors

def has_fan(g: Graph, k: int) -> Witness | None:
    """Witness for V_k (hub first, then the path in order) or None."""
    if k < 3:
        raise InvalidPattern("fan V_k needs k >= 3")
    for v in range(g.n):
        if g.degree(v) < k - 1:
            continue
        found = _find_path(g.adj, g.adj[v], k - 1)
        if found:
            return Witness((v, *found))
    return None


def has_friendship(g: Graph, k: int) -> Witness | None:
    """Witness for F_k laid out as ``friendship(k)`` labels it, or None."""
    if k < 1:
        raise InvalidPattern("friendship F_k needs k >= 1")
    for v in range(g.n):
        if g.degree(v) < 2 * k:
            continue
        matching = _max_matching(g.adj, g.adj[v])
        if len(matching) >= k:
            return Witness((v, *[x for edge in matching[:k] for x in edge]))
    return None


def has_book(g: Graph, k: int) -> Witness | None:
    if k < 1:
        raise InvalidPattern("book B_k needs k >= 1")
    for u, v in g.edges():
        common = g.adj[u] & g.adj[v]
        if common.bit_count() >= k:
            return Witness((u, v, *list(iter_bits(common))[:k]))
    return None


_SPECIALISED = {"fan": has_fan, "friendship": has_friendship, "book": has_book}


def contains(g: Graph, p: Pattern | FamilySpec | Graph | str) -> Witness | None:
    """Witness that ``g`` contains the pattern as a subgraph, else None."""
    pat = as_pattern(p)
    pg = pat.graph
    spec = pat.spec
    if spec is not None and spec.copies == 1 and spec.kind in _SPECIALISED:
        w = _SPECIALISED[spec.kind](g, spec.args[0])
        if DEBUG_CROSSCHECK:
            generic = find_embedding(g, pg)
            assert (w is None) == (generic is None), f"detector disagreement on {spec}"
    else:
        w = find_embedding(g, pg)
    if w is not None and not w.verify(g, pg):
        raise AssertionError(f"unsound witness for {pat}")
    return w


def is_free(g: Graph, p: Pattern | FamilySpec | Graph | str) -> bool:
    return contains(g, p) is None
