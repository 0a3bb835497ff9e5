"""Independent reference implementations used by the tests.

Nothing here calls the library's canonical labelling or search code.
"""

from __future__ import annotations

import itertools
from collections import defaultdict

import networkx as nx

from sxl.graph import Graph


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def brute_force_classes(m: int) -> list[nx.Graph]:
    """Connected m-edge graphs up to isomorphism.

    Every edge set on n <= m+1 vertices is tried; classes are split by
    degree sequence and then separated with networkx's VF2 isomorphism test.
    """
    buckets: dict[tuple, list[nx.Graph]] = defaultdict(list)
    for n in range(2, m + 2):
        pairs = list(itertools.combinations(range(n), 2))
        for chosen in itertools.combinations(pairs, m):
            if len({v for e in chosen for v in e}) != n:
                continue
            g = nx.Graph(chosen)
            if not nx.is_connected(g):
                continue
            key = (n, tuple(sorted(d for _, d in g.degree())))
            if not any(nx.is_isomorphic(g, h) for h in buckets[key]):
                buckets[key].append(g)
    return [h for hs in buckets.values() for h in hs]


def same_classes(ours: list[Graph], oracle: list[nx.Graph]) -> bool:
    """Each oracle class matches exactly one of ``ours`` and the sizes agree."""
    if len(ours) != len(oracle):
        return False
    mine = [to_nx(g) for g in ours]
    for h in oracle:
        hits = [g for g in mine if g.number_of_nodes() == h.number_of_nodes() and nx.is_isomorphic(g, h)]
        if len(hits) != 1:
            return False
    return True
