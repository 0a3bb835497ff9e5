from __future__ import annotations

import random

import networkx as nx
import pytest
from networkx.algorithms.isomorphism import GraphMatcher

from sxl.enumeration import all_graphs, connected_graphs
from sxl.errors import InvalidPattern, SizeLimitExceeded
from sxl.families import (
    FamilySpec, chorded_cycle, complete, cycle, fan, friendship, kk_join_indep, make_from_text, path, star, wheel,
)
from sxl.graph import Graph, build_graph, disjoint_union, empty_graph, union_many
from sxl.patterns import (
    Pattern, contains, find_embedding, has_book, has_fan, has_friendship, is_free, longest_path_vertices,
    max_matching_size, maximum_matching, parse_pattern,
)


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def nx_contains(host: Graph, pattern: Graph) -> bool:
    return GraphMatcher(to_nx(host), to_nx(pattern)).subgraph_is_monomorphic()


def brute_matching(g: Graph) -> int:
    edges = g.edges()

    def best(i: int, used: int) -> int:
        if i == len(edges):
            return 0
        u, v = edges[i]
        skip = best(i + 1, used)
        if used >> u & 1 or used >> v & 1:
            return skip
        return max(skip, 1 + best(i + 1, used | 1 << u | 1 << v))

    return best(0, 0)


def random_graph(rng, n, p):
    return build_graph(n, [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p])


def test_contains_examples():
    assert contains(complete(5), "V5") is not None
    assert contains(kk_join_indep(2, 4), "V5") is None
    assert contains(chorded_cycle(5), "C5") is not None
    assert contains(kk_join_indep(3, 10), "F3") is None
    assert contains(fan(5), "F2") is not None


def test_fan_examples():
    assert has_fan(wheel(6), 5) is not None
    for b in range(1, 12):
        assert has_fan(kk_join_indep(2, b), 5) is None
    assert has_fan(friendship(2), 5) is None


def test_friendship_examples():
    assert has_friendship(complete(7), 3) is not None
    for b in range(0, 20):
        assert has_friendship(kk_join_indep(3, b), 3) is None
    w = has_friendship(friendship(2), 2)
    assert w is not None and w.mapping[0] == 0


def test_book_detector():
    assert has_book(complete(4), 2) is not None
    assert has_book(complete(4), 3) is None
    w = has_book(kk_join_indep(2, 5), 5)
    assert w.verify(kk_join_indep(2, 5), make_from_text("B5"))


def test_matching_examples():
    assert max_matching_size(path(4)) == 2
    for n in range(4, 12):
        assert max_matching_size(kk_join_indep(2, n - 2)) == 2
    assert max_matching_size(union_many([complete(2)] * 3)) == 3
    m = maximum_matching(complete(6))
    assert len(m) == 3 and len({x for e in m for x in e}) == 6


def test_longest_path_examples():
    assert longest_path_vertices(cycle(5)) == 5
    assert longest_path_vertices(star(4)) == 3
    assert longest_path_vertices(disjoint_union(complete(3), complete(3))) == 3
    with pytest.raises(SizeLimitExceeded):
        longest_path_vertices(empty_graph(33))


def test_pattern_validation():
    with pytest.raises(InvalidPattern):
        Pattern(explicit=empty_graph(3))
    with pytest.raises(InvalidPattern):
        Pattern(explicit=build_graph(3, [(0, 1)]))
    with pytest.raises(InvalidPattern):
        parse_pattern("E3")
    with pytest.raises(InvalidPattern):
        find_embedding(complete(3), empty_graph(2))
    assert str(parse_pattern("C5+")) == "C5+"


@pytest.mark.parametrize("m", range(1, 11))
def test_matching_against_brute_force(m):
    for g in all_graphs(m):
        assert max_matching_size(g) == brute_matching(g)


@pytest.mark.parametrize("m", range(1, 10))
def test_detectors_agree_with_generic(m):
    specs = [FamilySpec("fan", (k,)) for k in (3, 4, 5)]
    specs += [FamilySpec("friendship", (k,)) for k in (2, 3)]
    specs += [FamilySpec("book", (k,)) for k in (2, 3)]
    for g in connected_graphs(m):
        for spec in specs:
            pattern = Pattern(spec=spec)
            fast = contains(g, pattern)
            slow = find_embedding(g, pattern.graph)
            assert (fast is None) == (slow is None), (spec, g)


@pytest.mark.parametrize("m", range(1, 10))
def test_implication_chain(m):
    for g in connected_graphs(m):
        v5 = contains(g, "V5") is not None
        c5p = contains(g, "C5+") is not None
        c5 = contains(g, "C5") is not None
        f2 = contains(g, "F2") is not None
        assert not v5 or c5p
        assert not c5p or c5
        assert not v5 or f2


def test_generic_against_networkx():
    rng = random.Random(2)
    patterns = [make_from_text(t) for t in ("C4", "C5", "C5+", "K4", "V5", "F2", "W5", "K{2,3}", "P5", "2K2", "B2")]
    for _ in range(150):
        host = random_graph(rng, rng.randint(4, 10), rng.uniform(0.2, 0.8))
        for p in patterns:
            w = contains(host, Pattern(explicit=p))
            assert (w is not None) == nx_contains(host, p)
            if w is not None:
                assert w.verify(host, p)


def test_monotone_under_edge_addition():
    rng = random.Random(9)
    for _ in range(150):
        g = random_graph(rng, rng.randint(4, 9), rng.uniform(0.3, 0.7))
        missing = g.non_edges()
        if not missing:
            continue
        bigger = g.add_edge(*rng.choice(missing))
        for text in ("V5", "F2", "C5", "K4"):
            if not is_free(g, text):
                assert not is_free(bigger, text)
