"""Canonical forms, graph6 I/O and isomorph-free generation by edge count.

Canonical labelling
    Colour refinement from the degree partition, then an individualisation
    search over the first smallest non-singleton cell.  Each leaf of the
    search is scored by the upper-triangle adjacency bit string (column-major,
    the graph6 bit order) and the smallest string wins.  Automorphisms are
    seeded with twin transpositions and extended with every leaf that ties the
    best string; children that lie in one orbit of the point stabiliser are
    explored once.

Generation
    Canonical augmentation over connected graphs: a child ``G' = P + e``
    (e joins two vertices of P, or attaches a new vertex) is accepted iff
    deleting the canonical deletable edge of ``G'`` gives back P's class.  The
    generation tree then contains each class exactly once and is walked
    depth first, so nothing but one sibling set is ever held in memory.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Iterator, Sequence

from .errors import InvalidParameter, MalformedGraph6, SizeLimitExceeded, SizeUnsupported
from .graph import MAX_VERTICES, Graph, build_graph, iter_bits, union_many

MAX_ENUM_EDGES = 14
GRAPH6_HEADER = b">>graph6<<"

CanonicalForm = bytes


# ---------------------------------------------------------------- refinement

def _refine(adj: Sequence[int], cells: list[int]) -> list[int]:
    """Equitable refinement of an ordered partition given as bitmasks."""
    queue = list(cells)
    qi = 0
    while qi < len(queue):
        splitter = queue[qi]
        qi += 1
        out = []
        for cell in cells:
            if cell & (cell - 1) == 0:
                out.append(cell)
                continue
            groups: dict[int, int] = {}
            for v in iter_bits(cell):
                c = (adj[v] & splitter).bit_count()
                groups[c] = groups.get(c, 0) | (1 << v)
            if len(groups) == 1:
                out.append(cell)
                continue
            pieces = [groups[c] for c in sorted(groups)]
            out.extend(pieces)
            queue.extend(pieces)
        cells = out
    return cells


def _twin_generators(adj: Sequence[int], n: int) -> list[list[int]]:
    gens = []
    for u in range(n):
        for v in range(u + 1, n):
            if adj[u] & ~(1 << v) == adj[v] & ~(1 << u):
                perm = list(range(n))
                perm[u], perm[v] = v, u
                gens.append(perm)
    return gens


def _orbit_roots(gens: list[list[int]], n: int) -> list[int]:
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for perm in gens:
        for v, w in enumerate(perm):
            a, b = find(v), find(w)
            if a != b:
                parent[max(a, b)] = min(a, b)
    return [find(v) for v in range(n)]


def _certificate(adj: Sequence[int], order: list[int]) -> int:
    cert = 0
    for j in range(1, len(order)):
        row = adj[order[j]]
        for i in range(j):
            cert = (cert << 1) | (row >> order[i] & 1)
    return cert


@dataclass(frozen=True)
class Labelling:
    """Result of canonical labelling.

    ``order[i]`` is the vertex receiving canonical label ``i``; ``cert`` the
    winning bit string; ``generators`` automorphisms met during the search
    (valid, not necessarily generating the whole group).
    """

    n: int
    order: tuple[int, ...]
    cert: int
    generators: tuple[tuple[int, ...], ...]

    @property
    def label(self) -> list[int]:
        lab = [0] * self.n
        for i, v in enumerate(self.order):
            lab[v] = i
        return lab

    @property
    def form(self) -> CanonicalForm:
        nbits = self.n * (self.n - 1) // 2
        nbytes = (nbits + 7) // 8
        return bytes([self.n]) + (self.cert << (nbytes * 8 - nbits)).to_bytes(nbytes, "big")


def canonical_labelling(g: Graph, colours: Sequence[int] | None = None) -> Labelling:
    """Canonical labelling of ``g``, optionally respecting a vertex colouring."""
    n = g.n
    adj = g.adj
    if n == 0:
        return Labelling(0, (), 0, ())
    keys = [(colours[v] if colours is not None else 0, adj[v].bit_count()) for v in range(n)]
    start: dict[tuple[int, int], int] = {}
    for v, key in enumerate(keys):
        start[key] = start.get(key, 0) | (1 << v)
    cells = [start[key] for key in sorted(start)]

    gens: list[list[int]] = []
    if colours is None:
        gens = _twin_generators(adj, n)
    else:
        gens = [p for p in _twin_generators(adj, n) if all(colours[v] == colours[p[v]] for v in range(n))]
    best_cert: int | None = None
    best_order: list[int] = []

    def search(cells: list[int], fixed: int) -> None:
        nonlocal best_cert, best_order
        cells = _refine(adj, cells)
        if len(cells) == n:
            order = [c.bit_length() - 1 for c in cells]
            cert = _certificate(adj, order)
            if best_cert is None or cert < best_cert:
                best_cert, best_order = cert, order
            elif cert == best_cert:
                auto = [0] * n
                for a, b in zip(best_order, order):
                    auto[a] = b
                if auto not in gens:
                    gens.append(auto)
            return
        idx, target = min(
            ((i, c) for i, c in enumerate(cells) if c & (c - 1)),
            key=lambda ic: (ic[1].bit_count(), ic[0]),
        )
        explored: list[int] = []
        for v in iter_bits(target):
            if explored:
                stab = [p for p in gens if all(p[u] == u for u in iter_bits(fixed))]
                roots = _orbit_roots(stab, n)
                if any(roots[v] == roots[w] for w in explored):
                    continue
            child = cells[:idx] + [1 << v, target & ~(1 << v)] + cells[idx + 1:]
            search(child, fixed | (1 << v))
            explored.append(v)

    search(cells, 0)
    return Labelling(n, tuple(best_order), best_cert, tuple(tuple(p) for p in gens))


def canonical_form(g: Graph) -> CanonicalForm:
    """Byte string equal for two graphs iff they are isomorphic."""
    return canonical_labelling(g).form


def canonical_graph(g: Graph) -> Graph:
    return g.relabel(canonical_labelling(g).label)


def are_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n or g.m != h.m or sorted(g.degrees()) != sorted(h.degrees()):
        return False
    return canonical_form(g) == canonical_form(h)


def form_to_graph(form: CanonicalForm) -> Graph:
    n = form[0]
    nbits = n * (n - 1) // 2
    nbytes = len(form) - 1
    cert = int.from_bytes(form[1:], "big") >> (nbytes * 8 - nbits)
    edges = []
    pos = nbits - 1
    for j in range(1, n):
        for i in range(j):
            if cert >> pos & 1:
                edges.append((i, j))
            pos -= 1
    return build_graph(n, edges)


# ---------------------------------------------------------------- graph6

def write_graph6(g: Graph) -> bytes:
    """graph6 encoding without trailing newline (n <= 62 only)."""
    n = g.n
    if n > 62:
        raise SizeUnsupported("graph6 writer only supports the one-byte size tier (n <= 62)")
    out = bytearray([n + 63])
    acc = 0
    nacc = 0
    for j in range(1, n):
        row = g.adj[j]
        for i in range(j):
            acc = (acc << 1) | (row >> i & 1)
            nacc += 1
            if nacc == 6:
                out.append(acc + 63)
                acc = nacc = 0
    if nacc:
        out.append((acc << (6 - nacc)) + 63)
    return bytes(out)


def to_graph6_str(g: Graph) -> str:
    return write_graph6(g).decode("ascii")


def parse_graph6(line: bytes | str) -> Graph:
    data = line.encode("ascii") if isinstance(line, str) else bytes(line)
    data = data.strip()
    if data.startswith(GRAPH6_HEADER):
        data = data[len(GRAPH6_HEADER):]
    if not data:
        raise MalformedGraph6("empty graph6 string")
    if any(b < 63 or b > 126 for b in data):
        raise MalformedGraph6("byte outside the printable range 63..126")
    if data[0] < 126:
        n, body = data[0] - 63, data[1:]
    elif len(data) >= 2 and data[1] == 126:
        raise SizeUnsupported("8-byte graph6 size tier is not supported")
    else:
        if len(data) < 4:
            raise MalformedGraph6("truncated size field")
        n = ((data[1] - 63) << 12) | ((data[2] - 63) << 6) | (data[3] - 63)
        body = data[4:]
    if n > MAX_VERTICES:
        raise SizeUnsupported(f"{n} vertices exceeds {MAX_VERTICES}")
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    if len(body) != need:
        raise MalformedGraph6(f"expected {need} adjacency bytes, got {len(body)}")
    bits = 0
    for b in body:
        bits = (bits << 6) | (b - 63)
    pad = need * 6 - nbits
    if bits & ((1 << pad) - 1):
        raise MalformedGraph6("non-zero padding bits")
    bits >>= pad
    rows = [0] * n
    pos = nbits - 1
    for j in range(1, n):
        for i in range(j):
            if bits >> pos & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            pos -= 1
    return Graph(n, rows)


def read_graph6_lines(lines: Iterable[bytes | str]) -> Iterator[Graph]:
    for line in lines:
        text = line.strip() if isinstance(line, (bytes, str)) else line
        if text:
            yield parse_graph6(text)


# ---------------------------------------------------------------- generation

@dataclass(frozen=True)
class EnumSpec:
    """Which graphs to enumerate: ``m`` edges, no isolated vertices.

    ``max_vertices`` defaults to the most such a graph can have: m + 1 when
    connected, 2m otherwise (mK_2).
    """

    m: int
    require_connected: bool = True
    max_vertices: int | None = None

    def __post_init__(self):
        if self.m < 1:
            raise InvalidParameter("edge count must be at least 1")
        if self.vertex_cap > MAX_VERTICES:
            raise InvalidParameter(f"max_vertices above {MAX_VERTICES}")

    @property
    def vertex_cap(self) -> int:
        if self.max_vertices is not None:
            return self.max_vertices
        return self.m + 1 if self.require_connected else 2 * self.m


def _edge_key(adj: Sequence[int], u: int, v: int) -> tuple[int, int, int]:
    du, dv = adj[u].bit_count(), adj[v].bit_count()
    return (min(du, dv), max(du, dv), (adj[u] & adj[v]).bit_count())


def _deletable(g: Graph, u: int, v: int) -> bool:
    """Removing uv leaves a connected graph once isolated vertices are dropped."""
    adj = g.adj
    if adj[u].bit_count() == 1 or adj[v].bit_count() == 1:
        return True
    rows = list(adj)
    rows[u] &= ~(1 << v)
    rows[v] &= ~(1 << u)
    seen = 1 << u
    frontier = seen
    while frontier:
        if seen >> v & 1:
            return True
        nxt = 0
        for w in iter_bits(frontier):
            nxt |= rows[w]
        nxt &= ~seen
        seen |= nxt
        frontier = nxt
    return bool(seen >> v & 1)


def _delete(g: Graph, u: int, v: int) -> Graph:
    h = g.remove_edge(u, v)
    return h.without_isolated()


@dataclass
class _Node:
    graph: Graph
    labelling: Labelling


def _children(node: _Node) -> list[_Node]:
    """Accepted canonical-augmentation children of one parent."""
    parent = node.graph
    n = parent.n
    parent_form = node.labelling.form
    roots = _orbit_roots([list(p) for p in node.labelling.generators], n)
    gens = node.labelling.generators
    candidates: list[tuple[Graph, int, int]] = []
    covered: set[tuple[int, int]] = set()
    for u, v in parent.non_edges():
        if (u, v) in covered:
            continue
        covered |= _pair_orbit(gens, (u, v))
        candidates.append((parent.add_edge(u, v), u, v))
    if n < MAX_VERTICES:
        attached = set()
        for u in range(n):
            if roots[u] in attached:
                continue
            attached.add(roots[u])
            candidates.append((parent.add_vertex([u]), u, n))

    out: list[_Node] = []
    seen_forms: set[bytes] = set()
    for child, u, v in candidates:
        adj = child.adj
        key = _edge_key(adj, u, v)
        rejected = False
        ties = []
        for a, b in child.edges():
            k = _edge_key(adj, a, b)
            if k > key and _deletable(child, a, b):
                rejected = True
                break
            if k == key and (a, b) != (u, v):
                ties.append((a, b))
        if rejected:
            continue
        lab = canonical_labelling(child)
        form = lab.form
        if form in seen_forms:
            continue
        if ties:
            label = lab.label
            mine = _sorted_pair(label[u], label[v])
            best = mine
            best_edge = (u, v)
            for a, b in ties:
                pair = _sorted_pair(label[a], label[b])
                if pair < best and _deletable(child, a, b):
                    best, best_edge = pair, (a, b)
            if best_edge != (u, v) and canonical_form(_delete(child, *best_edge)) != parent_form:
                continue
        seen_forms.add(form)
        out.append(_Node(child, lab))
    return out


def _sorted_pair(a: int, b: int) -> tuple[int, int]:
    return (a, b) if a < b else (b, a)


def _pair_orbit(gens, pair: tuple[int, int]) -> set[tuple[int, int]]:
    """Orbit of an unordered pair under the group generated by ``gens``."""
    orbit = {pair}
    frontier = [pair]
    while frontier:
        a, b = frontier.pop()
        for p in gens:
            img = _sorted_pair(p[a], p[b])
            if img not in orbit:
                orbit.add(img)
                frontier.append(img)
    return orbit


def _root() -> _Node:
    k2 = Graph(2, (2, 1))
    return _Node(k2, canonical_labelling(k2))


def _walk(node: _Node, depth_left: int, cap: int) -> Iterator[tuple[int, Graph]]:
    """Yield (m, graph) for the node and all descendants down to ``depth_left``."""
    yield node.graph.m, node.graph
    if depth_left == 0:
        return
    for child in _children(node):
        if child.graph.n <= cap:
            yield from _walk(child, depth_left - 1, cap)


def iter_connected(m_max: int, max_vertices: int | None = None) -> Iterator[tuple[int, Graph]]:
    """Depth-first stream of every connected class with 1..m_max edges."""
    if m_max > MAX_ENUM_EDGES:
        raise SizeLimitExceeded(f"internal enumeration is capped at m = {MAX_ENUM_EDGES}")
    if m_max < 1:
        return iter(())
    cap = max_vertices if max_vertices is not None else m_max + 1
    return _walk(_root(), m_max - 1, cap)


def _subtree_worker(args) -> list[bytes]:
    g6, depth_left, cap, target = args
    g = parse_graph6(g6)
    node = _Node(g, canonical_labelling(g))
    return [write_graph6(h) for m, h in _walk(node, depth_left, cap) if m == target]


def _split_level(m: int) -> int:
    return min(m - 1, 6)


def _connected_level(m: int, cap: int, threads: int) -> Iterator[Graph]:
    if threads <= 1 or m <= 7:
        for mm, g in iter_connected(m, cap):
            if mm == m:
                yield g
        return
    from concurrent.futures import ProcessPoolExecutor

    split = _split_level(m)
    roots: list[Graph] = []
    for mm, g in iter_connected(split, cap):
        if mm == split:
            roots.append(g)
    jobs = [(write_graph6(r), m - split, cap, m) for r in roots]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        # map preserves submission order, so output order matches sequential mode
        for batch in pool.map(_subtree_worker, jobs, chunksize=1):
            for g6 in batch:
                yield parse_graph6(g6)


def _all_level(m: int, cap: int, threads: int) -> Iterator[Graph]:
    by_size = {k: connected_graphs(k) for k in range(1, m + 1)}
    for parts in _partitions(m):
        groups = itertools.groupby(parts)
        choices = []
        for size, grp in groups:
            count = len(list(grp))
            choices.append(list(itertools.combinations_with_replacement(range(len(by_size[size])), count)))
        sizes = [size for size, _ in itertools.groupby(parts)]
        for combo in itertools.product(*choices):
            comps = [by_size[size][i] for size, idxs in zip(sizes, combo) for i in idxs]
            if sum(c.n for c in comps) <= cap:
                yield union_many(comps)


def _partitions(m: int, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    largest = m if largest is None else largest
    if m == 0:
        yield ()
        return
    for first in range(min(m, largest), 0, -1):
        for rest in _partitions(m - first, first):
            yield (first,) + rest


def enumerate_graphs(
    spec: EnumSpec,
    visit: Callable[[Graph], None] | None = None,
    threads: int = 1,
) -> int:
    """Visit one representative per isomorphism class; return the class count.

    Classes have exactly ``spec.m`` edges and no isolated vertices; connected
    unless ``require_connected`` is false.  Visit order is deterministic and
    independent of ``threads``.
    """
    if spec.m > MAX_ENUM_EDGES:
        raise SizeLimitExceeded(f"internal enumeration is capped at m = {MAX_ENUM_EDGES}")
    cap = spec.vertex_cap
    source = (_connected_level if spec.require_connected else _all_level)(spec.m, cap, max(1, threads))
    count = 0
    for g in source:
        if g.n > cap:
            continue
        count += 1
        if visit is not None:
            visit(g)
    return count


@lru_cache(maxsize=None)
def _connected_cached(m: int) -> tuple[Graph, ...]:
    threads = int(os.environ.get("SXL_THREADS", "1") or 1)
    out: list[Graph] = []
    enumerate_graphs(EnumSpec(m), out.append, threads=threads)
    return tuple(out)


def connected_graphs(m: int) -> tuple[Graph, ...]:
    """Cached tuple of the connected classes with m edges (m <= 12)."""
    if m > 12:
        raise SizeLimitExceeded("connected_graphs caches at most m = 12; stream with enumerate_graphs")
    return _connected_cached(m)


def all_graphs(m: int) -> list[Graph]:
    out: list[Graph] = []
    enumerate_graphs(EnumSpec(m, require_connected=False), out.append)
    return out
