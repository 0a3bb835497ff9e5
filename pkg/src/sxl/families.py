"""Named graph families and their text syntax.

The text syntax is shared by the CLI and by forbidden-pattern arguments::

    K5  E4  P4  C6  C5+  S4  K1,4  K{2,3}  K{2,2,2}  V5  F3  B4  W7
    R{2,3}  kj{k=3,b=10}  ext{k=3,m=33}  fixture:G1  fixture:D3{l=2}  3K2

A leading integer means that many disjoint copies.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import combinations

from .errors import DivisibilityError, InvalidParameter, VertexLimitExceeded
from .graph import MAX_VERTICES, Graph, build_graph, disjoint_union, empty_graph, join, union_many

KINDS = (
    "complete", "empty", "path", "cycle", "star", "bipartite", "multipartite",
    "chorded_cycle", "fan", "friendship", "book", "wheel", "rst", "kk_join_indep",
    "extremal", "fixture",
)

FIXTURES = ("G1", "G2") + tuple(f"D{i}" for i in range(1, 13))


@dataclass(frozen=True)
class FamilySpec:
    kind: str
    args: tuple[int, ...] = ()
    name: str | None = None
    params: tuple[tuple[str, int], ...] = ()
    copies: int = 1

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidParameter(f"unknown family kind {self.kind!r}")

    def param(self, key: str, default: int) -> int:
        return dict(self.params).get(key, default)

    def __str__(self) -> str:
        return to_text(self)


# ---------------------------------------------------------------- basic families

def complete(n: int) -> Graph:
    return build_graph(n, combinations(range(n), 2))


def path(n: int) -> Graph:
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise InvalidParameter("a cycle needs at least 3 vertices")
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_multipartite(parts: tuple[int, ...]) -> Graph:
    if not parts or any(p < 1 for p in parts):
        raise InvalidParameter("part sizes must be positive")
    out = empty_graph(parts[0])
    for p in parts[1:]:
        out = join(out, empty_graph(p))
    return out


def star(s: int) -> Graph:
    return complete_multipartite((1, s))


def chorded_cycle(k: int) -> Graph:
    """C_k plus the chord {0, 2} between two vertices at distance two."""
    if k < 4:
        raise InvalidParameter("C_k^+ needs k >= 4")
    return cycle(k).add_edge(0, 2)


def fan(k: int) -> Graph:
    """V_k = K_1 v P_{k-1}; vertex 0 is the hub, 1..k-1 the path in order."""
    if k < 3:
        raise InvalidParameter("fan V_k needs k >= 3")
    return join(complete(1), path(k - 1))


def friendship(k: int) -> Graph:
    """F_k = K_1 v kK_2; the i-th triangle is {0, 2i+1, 2i+2}."""
    if k < 1:
        raise InvalidParameter("friendship F_k needs k >= 1")
    return join(complete(1), union_many([complete(2)] * k))


def book(k: int) -> Graph:
    """B_k = K_2 v kK_1 with spine {0, 1}."""
    if k < 1:
        raise InvalidParameter("book B_k needs k >= 1")
    return join(complete(2), empty_graph(k))


def wheel(k: int) -> Graph:
    """W_k = K_1 v C_{k-1}, a wheel on k vertices."""
    if k < 4:
        raise InvalidParameter("wheel W_k needs k >= 4")
    return join(complete(1), cycle(k - 1))


def rst(s: int, t: int) -> Graph:
    """R_{s,t} = K_1 v (sK_3 u tK_1): s copies of K_4 and t pendant edges at one vertex."""
    if s < 0 or t < 0 or s + t < 1:
        raise InvalidParameter("R_{s,t} needs s, t >= 0 and s + t >= 1")
    return join(complete(1), disjoint_union(union_many([complete(3)] * s), empty_graph(t)))


def kk_join_indep(k: int, b: int) -> Graph:
    if k < 1 or b < 0:
        raise InvalidParameter("K_k v bK_1 needs k >= 1, b >= 0")
    return join(complete(k), empty_graph(b))


def extremal_construction(k: int, m: int) -> Graph:
    """K_k v bK_1 with exactly m edges, b = (m - C(k,2)) / k."""
    if k < 1:
        raise InvalidParameter("k must be at least 1")
    base = k * (k - 1) // 2
    if m < base + k:
        raise InvalidParameter(f"m={m} is below C({k},2)+{k}={base + k}")
    if (m - base) % k:
        raise DivisibilityError(f"(m - C(k,2)) = {m - base} is not divisible by k={k}")
    b = (m - base) // k
    if k + b > MAX_VERTICES:
        raise VertexLimitExceeded(f"K_{k} v {b}K_1 has {k + b} vertices")
    return kk_join_indep(k, b)


def extremal_is_integral(k: int, m: int) -> bool:
    base = k * (k - 1) // 2
    return k >= 1 and m >= base + k and (m - base) % k == 0


# ---------------------------------------------------------------- figure fixtures

def _with_leaves(n: int, edges: list[tuple[int, int]], arms: dict[int, int]) -> Graph:
    edges = list(edges)
    nxt = n
    for v, count in arms.items():
        for _ in range(count):
            edges.append((v, nxt))
            nxt += 1
    return build_graph(nxt, edges)


def _double_apex(t: int, apex_edge: bool, arms: dict[int, int]) -> Graph:
    # apexes 0, 1; T = 2..t+1 joined to both apexes
    edges = [(a, 2 + i) for i in range(t) for a in (0, 1)]
    if apex_edge:
        edges.append((0, 1))
    return _with_leaves(2 + t, edges, arms)


_U = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]  # K_4 on u1..u4


def fixture(name: str, params: dict[str, int] | None = None) -> Graph:
    """Fixed small graphs used as worked cases.

    ``G1``/``G2`` are fixed.  ``D1``..``D12`` are the components H* with a
    degree-one vertex; pendant arms default to 3 leaves and the shared side
    ``t`` to 4, the smallest sizes where every drawn ellipsis hides a vertex.
    Parameters: ``l`` (or ``l1``/``l2``) arm sizes, ``t`` shared-side size.
    """
    p = dict(params or {})
    for key, val in p.items():
        if key not in ("l", "l1", "l2", "t") or val < 1:
            raise InvalidParameter(f"bad fixture parameter {key}={val}")
    l1 = p.get("l1", p.get("l", 3))
    l2 = p.get("l2", p.get("l", 3))
    t = p.get("t", 4)
    if name == "G1":
        # K_4 on 0..3; vertex 3 also sees 4, 5; vertex 6 sees 2, 4, 5
        return build_graph(7, _U + [(3, 4), (3, 5), (6, 2), (6, 4), (6, 5)])
    if name == "G2":
        return build_graph(8, _U + [(3, 4), (3, 5), (3, 7), (6, 2), (6, 4), (6, 5)])
    if name == "D1":
        return _double_apex(t, True, {0: l1, 1: l2})
    if name == "D2":
        return _double_apex(t, False, {0: l1, 1: l2})
    if name == "D3":
        return _with_leaves(4, _U, {0: l1})
    if name == "D4":
        return _with_leaves(4, [(0, 1), (0, 2), (1, 2), (2, 3), (1, 3)], {0: l1})
    if name == "D5":
        return _with_leaves(4, [(0, 1), (0, 2), (0, 3), (2, 3), (1, 3)], {0: l1})
    if name == "D6":
        return _with_leaves(4, [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3)], {0: l1, 1: l2})
    if name == "D7":
        return _with_leaves(4, [(0, 2), (1, 2), (0, 3), (1, 3)], {0: l1, 1: l2})
    if name == "D8":
        return _with_leaves(3, [(0, 1), (0, 2), (1, 2)], {0: l1, 1: l2})
    if name == "D9":
        return _with_leaves(4, [(0, 1), (0, 2), (1, 2), (0, 3)], {3: l1})
    if name == "D10":
        return _with_leaves(3, [(0, 2), (1, 2)], {0: l1, 1: l2})
    if name == "D11":
        return _with_leaves(2, [(0, 1)], {0: l1, 1: l2})
    if name == "D12":
        return _double_apex(t, False, {0: l1})
    raise InvalidParameter(f"unknown fixture {name!r}; expected one of {', '.join(FIXTURES)}")


# ---------------------------------------------------------------- spec dispatch

def make(spec: FamilySpec) -> Graph:
    a = spec.args
    k = spec.kind
    if k == "complete":
        g = complete(a[0])
    elif k == "empty":
        g = empty_graph(a[0])
    elif k == "path":
        if a[0] < 1:
            raise InvalidParameter("P_n needs n >= 1")
        g = path(a[0])
    elif k == "cycle":
        g = cycle(a[0])
    elif k == "star":
        g = star(a[0])
    elif k in ("bipartite", "multipartite"):
        g = complete_multipartite(tuple(a))
    elif k == "chorded_cycle":
        g = chorded_cycle(a[0])
    elif k == "fan":
        g = fan(a[0])
    elif k == "friendship":
        g = friendship(a[0])
    elif k == "book":
        g = book(a[0])
    elif k == "wheel":
        g = wheel(a[0])
    elif k == "rst":
        g = rst(a[0], a[1])
    elif k == "kk_join_indep":
        g = kk_join_indep(a[0], a[1])
    elif k == "extremal":
        g = extremal_construction(a[0], a[1])
    else:
        g = fixture(spec.name or "", dict(spec.params))
    if spec.copies < 1:
        raise InvalidParameter("copy count must be positive")
    if spec.copies > 1:
        if g.n * spec.copies > MAX_VERTICES:
            raise VertexLimitExceeded(f"{spec.copies} copies of a {g.n}-vertex graph")
        g = union_many([g] * spec.copies)
    return g


_SIMPLE = {"K": "complete", "E": "empty", "P": "path", "C": "cycle", "S": "star",
           "V": "fan", "F": "friendship", "B": "book", "W": "wheel"}


def _kv(body: str, keys: tuple[str, ...], text: str) -> dict[str, int]:
    out = {}
    for item in filter(None, (s.strip() for s in body.split(","))):
        key, sep, val = item.partition("=")
        if not sep or key.strip() not in keys or not val.strip().lstrip("-").isdigit():
            raise InvalidParameter(f"cannot parse {text!r}")
        out[key.strip()] = int(val)
    return out


def parse_family(text: str) -> FamilySpec:
    """Parse the compact family syntax (see module docstring)."""
    s = text.strip()
    copies = 1
    mt = re.fullmatch(r"(\d+)\s*(.+)", s)
    if mt and not s.startswith("fixture") and re.match(r"[A-Za-z]", mt.group(2)):
        copies, s = int(mt.group(1)), mt.group(2)
        if copies < 1:
            raise InvalidParameter(f"bad copy count in {text!r}")
    spec = _parse_single(s, text)
    if copies != 1:
        spec = FamilySpec(spec.kind, spec.args, spec.name, spec.params, copies)
    return spec


def _parse_single(s: str, text: str) -> FamilySpec:
    if s.startswith("fixture:"):
        mt = re.fullmatch(r"fixture:(G1|G2|D\d{1,2})(?:\{(.*)\})?", s)
        if not mt or mt.group(1) not in FIXTURES:
            raise InvalidParameter(f"unknown fixture in {text!r}")
        params = _kv(mt.group(2) or "", ("l", "l1", "l2", "t"), text)
        return FamilySpec("fixture", (), mt.group(1), tuple(sorted(params.items())))
    mt = re.fullmatch(r"ext\{(.*)\}", s)
    if mt:
        kv = _kv(mt.group(1), ("k", "m"), text)
        if set(kv) != {"k", "m"}:
            raise InvalidParameter(f"ext needs k and m: {text!r}")
        return FamilySpec("extremal", (kv["k"], kv["m"]))
    mt = re.fullmatch(r"kj\{(.*)\}", s)
    if mt:
        kv = _kv(mt.group(1), ("k", "b"), text)
        if set(kv) != {"k", "b"}:
            raise InvalidParameter(f"kj needs k and b: {text!r}")
        return FamilySpec("kk_join_indep", (kv["k"], kv["b"]))
    mt = re.fullmatch(r"R\{\s*(\d+)\s*,\s*(\d+)\s*\}", s)
    if mt:
        return FamilySpec("rst", (int(mt.group(1)), int(mt.group(2))))
    mt = re.fullmatch(r"K\{([\d,\s]+)\}|K(\d+),(\d+)", s)
    if mt:
        body = mt.group(1) if mt.group(1) is not None else f"{mt.group(2)},{mt.group(3)}"
        parts = tuple(int(x) for x in body.split(",") if x.strip())
        if len(parts) < 2:
            raise InvalidParameter(f"multipartite needs at least two parts: {text!r}")
        return FamilySpec("bipartite" if len(parts) == 2 else "multipartite", parts)
    mt = re.fullmatch(r"C(\d+)\+", s)
    if mt:
        return FamilySpec("chorded_cycle", (int(mt.group(1)),))
    mt = re.fullmatch(r"([KEPCSVFBW])(\d+)", s)
    if mt:
        return FamilySpec(_SIMPLE[mt.group(1)], (int(mt.group(2)),))
    raise InvalidParameter(f"cannot parse family spec {text!r}")


def to_text(spec: FamilySpec) -> str:
    k, a = spec.kind, spec.args
    inv = {v: key for key, v in _SIMPLE.items()}
    if k in inv:
        body = f"{inv[k]}{a[0]}"
    elif k == "chorded_cycle":
        body = f"C{a[0]}+"
    elif k in ("bipartite", "multipartite"):
        body = "K{" + ",".join(map(str, a)) + "}"
    elif k == "rst":
        body = f"R{{{a[0]},{a[1]}}}"
    elif k == "kk_join_indep":
        body = f"kj{{k={a[0]},b={a[1]}}}"
    elif k == "extremal":
        body = f"ext{{k={a[0]},m={a[1]}}}"
    else:
        body = f"fixture:{spec.name}"
        if spec.params:
            body += "{" + ",".join(f"{key}={v}" for key, v in spec.params) + "}"
    return body if spec.copies == 1 else f"{spec.copies}{body}"


def make_from_text(text: str) -> Graph:
    return make(parse_family(text))
