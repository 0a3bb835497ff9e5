"""Exhaustive checks of spectral extremal bounds at desk scale.

A scan enumerates the connected graphs with m edges, keeps the F-free ones
and compares their spectral radius with a closed-form bound.  Equality is
never decided by floating point alone: graphs within ``NEAR_TOL`` of the
bound are compared with the predicted extremal graphs by isomorphism.
"""

from __future__ import annotations

import csv
import io
import json
import math
import random
from dataclasses import asdict, dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from .enumeration import (
    EnumSpec, MAX_ENUM_EDGES, all_graphs, canonical_graph, connected_graphs,
    enumerate_graphs, to_graph6_str,
)
from .errors import (
    BoundViolation, DivisibilityError, InvalidParameter, InvalidRotation, InvalidWeights, SizeLimitExceeded,
)
from .families import complete, extremal_construction, rst
from .graph import Graph, build_graph, induced_subgraph, iter_bits, neighborhood_partition
from .patterns import Pattern, as_pattern, is_free, max_matching_size
from .spectral import BoundKind, bn_check, bound_value, spectral_radius

NEAR_TOL = 1e-8       # window for argmax / equality candidates
VIOLATION_TOL = 1e-9  # slack before lambda > bound counts as a violation
SCHEMA_ID = "sxl.scan/1"

Prediction = Callable[[int], Sequence[Graph]]


@dataclass(frozen=True)
class ScanSpec:
    """One theorem-style statement to scan.

    ``predicted_extremal`` is either k (the join K_k v bK_1 with m edges, when
    integral) or a callable returning the predicted equality graphs for m.
    """

    forbid: Pattern
    bound: BoundKind
    m_range: tuple[int, int]
    predicted_extremal: int | Prediction | None = None
    mode: str = "assert"

    def __post_init__(self):
        lo, hi = self.m_range
        if lo < 1 or hi < lo:
            raise InvalidParameter(f"bad m range {self.m_range}")
        if hi > MAX_ENUM_EDGES:
            raise SizeLimitExceeded(f"m range exceeds the enumeration cap {MAX_ENUM_EDGES}")
        if self.mode not in ("assert", "report_only"):
            raise InvalidParameter("mode must be 'assert' or 'report_only'")

    def predicted_graphs(self, m: int) -> list[Graph]:
        p = self.predicted_extremal
        if p is None:
            return []
        if isinstance(p, int):
            try:
                return [extremal_construction(p, m)]
            except (DivisibilityError, InvalidParameter):
                return []
        return list(p(m))

    def echo(self) -> dict:
        p = self.predicted_extremal
        return {
            "forbid": str(self.forbid),
            "bound": str(self.bound),
            "m_range": list(self.m_range),
            "predicted_extremal": p if isinstance(p, int) or p is None else getattr(p, "__name__", "custom"),
            "mode": self.mode,
        }


@dataclass
class ScanRecord:
    m: int
    graph_count: int
    free_count: int
    max_lambda: float | None
    bound: float
    margin: float | None
    argmax_canonical_forms: list[str]
    equality_forms: list[str]
    predicted_forms: list[str]
    equality_achieved: bool
    extremal_matches_prediction: bool | None
    uniqueness: bool
    argmax_connected: bool
    violations: list[str] = field(default_factory=list)


@dataclass
class ScanReport:
    spec: dict
    records: list[ScanRecord]

    @property
    def ok(self) -> bool:
        return all(not r.violations for r in self.records)

    def record(self, m: int) -> ScanRecord:
        for r in self.records:
            if r.m == m:
                return r
        raise KeyError(m)

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA_ID,
            "spec": self.spec,
            "records": [asdict(r) for r in self.records],
            "counterexamples": sorted({g for r in self.records for g in r.violations}),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for r in self.records:
            w.writerow([
                r.m, r.graph_count, r.free_count, _num(r.max_lambda), _num(r.bound), _num(r.margin),
                " ".join(r.argmax_canonical_forms), " ".join(r.equality_forms), r.equality_achieved,
                "" if r.extremal_matches_prediction is None else r.extremal_matches_prediction,
                r.uniqueness, len(r.violations),
            ])
        return buf.getvalue()


CSV_COLUMNS = [
    "m", "graph_count", "free_count", "max_lambda", "bound", "margin", "argmax_canonical_forms",
    "equality_forms", "equality_achieved", "extremal_matches_prediction", "uniqueness", "violations",
]

_NUMBER_OR_NULL = {"type": ["number", "null"]}
_G6_LIST = {"type": "array", "items": {"type": "string"}}

REPORT_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "type": "object",
    "required": ["schema", "spec", "records", "counterexamples"],
    "properties": {
        "schema": {"const": SCHEMA_ID},
        "spec": {
            "type": "object",
            "required": ["forbid", "bound", "m_range", "mode"],
            "properties": {
                "forbid": {"type": "string"},
                "bound": {"type": "string"},
                "m_range": {"type": "array", "items": {"type": "integer"}, "minItems": 2, "maxItems": 2},
                "predicted_extremal": {"type": ["integer", "string", "null"]},
                "mode": {"enum": ["assert", "report_only"]},
            },
        },
        "counterexamples": _G6_LIST,
        "records": {
            "type": "array",
            "items": {
                "type": "object",
                "required": [
                    "m", "graph_count", "free_count", "max_lambda", "bound", "margin", "argmax_canonical_forms",
                    "equality_forms", "predicted_forms", "equality_achieved",
                    "extremal_matches_prediction", "uniqueness", "argmax_connected", "violations",
                ],
                "additionalProperties": False,
                "properties": {
                    "m": {"type": "integer", "minimum": 1},
                    "graph_count": {"type": "integer", "minimum": 0},
                    "free_count": {"type": "integer", "minimum": 0},
                    "max_lambda": _NUMBER_OR_NULL,
                    "bound": {"type": "number"},
                    "margin": _NUMBER_OR_NULL,
                    "argmax_canonical_forms": _G6_LIST,
                    "equality_forms": _G6_LIST,
                    "predicted_forms": _G6_LIST,
                    "equality_achieved": {"type": "boolean"},
                    "extremal_matches_prediction": {"type": ["boolean", "null"]},
                    "uniqueness": {"type": "boolean"},
                    "argmax_connected": {"type": "boolean"},
                    "violations": _G6_LIST,
                },
            },
        },
    },
}


def _num(x: float | None) -> str:
    return "" if x is None else repr(x)


def canonical_g6(g: Graph) -> str:
    """graph6 of the canonically labelled graph: a readable canonical form."""
    return to_graph6_str(canonical_graph(g))


def graphs_with_edges(m: int, threads: int = 1) -> Iterable[Graph]:
    if m <= 12:
        return connected_graphs(m)
    out: list[Graph] = []
    enumerate_graphs(EnumSpec(m), out.append, threads=threads)
    return out


def _scan_level(spec: ScanSpec, m: int, graphs: Iterable[Graph]) -> ScanRecord:
    bound = bound_value(spec.bound, m)
    pattern = spec.forbid
    total = 0
    free = 0
    best = -math.inf
    near: list[tuple[float, Graph]] = []
    violations: list[str] = []
    for g in graphs:
        total += 1
        if not is_free(g, pattern):
            continue
        free += 1
        lam = spectral_radius(g).lam
        if lam > bound + VIOLATION_TOL:
            violations.append(to_graph6_str(g))
            if spec.mode == "assert":
                raise BoundViolation(
                    f"{pattern}-free graph with m={m} has lambda={lam!r} > bound {bound!r}",
                    counterexample=to_graph6_str(g), m=m, lam=lam, bound=bound,
                )
        if lam >= best - NEAR_TOL or lam >= bound - NEAR_TOL:
            near.append((lam, g))
            best = max(best, lam)
    argmax = sorted({canonical_g6(g) for lam, g in near if lam >= best - NEAR_TOL})
    equal_graphs = [g for lam, g in near if abs(lam - bound) <= NEAR_TOL]
    equality = sorted({canonical_g6(g) for g in equal_graphs})
    predicted = [h for h in spec.predicted_graphs(m) if h.m == m and h.is_connected() and is_free(h, pattern)]
    predicted_forms = sorted({canonical_g6(h) for h in predicted})
    has_prediction = spec.predicted_extremal is not None
    if has_prediction:
        unexpected = [f for f in equality if f not in predicted_forms]
        if unexpected and spec.mode == "assert":
            raise BoundViolation(
                f"{pattern}-free graph with m={m} attains the bound but is not the predicted extremal graph",
                counterexample=unexpected[0], m=m,
            )
        achieved = any(f in predicted_forms for f in equality)
        matches = bool(predicted_forms) and equality == predicted_forms
    else:
        achieved = bool(equality)
        matches = None
    connected = all(g.is_connected() for lam, g in near if lam >= best - NEAR_TOL)
    return ScanRecord(
        m=m,
        graph_count=total,
        free_count=free,
        max_lambda=None if free == 0 else best,
        bound=bound,
        margin=None if free == 0 else bound - best,
        argmax_canonical_forms=argmax,
        equality_forms=equality,
        predicted_forms=predicted_forms,
        equality_achieved=achieved,
        extremal_matches_prediction=matches,
        uniqueness=len(argmax) == 1,
        argmax_connected=connected,
        violations=violations,
    )


def scan(spec: ScanSpec, threads: int = 1) -> ScanReport:
    """Scan every m in the range; raises BoundViolation in assert mode."""
    records = []
    lo, hi = spec.m_range
    for m in range(lo, hi + 1):
        records.append(_scan_level(spec, m, graphs_with_edges(m, threads)))
    return ScanReport(spec.echo(), records)


# ---------------------------------------------------------------- eigen identity and eta

def audit_eigen_identity(g: Graph) -> float:
    """|lambda^2 x_u* - (|U| x_u* + sum_U d_U(u) x_u + sum_W d_U(w) x_w)| at the extremal vertex."""
    if not g.is_connected():
        raise InvalidParameter("eigen identity audit needs a connected graph")
    res = spectral_radius(g)
    x = res.perron
    center = res.extremal_vertex
    part = neighborhood_partition(g, center)
    u_mask = g.adj[center]
    lhs = res.lam ** 2 * x[center]
    rhs = len(part.U) * x[center]
    rhs += sum((g.adj[u] & u_mask).bit_count() * x[u] for u in sorted(part.U))
    rhs += sum((g.adj[w] & u_mask).bit_count() * x[w] for w in sorted(part.W))
    return float(abs(lhs - rhs))


@dataclass(frozen=True)
class ComponentEta:
    vertices: tuple[int, ...]
    eta1: float
    eta2: float
    kind: str  # triangle, star or other


@dataclass(frozen=True)
class EtaReport:
    center: int
    components: tuple[ComponentEta, ...]


def _component_kind(h: Graph) -> str:
    if h.n == 3 and h.m == 3:
        return "triangle"
    deg = sorted(h.degrees())
    if h.m == h.n - 1 and deg[-1] == h.n - 1:
        return "star"
    return "other"


def compute_eta(g: Graph, weights: Sequence[float] | None = None, center: int | None = None) -> EtaReport:
    """eta_c(H) = sum_{u in H} (d_H(u) - c) w_u - e(H) for c = 1, 2 and each
    non-trivial component H of G[N(center)].

    Without weights the Perron ratios x_u / x_u* are used (G must be
    connected) and the centre defaults to the extremal vertex.
    """
    if weights is None:
        if not g.is_connected():
            raise InvalidParameter("Perron weights need a connected graph")
        res = spectral_radius(g)
        w = res.perron / res.perron[res.extremal_vertex]
        if center is None:
            center = res.extremal_vertex
    else:
        w = np.asarray(weights, dtype=float)
        if w.shape != (g.n,):
            raise InvalidWeights(f"expected {g.n} weights, got shape {w.shape}")
        if np.any(w <= 0) or np.any(w > 1):
            raise InvalidWeights("weights must lie in (0, 1]")
        if center is None:
            center = int(np.flatnonzero(w == w.max())[0])
    part = neighborhood_partition(g, center)
    comps = []
    for comp in part.nontrivial_components:
        verts = sorted(comp)
        h = induced_subgraph(g, verts)
        deg = h.degrees()
        eta1 = sum((deg[i] - 1) * w[v] for i, v in enumerate(verts)) - h.m
        eta2 = sum((deg[i] - 2) * w[v] for i, v in enumerate(verts)) - h.m
        comps.append(ComponentEta(tuple(verts), float(eta1), float(eta2), _component_kind(h)))
    return EtaReport(center, tuple(comps))


def eta_component(h: Graph, weights: Sequence[float]) -> tuple[float, float]:
    """(eta1, eta2) of a standalone component ``h`` with per-vertex weights."""
    host_edges = [(0, u + 1) for u in range(h.n)] + [(u + 1, v + 1) for u, v in h.edges()]
    host = build_graph(h.n + 1, host_edges)
    report = compute_eta(host, [1.0, *weights], center=0)
    (c,) = report.components
    return c.eta1, c.eta2


# ---------------------------------------------------------------- edge rotation

def rotate_edges(g: Graph, vi: int, vj: int, S: Iterable[int]) -> Graph:
    """Move the edges v_j v (v in S) over to v_i."""
    s = sorted(set(S))
    if not s:
        raise InvalidRotation("S must be non-empty")
    if vi == vj or not (0 <= vi < g.n and 0 <= vj < g.n):
        raise InvalidRotation("v_i and v_j must be distinct vertices")
    if vi in s:
        raise InvalidRotation("v_i cannot be in S")
    for v in s:
        if not g.has_edge(vj, v) or g.has_edge(vi, v):
            raise InvalidRotation(f"vertex {v} is not in N(v_j) \\ N(v_i)")
    rows = list(g.adj)
    for v in s:
        rows[vj] &= ~(1 << v)
        rows[v] &= ~(1 << vj)
        rows[vi] |= 1 << v
        rows[v] |= 1 << vi
    return Graph(g.n, rows)


def random_connected_graph(rng: random.Random, n: int, p: float) -> Graph:
    while True:
        edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
        g = build_graph(n, edges)
        if g.is_connected():
            return g


@dataclass
class RotationReport:
    trials: int
    min_increase: float
    failures: list[dict]


def rotation_suite(trials: int = 500, n_max: int = 12, seed: int = 0) -> RotationReport:
    """Random valid rotations with x_i >= x_j; lambda must grow by > 1e-12."""
    rng = random.Random(seed)
    done = 0
    min_inc = math.inf
    failures = []
    while done < trials:
        n = rng.randint(3, n_max)
        g = random_connected_graph(rng, n, rng.uniform(0.2, 0.8))
        res = spectral_radius(g)
        x = res.perron
        options = []
        for i in range(n):
            for j in range(n):
                if i != j and x[i] >= x[j]:
                    avail = g.adj[j] & ~g.adj[i] & ~(1 << i)
                    if avail:
                        options.append((i, j, avail))
        if not options:
            continue
        i, j, avail = rng.choice(options)
        pool = list(iter_bits(avail))
        S = rng.sample(pool, rng.randint(1, len(pool)))
        lam2 = spectral_radius(rotate_edges(g, i, j, S)).lam
        inc = lam2 - res.lam
        min_inc = min(min_inc, inc)
        if not inc > 1e-12:
            failures.append({"graph": to_graph6_str(g), "vi": i, "vj": j, "S": S, "increase": inc})
        done += 1
    return RotationReport(done, min_inc, failures)


# ---------------------------------------------------------------- lemma checks

def erdos_gallai_bound(n: int, k: int) -> int:
    """Maximum edge count of a (k+1)K_2-free graph on n vertices."""
    if n < 1 or k < 0:
        raise InvalidParameter("need n >= 1 and k >= 0")
    return max(math.comb(2 * k + 1, 2), math.comb(k, 2) + (n - k) * k)


@dataclass
class LemmaReport:
    name: str
    checked: int
    violations: list[dict]
    equality_cases: list[str] = field(default_factory=list)
    min_gap: float | None = None
    min_gap_at: list[int] | None = None
    notes: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return asdict(self)


def check_erdos_gallai(m_max: int = 8) -> LemmaReport:
    """e(G) <= EG(n, nu(G)) over every graph without isolated vertices, m <= m_max."""
    if m_max > 10:
        raise InvalidParameter("Erdos-Gallai sweep is limited to m <= 10")
    checked = 0
    violations = []
    equal = []
    for m in range(1, m_max + 1):
        for g in all_graphs(m):
            nu = max_matching_size(g)
            bound = erdos_gallai_bound(g.n, nu)
            checked += 1
            if g.m > bound:
                violations.append({"graph": to_graph6_str(g), "m": g.m, "bound": bound})
            elif g.m == bound:
                equal.append(canonical_g6(g))
    return LemmaReport("erdos-gallai", checked, violations, sorted(set(equal)))


def check_rst_lemma(
    m_max: int = 200,
    s_min: int = 1,
    t_min: int = 1,
    m_min: int = 1,
    mode: str = "assert",
) -> LemmaReport:
    """lambda(R_{s,t}) < (1 + sqrt(4m - 3)) / 2 - 1e-10 with m = 6s + t.

    Only pairs with at most 64 vertices are visited.  Failures with t = 0 are
    reported but never raised.
    """
    if m_max > 300:
        raise InvalidParameter("m_max is capped at 300")
    checked = 0
    violations = []
    min_gap = math.inf
    where = None
    for s in range(max(s_min, 1), m_max // 6 + 1):
        for t in range(max(t_min, 0), m_max - 6 * s + 1):
            m = 6 * s + t
            if m < m_min or 1 + 3 * s + t > 64:
                continue
            lam = spectral_radius(rst(s, t)).lam
            gap = bound_value(BoundKind("zls"), m) - lam
            checked += 1
            if gap < min_gap:
                min_gap, where = gap, [s, t]
            if not gap > 1e-10:
                g6 = to_graph6_str(rst(s, t))
                violations.append({"s": s, "t": t, "m": m, "lambda": lam, "gap": gap, "graph": g6})
                # t = 0 lies outside the lemma's usable domain (R_{1,0} = K_4)
                if mode == "assert" and t >= 1:
                    raise BoundViolation(
                        f"lambda(R_{{{s},{t}}}) = {lam!r} is not below the bound at m={m} (gap {gap:.3e})",
                        counterexample=g6, s=s, t=t, gap=gap,
                    )
    return LemmaReport("rst", checked, violations, min_gap=min_gap, min_gap_at=where,
                       notes={"s_min": s_min, "t_min": t_min, "m_min": m_min, "m_max": m_max})


def check_bn(m_max: int = 8, r: int = 2, mode: str | None = None) -> LemmaReport:
    """lambda_1^2 + lambda_2^2 <= 2m(1 - 1/r) for K_{r+1}-free connected graphs."""
    if m_max > 10:
        raise InvalidParameter("m_max is capped at 10")
    mode = mode or ("assert" if r == 2 else "report_only")
    clique = complete(r + 1)
    checked = 0
    violations = []
    equal = []
    for m in range(1, m_max + 1):
        for g in connected_graphs(m):
            if g.n < r + 1 or not is_free(g, clique):
                continue
            lhs, rhs, holds = bn_check(g, r)
            checked += 1
            if not holds:
                item = {"graph": to_graph6_str(g), "lhs": lhs, "rhs": rhs}
                violations.append(item)
                if mode == "assert":
                    raise BoundViolation(
                        f"lambda1^2+lambda2^2 = {lhs!r} > {rhs!r} for a K_{r + 1}-free graph",
                        counterexample=item["graph"], lhs=lhs, rhs=rhs,
                    )
            elif lhs >= rhs - 1e-9:
                equal.append(canonical_g6(g))
    return LemmaReport(f"bn:{r}", checked, violations, sorted(set(equal)), notes={"mode": mode})


def check_construction(pattern, bound: BoundKind, graphs: Iterable[Graph]) -> list[dict]:
    """For each conjectured extremal graph: pattern-free and lambda equal to the bound."""
    pat = as_pattern(pattern)
    rows = []
    for g in graphs:
        lam = spectral_radius(g).lam
        b = bound_value(bound, g.m)
        rows.append({
            "graph": to_graph6_str(g), "m": g.m, "free": is_free(g, pat),
            "lambda": lam, "bound": b, "matches": abs(lam - b) <= 1e-9,
        })
    return rows
