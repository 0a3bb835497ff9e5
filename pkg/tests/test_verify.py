from __future__ import annotations

import csv
import io
import json
import math
import random

import jsonschema
import numpy as np
import pytest

from sxl.enumeration import are_isomorphic, canonical_form, parse_graph6
from sxl.errors import BoundViolation, InvalidRotation, InvalidWeights, SizeLimitExceeded
from sxl.families import (
    complete, complete_multipartite, cycle, fixture, friendship, kk_join_indep, path, rst, star,
)
from sxl.graph import build_graph, join
from sxl.patterns import parse_pattern
from sxl.spectral import BoundKind, parse_bound, spectral_radius
from sxl.verify import (
    REPORT_SCHEMA, ScanSpec, audit_eigen_identity, check_bn, check_construction, check_erdos_gallai,
    check_rst_lemma, compute_eta, erdos_gallai_bound, eta_component, rotate_edges, rotation_suite, scan,
)


def zls_scan(forbid, lo, hi, **kw):
    return scan(ScanSpec(parse_pattern(forbid), BoundKind("zls"), (lo, hi), predicted_extremal=2, **kw))


def test_v5_scan_examples():
    report = zls_scan("V5", 8, 9)
    r9 = report.record(9)
    assert r9.max_lambda == pytest.approx((1 + math.sqrt(33)) / 2, abs=1e-12)
    assert r9.uniqueness and r9.equality_achieved and r9.extremal_matches_prediction
    (form,) = r9.argmax_canonical_forms
    assert are_isomorphic(parse_graph6(form), kk_join_indep(2, 4))
    r8 = report.record(8)
    assert not r8.equality_achieved and r8.margin > 0
    assert r8.predicted_forms == []


def test_c5_scan_matches_v5():
    assert zls_scan("C5", 9, 9).record(9).argmax_canonical_forms == zls_scan("V5", 9, 9).record(9).argmax_canonical_forms


def test_nosal_equality_classes_m6():
    report = scan(ScanSpec(parse_pattern("K3"), BoundKind("nosal"), (6, 6)))
    forms = report.record(6).equality_forms
    expected = {canonical_form(complete_multipartite(p)) for p in ((1, 6), (2, 3))}
    assert {canonical_form(parse_graph6(f)) for f in forms} == expected


def test_assert_mode_raises_with_counterexample():
    # the F2 theorem needs m >= 8; K_4 breaks the bound at m = 6
    with pytest.raises(BoundViolation) as info:
        zls_scan("F2", 6, 6)
    assert are_isomorphic(parse_graph6(info.value.counterexample), complete(4))
    report = zls_scan("F2", 6, 6, mode="report_only")
    assert report.record(6).violations and not report.ok


def test_unpredicted_equality_is_a_violation():
    # Nosal equality at m = 6 has two classes; predicting only one must fail
    spec = ScanSpec(parse_pattern("K3"), BoundKind("nosal"), (6, 6),
                    predicted_extremal=lambda m: [complete_multipartite((2, 3))])
    with pytest.raises(BoundViolation):
        scan(spec)


def test_scan_spec_caps():
    with pytest.raises(SizeLimitExceeded):
        ScanSpec(parse_pattern("K3"), BoundKind("nosal"), (1, 15))


def test_report_serialisation():
    report = zls_scan("V5", 8, 9)
    doc = json.loads(report.to_json())
    jsonschema.validate(doc, REPORT_SCHEMA)
    assert [r["m"] for r in doc["records"]] == [8, 9]
    rows = list(csv.DictReader(io.StringIO(report.to_csv())))
    assert [int(r["m"]) for r in rows] == [8, 9]
    assert float(rows[1]["max_lambda"]) == report.record(9).max_lambda
    assert report.to_json() == zls_scan("V5", 8, 9).to_json()


def test_scan_threads_do_not_change_output():
    spec = ScanSpec(parse_pattern("C4"), BoundKind("nosal"), (5, 7), mode="report_only")
    assert scan(spec, threads=1).to_json() == scan(spec, threads=2).to_json()


def test_superset_maxima_coincide():
    for m in (8, 9, 10):
        best = [zls_scan(f, m, m).record(m).max_lambda for f in ("V5", "C5+", "C5", "F2")]
        assert max(best) - min(best) <= 1e-12


def test_audit_examples():
    assert audit_eigen_identity(kk_join_indep(2, 4)) <= 1e-10
    assert audit_eigen_identity(cycle(5)) <= 1e-10
    assert audit_eigen_identity(fixture("G2")) <= 1e-10


def test_eta_triangle_and_star():
    rng = random.Random(3)
    g = fixture("G1")
    (tri,) = compute_eta(g).components
    assert tri.kind == "triangle" and tri.eta2 == -3.0
    for s in range(1, 21):
        h = star(s)
        w = [rng.uniform(1e-9, 1.0) for _ in range(h.n)]
        eta1, eta2 = eta_component(h, w)
        assert eta1 <= -1 + 1e-12
        if s >= 2:
            assert eta2 < -2


def test_eta2_of_single_edge_can_exceed_minus_two():
    # K_{1,1}: eta2 = -1 - w_a - w_b, below -2 only when w_a + w_b > 1
    eta1, eta2 = eta_component(star(1), [0.1, 0.1])
    assert eta2 == pytest.approx(-1.2)
    assert eta_component(star(1), [0.9, 0.9])[1] < -2


def test_eta_weights_validated():
    g = friendship(2)
    with pytest.raises(InvalidWeights):
        compute_eta(g, [1, 0.5, 0.5, 0, 0.5])
    with pytest.raises(InvalidWeights):
        compute_eta(g, [1, 0.5, 1.5, 0.5, 0.5])
    with pytest.raises(InvalidWeights):
        compute_eta(g, [1, 0.5])
    rep = compute_eta(g, [1, 0.5, 0.5, 0.5, 0.5])
    assert rep.center == 0 and [c.kind for c in rep.components] == ["star", "star"]


def test_eta_matches_direct_formula():
    g = join(complete(1), build_graph(6, [(0, 1), (1, 2), (2, 0), (3, 4)]))
    res = spectral_radius(g)
    x = res.perron / res.perron[res.extremal_vertex]
    rep = compute_eta(g)
    assert rep.center == 0
    tri, edge = rep.components
    assert tri.vertices == (1, 2, 3) and edge.kind == "star"
    assert edge.eta1 == pytest.approx(-1.0)
    assert edge.eta2 == pytest.approx(-x[4] - x[5] - 1)


def test_rotation_examples():
    p4 = path(4)  # a=0, b=1, c=2, d=3
    x = spectral_radius(p4).perron
    assert x[1] >= x[2] - 1e-15
    g = rotate_edges(p4, 1, 2, {3})
    assert g.m == p4.m and are_isomorphic(g, star(3))
    assert spectral_radius(g).lam > spectral_radius(p4).lam
    with pytest.raises(InvalidRotation):
        rotate_edges(p4, 1, 2, set())
    with pytest.raises(InvalidRotation):
        rotate_edges(p4, 0, 2, {1})  # 1 is already a neighbour of 0
    with pytest.raises(InvalidRotation):
        rotate_edges(p4, 2, 2, {3})
    # moving every leaf of K_{1,4} onto one leaf: x_leaf < x_centre, lemma silent
    s = star(4)
    xs = spectral_radius(s).perron
    h = rotate_edges(s, 1, 0, {2, 3, 4})
    assert xs[1] < xs[0]
    assert are_isomorphic(h, s)
    assert spectral_radius(h).lam == pytest.approx(spectral_radius(s).lam)


def test_rotation_suite_small():
    rep = rotation_suite(trials=60, seed=5)
    assert rep.trials == 60 and not rep.failures and rep.min_increase > 1e-12


def test_erdos_gallai_examples():
    assert erdos_gallai_bound(5, 1) == 4
    assert erdos_gallai_bound(3, 1) == 3
    assert all(erdos_gallai_bound(n, 0) == 0 for n in range(1, 10))
    rep = check_erdos_gallai(7)
    assert rep.ok and rep.checked > 0
    forms = {canonical_form(parse_graph6(f)) for f in rep.equality_cases}
    # the two extremal families at k = 1: K_3 and the star K_1 v (n-1)K_1
    assert canonical_form(complete(3)) in forms
    assert canonical_form(star(4)) in forms


def test_rst_examples():
    zls = lambda m: (1 + math.sqrt(4 * m - 3)) / 2  # noqa: E731
    assert spectral_radius(rst(1, 4)).lam < zls(10)
    assert spectral_radius(rst(2, 1)).lam < zls(13) == 4
    assert spectral_radius(rst(1, 0)).lam == pytest.approx(3.0)
    # t = 0 failures are reported, never raised
    rep = check_rst_lemma(6, t_min=0)
    assert [(v["s"], v["t"]) for v in rep.violations] == [(1, 0)]


def test_rst_lemma_from_m8():
    rep = check_rst_lemma(200, m_min=8)
    assert rep.ok and rep.min_gap > 1e-10 and rep.min_gap_at == [1, 2]


def test_rst_small_case_is_recorded():
    rep = check_rst_lemma(20, mode="report_only")
    assert [(v["s"], v["t"]) for v in rep.violations] == [(1, 1)]
    with pytest.raises(BoundViolation):
        check_rst_lemma(20)


def test_rst_closed_form_oracle():
    # equitable partition {apex}, {triangle vertices}, {pendants}:
    # lambda = 3s / (lambda - 2) + t / lambda
    for s in range(1, 8):
        for t in range(0, 12):
            lam = spectral_radius(rst(s, t)).lam
            assert lam == pytest.approx(3 * s / (lam - 2) + t / lam, abs=1e-9)


def test_bn_checks():
    rep = check_bn(8, 2)
    assert rep.ok
    forms = {canonical_form(parse_graph6(f)) for f in rep.equality_cases}
    for parts in ((1, 2), (2, 2), (1, 5), (2, 3), (2, 4), (1, 8)):
        assert canonical_form(complete_multipartite(parts)) in forms
    rep3 = check_bn(7, 3)
    assert rep3.ok and rep3.notes["mode"] == "report_only"


def test_check_construction_rows():
    rows = check_construction("F3", parse_bound("f3"), [kk_join_indep(3, b) for b in (10, 20)])
    assert all(r["free"] and r["matches"] for r in rows)
    rows = check_construction("W6", parse_bound("wheel-even"), [complete_multipartite((t, t, t)) for t in (1, 2, 3)])
    assert all(r["free"] and r["matches"] for r in rows)


def test_audit_random_graphs():
    rng = np.random.default_rng(0)
    done = 0
    while done < 50:
        n = int(rng.integers(2, 21))
        a = np.triu(rng.random((n, n)) < 0.4, 1)
        g = build_graph(n, list(zip(*np.nonzero(a))))
        if g.is_connected():
            assert audit_eigen_identity(g) <= 1e-8
            done += 1


def test_exceeding_the_bound_is_not_equality():
    # at m = 2 the F3 bound is 1 while P_3 has lambda sqrt(2)
    rec = scan(ScanSpec(parse_pattern("F3"), parse_bound("f3"), (2, 3), mode="report_only")).record(2)
    assert rec.margin < 0 and rec.violations
    assert rec.equality_forms == [] and not rec.equality_achieved
