"""Finite checks of the supporting inequalities."""

from __future__ import annotations

from sxl import check_bn, check_erdos_gallai, check_rst_lemma
from sxl.verify import rotation_suite

eg = check_erdos_gallai(8)
print("Erdos-Gallai:", eg.checked, "graphs,", len(eg.violations), "violations,", len(eg.equality_cases), "tight")

rst = check_rst_lemma(200, mode="report_only")
print("R_{s,t} below ZLS:", rst.checked, "pairs, violations", [(v["s"], v["t"]) for v in rst.violations])
rst8 = check_rst_lemma(200, m_min=8)
print("   from m=8:", "ok" if rst8.ok else "FAILED", "min gap", round(rst8.min_gap, 5), "at", rst8.min_gap_at)

bn = check_bn(8, 2)
print("b_n(r=2):", bn.checked, "graphs, ok" if bn.ok else "graphs, FAILED")

rot = rotation_suite(trials=200, seed=1)
print("rotation:", rot.trials, "trials, min increase", f"{rot.min_increase:.3g}", "failures", len(rot.failures))
