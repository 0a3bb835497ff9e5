"""Isomorph-free enumeration by edge count, graph6 round trips."""

from __future__ import annotations

from sxl import all_graphs, connected_graphs, parse_graph6, spectral_radius, to_graph6_str

for m in range(1, 9):
    print(f"m={m}: {len(connected_graphs(m)):4d} connected, {len(all_graphs(m)):4d} without isolated vertices")

best = max(connected_graphs(7), key=lambda g: spectral_radius(g).lam)
code = to_graph6_str(best)
print("largest lambda at m=7:", code, round(spectral_radius(best).lam, 10))
assert parse_graph6(code) == best
