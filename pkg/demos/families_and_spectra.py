"""Build the named families and compare their spectral radius with the closed forms."""

from __future__ import annotations

import math

from sxl import bound_value, extremal_construction, fixture, full_spectrum, kk_join_indep, parse_bound, spectral_radius

zls = parse_bound("zls")
print("K_2 v bK_1 against (1 + sqrt(4m - 3)) / 2")
for b in (4, 10, 30):
    g = kk_join_indep(2, b)
    print(f"  b={b:2d} m={g.m:3d} lambda={spectral_radius(g).lam:.10f} bound={bound_value(zls, g.m):.10f}")

print("K_3 v bK_1 against 1 + sqrt(m - 2)")
for b in (10, 20):
    g = kk_join_indep(3, b)
    print(f"  b={b} m={g.m} lambda={spectral_radius(g).lam:.10f} closed={1 + math.sqrt(g.m - 2):.10f}")

g = extremal_construction(3, 33)
print("extremal construction k=3, m=33:", g.n, "vertices,", g.m, "edges, lambda", round(spectral_radius(g).lam, 10))

for name in ("G1", "G2"):
    h = fixture(name)
    spec = full_spectrum(h)
    print(f"fixture {name}: m={h.m} lambda={spectral_radius(h).lam:.6f} spectrum={[round(float(x), 4) for x in spec.eigenvalues]}")
