"""Perron entries around the top vertex: the eigen identity audit and the eta quantities."""

from __future__ import annotations

from sxl import audit_eigen_identity, compute_eta, fixture, kk_join_indep, star
from sxl.verify import eta_component

for label, g in (("G1", fixture("G1")), ("G2", fixture("G2")), ("K_2 v 4K_1", kk_join_indep(2, 4))):
    print(f"{label}: identity residual {audit_eigen_identity(g):.2e}")
    for c in compute_eta(g).components:
        print(f"   component {c.vertices} kind={c.kind} eta1={c.eta1:.4f} eta2={c.eta2:.4f}")

# a single edge with small weights: eta2 = -1 - w_a - w_b stays above -2
print("K_{1,1} with weights 0.1/0.1:", eta_component(star(1), [0.1, 0.1]))
