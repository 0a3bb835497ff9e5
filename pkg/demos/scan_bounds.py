"""Exhaustive scans: every V5-free graph with m edges against the ZLS bound."""

from __future__ import annotations

from sxl import BoundKind, BoundViolation, ScanSpec, parse_pattern, scan

report = scan(ScanSpec(parse_pattern("V5"), BoundKind("zls"), (8, 11), predicted_extremal=2))
for r in report.records:
    print(f"m={r.m:2d} graphs={r.graph_count:5d} free={r.free_count:5d} max={r.max_lambda:.10f} "
          f"margin={r.margin:.3g} equality={r.equality_achieved} unique={r.uniqueness}")

# below m = 8 the bound fails for F2-free graphs; assert mode surfaces the counterexample
try:
    scan(ScanSpec(parse_pattern("F2"), BoundKind("zls"), (6, 6)))
except BoundViolation as exc:
    print("F2 at m=6 violates:", exc.counterexample)

print(report.to_csv().splitlines()[0])
