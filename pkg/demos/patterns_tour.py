"""Forbidden-subgraph tests with witnesses."""

from __future__ import annotations

from sxl import complete, contains, fan, is_free, kk_join_indep
from sxl.families import make_from_text

hosts = {"K_5": complete(5), "K_2 v 4K_1": kk_join_indep(2, 4), "F_5": fan(5), "W6": make_from_text("W6")}
for label, g in hosts.items():
    row = []
    for pat in ("V5", "C5", "F2", "K4"):
        row.append(f"{pat}:{'free' if is_free(g, pat) else 'hit'}")
    print(f"{label:11s}", " ".join(row))

w = contains(complete(5), "C5")
print("C5 inside K_5 via", w.mapping)
