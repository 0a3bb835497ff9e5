"""Spectral extremal checks for F-free graphs with m edges."""

from __future__ import annotations

from .enumeration import (
    EnumSpec, all_graphs, are_isomorphic, canonical_form, canonical_graph, connected_graphs,
    enumerate_graphs, parse_graph6, read_graph6_lines, to_graph6_str, write_graph6,
)
from .errors import (
    BoundViolation, ConvergenceFailure, DivisibilityError, InvalidEdge, InvalidParameter, InvalidPattern,
    InvalidRotation, InvalidWeights, MalformedGraph6, SizeLimitExceeded, SizeUnsupported, SxlError,
    VertexLimitExceeded,
)
from .families import (
    FamilySpec, book, chorded_cycle, complete, complete_multipartite, cycle, extremal_construction, fan,
    fixture, friendship, kk_join_indep, make, parse_family, path, rst, star, wheel,
)
from .graph import Graph, build_graph, components, disjoint_union, induced_subgraph, join, neighborhood_partition
from .patterns import Pattern, Witness, contains, is_free, parse_pattern
from .spectral import (
    BoundKind, bn_check, bound_value, full_spectrum, matrix_spectral_radius, parse_bound, spectral_radius,
)
from .verify import (
    ScanReport, ScanSpec, audit_eigen_identity, check_bn, check_erdos_gallai, check_rst_lemma, compute_eta,
    erdos_gallai_bound, rotate_edges, scan,
)

__version__ = "0.1.0"
