"""Adjacency spectra: Perron pairs, full spectra and closed-form bounds."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceFailure, InvalidParameter
from .graph import Graph, component_masks, iter_bits

RESIDUAL_TOL = 1e-12
MAX_ITERATIONS = 10**6
JACOBI_TOL = 1e-12


@dataclass(frozen=True)
class SpectralResult:
    """Spectral radius with its Perron vector (max entry 1).

    For a disconnected graph the vector is supported on the component that
    attains the radius and is zero elsewhere.
    """

    lam: float
    perron: np.ndarray
    residual: float
    iterations: int

    @property
    def extremal_vertex(self) -> int:
        """Smallest vertex id carrying the maximal Perron coordinate."""
        return int(np.flatnonzero(self.perron == self.perron.max())[0])


@dataclass(frozen=True)
class Spectrum:
    eigenvalues: np.ndarray  # descending


def _perron_pair(a: np.ndarray) -> tuple[float, np.ndarray, float, int]:
    # Power iteration on the shifted matrix A + I from the all-ones vector.
    # The iteration matrix is squared between checks, so after k checks the
    # vector equals (A+I)^(2^k - 1) 1 up to scaling; ``iterations`` counts
    # these effective multiplications.
    n = a.shape[0]
    shifted = a + np.eye(n)
    step = shifted.copy()
    power = 1
    x = np.ones(n)
    iterations = 0
    while True:
        y = step @ x
        iterations += power
        x = y / y.max()
        ax = a @ x
        lam = float(x @ ax / (x @ x))
        residual = float(np.abs(ax - lam * x).max())
        if residual <= RESIDUAL_TOL * max(1.0, lam):
            return lam, x, residual, iterations
        if iterations >= MAX_ITERATIONS:
            raise ConvergenceFailure(
                f"power iteration stalled at residual {residual:.3e} after {iterations} steps"
            )
        if power < MAX_ITERATIONS:
            step = step @ step
            step /= step.max()
            power *= 2


def spectral_radius(g: Graph) -> SpectralResult:
    if g.n < 1:
        raise InvalidParameter("spectral radius needs at least one vertex")
    a = g.adjacency_matrix()
    best: tuple[float, np.ndarray, float] | None = None
    best_support: list[int] = []
    total_iterations = 0
    for comp in component_masks(g.adj, g.vertex_mask):
        verts = list(iter_bits(comp))
        if len(verts) == 1:
            lam, x, res, its = 0.0, np.ones(1), 0.0, 0
        else:
            lam, x, res, its = _perron_pair(a[np.ix_(verts, verts)])
        total_iterations += its
        if best is None or lam > best[0] + 1e-12:
            best = (lam, x, res)
            best_support = verts
    lam, x, res = best
    perron = np.zeros(g.n)
    perron[best_support] = x
    return SpectralResult(lam, perron, res, total_iterations)


def spectral_radius_value(g: Graph) -> float:
    return spectral_radius(g).lam


def matrix_spectral_radius(a) -> SpectralResult:
    """Perron pair of a dense symmetric 0/1 matrix of a connected graph.

    Same power iteration as ``spectral_radius`` but without the 64-vertex
    bitset cap, for closed-form checks on larger joins.
    """
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 2:
        raise InvalidParameter("need a square matrix with at least two rows")
    if not np.array_equal(a, a.T):
        raise InvalidParameter("matrix is not symmetric")
    seen = np.zeros(a.shape[0], dtype=bool)
    seen[0] = True
    while True:
        grown = seen | (a[seen].sum(axis=0) > 0)
        if grown.sum() == seen.sum():
            break
        seen = grown
    if not seen.all():
        raise InvalidParameter("matrix is not the adjacency matrix of a connected graph")
    lam, x, res, its = _perron_pair(a)
    return SpectralResult(lam, x, res, its)


def _round_robin(n: int) -> list[list[tuple[int, int]]]:
    """Rounds of disjoint index pairs covering every pair exactly once."""
    players = list(range(n)) + ([-1] if n % 2 else [])
    size = len(players)
    rounds = []
    for _ in range(size - 1):
        pairs = []
        for i in range(size // 2):
            p, q = players[i], players[size - 1 - i]
            if p >= 0 and q >= 0:
                pairs.append((min(p, q), max(p, q)))
        rounds.append(pairs)
        players = [players[0], players[-1]] + players[1:-1]
    return rounds


def jacobi_eigenvalues(a: np.ndarray, tol: float = JACOBI_TOL, max_sweeps: int = 100) -> np.ndarray:
    """Eigenvalues of a dense symmetric matrix by cyclic Jacobi rotations.

    Each sweep visits every off-diagonal pair once, grouped into rounds of
    disjoint pairs whose rotations commute and are applied together.
    """
    a = np.array(a, dtype=float)
    n = a.shape[0]
    if n == 1:
        return a.diagonal().copy()
    threshold = tol * max(1.0, float(np.abs(a).max()))
    rounds = _round_robin(n)
    eye = np.eye(n)
    for _ in range(max_sweeps):
        off = np.abs(a - np.diag(a.diagonal())).max()
        if off < threshold:
            return np.sort(a.diagonal())[::-1]
        for pairs in rounds:
            p = np.array([pq[0] for pq in pairs])
            q = np.array([pq[1] for pq in pairs])
            apq = a[p, q]
            active = apq != 0.0
            if not active.any():
                continue
            p, q, apq = p[active], q[active], apq[active]
            theta = (a[q, q] - a[p, p]) / (2.0 * apq)
            t = np.sign(theta) / (np.abs(theta) + np.sqrt(theta * theta + 1.0))
            t[theta == 0.0] = 1.0
            c = 1.0 / np.sqrt(t * t + 1.0)
            s = t * c
            rot = eye.copy()
            rot[p, p] = c
            rot[q, q] = c
            rot[p, q] = s
            rot[q, p] = -s
            a = rot.T @ a @ rot
            a = 0.5 * (a + a.T)
    raise ConvergenceFailure(f"Jacobi did not converge in {max_sweeps} sweeps")


def full_spectrum(g: Graph) -> Spectrum:
    if g.n < 1:
        raise InvalidParameter("spectrum needs at least one vertex")
    return Spectrum(jacobi_eigenvalues(g.adjacency_matrix()))


# ---------------------------------------------------------------- bounds

BOUND_KINDS = ("nosal", "nikiforov", "zls", "f3", "fk", "wheel-even")


@dataclass(frozen=True)
class BoundKind:
    """Named upper bound on lambda as a function of the edge count.

    ``param`` is r for ``nikiforov`` and k for ``fk``.
    """

    kind: str
    param: int | None = None

    def __post_init__(self):
        if self.kind not in BOUND_KINDS:
            raise InvalidParameter(f"unknown bound {self.kind!r}")
        if self.kind in ("nikiforov", "fk") and (self.param is None or self.param < 2):
            raise InvalidParameter(f"{self.kind} needs an integer parameter >= 2")

    def __str__(self) -> str:
        return self.kind if self.param is None else f"{self.kind}:{self.param}"


def parse_bound(text: str) -> BoundKind:
    name, _, arg = text.strip().lower().partition(":")
    if name in ("nikiforov", "fk"):
        if not arg.isdigit():
            raise InvalidParameter(f"bound {name} needs a parameter, e.g. {name}:3")
        return BoundKind(name, int(arg))
    if arg:
        raise InvalidParameter(f"bound {name} takes no parameter")
    return BoundKind(name)


def bound_value(b: BoundKind, m: int) -> float:
    if m < 1:
        raise InvalidParameter("edge count must be positive")
    if b.kind == "nosal":
        return math.sqrt(m)
    if b.kind == "nikiforov":
        return math.sqrt(2 * m * (1 - 1 / b.param))
    if b.kind == "zls":
        return (1 + math.sqrt(4 * m - 3)) / 2
    if b.kind == "f3":
        if m < 2:
            raise InvalidParameter("F3 bound needs m >= 2")
        return 1 + math.sqrt(m - 2)
    if b.kind == "fk":
        k = b.param
        if 4 * m < k * k - 1:
            raise InvalidParameter(f"Fk bound undefined for 4m < k^2 - 1 (k={k}, m={m})")
        return (k - 1 + math.sqrt(4 * m - k * k + 1)) / 2
    return math.sqrt(4 * m / 3)


def bn_check(g: Graph, r: int) -> tuple[float, float, bool]:
    """Compare lambda_1^2 + lambda_2^2 with 2m(1 - 1/r)."""
    if r < 2:
        raise InvalidParameter("r must be at least 2")
    if g.n < r + 1:
        raise InvalidParameter(f"graph of order {g.n} is below r+1={r + 1}")
    ev = full_spectrum(g).eigenvalues
    lhs = float(ev[0] ** 2 + ev[1] ** 2)
    rhs = 2 * g.m * (1 - 1 / r)
    return lhs, rhs, lhs <= rhs + 1e-9
