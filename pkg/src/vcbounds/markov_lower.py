"""Markov-type lower bound via stationary chains on a fixed two-vertex graph.

Binary words correspond to edge labels along closed walks in the graph G
below; the edge function f marks vertex changes, so the empirical f-average
of a walk counts the switches of its label word (up to the first edge). The
achievable-rate bound evaluates conditional entropies of stationary chains
on G and on the product G x G through their convex duals, whose potentials
are the logarithms of closed-form spectral radii.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Union

import numpy as np

from .numeric import (
    DEFAULT_CONFIG,
    DomainError,
    ToleranceConfig,
    binary_entropy,
    check_unit_range,
    minimize_convex_2d,
    minimize_scalar,
    _bracket_line,
    _golden_section,
)
from .upper import BoundQuery, Method, RateValue

__all__ = [
    "Edge",
    "GraphSpec",
    "ProductEdge",
    "ProductGraphSpec",
    "GRAPH_G",
    "PRODUCT_GXG",
    "EdgeDistribution",
    "CyclePath",
    "NonStationaryError",
    "InvalidCycleError",
    "ConvergenceError",
    "conditional_entropy",
    "empirical_distribution",
    "lambda_g",
    "lambda_gxg",
    "lambda_power_iteration",
    "capital_f",
    "capital_g",
    "r_ma",
    "count_switch_bounded",
]


class NonStationaryError(ValueError):
    """Edge probabilities violate normalization or per-vertex flow balance."""


class InvalidCycleError(ValueError):
    """Edge sequence is not a closed walk of the graph."""


class ConvergenceError(RuntimeError):
    """Power iteration failed to converge within the iteration cap."""


@dataclass(frozen=True)
class Edge:
    src: str
    dst: str
    label: int
    f: int

    @property
    def key(self) -> tuple[str, str]:
        return (self.src, self.dst)


@dataclass(frozen=True)
class GraphSpec:
    """Directed labeled graph with an edge function f."""

    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]

    def __post_init__(self):
        for e in self.edges:
            if e.src not in self.vertices or e.dst not in self.vertices:
                raise DomainError(f"edge {e} references unknown vertex")
        if len({e.key for e in self.edges}) != len(self.edges):
            raise DomainError("parallel edges are not supported")

    def out_edges(self, v: str) -> tuple[Edge, ...]:
        return tuple(e for e in self.edges if e.src == v)

    def in_edges(self, v: str) -> tuple[Edge, ...]:
        return tuple(e for e in self.edges if e.dst == v)


@dataclass(frozen=True)
class ProductEdge:
    """Pair of base edges; carries the component f-values and the label
    disagreement indicator."""

    e1: tuple[str, str]
    e2: tuple[str, str]
    f1: int
    f2: int
    delta: int

    @property
    def src(self) -> tuple[str, str]:
        return (self.e1[0], self.e2[0])

    @property
    def dst(self) -> tuple[str, str]:
        return (self.e1[1], self.e2[1])

    @property
    def key(self) -> tuple[tuple[str, str], tuple[str, str]]:
        return (self.e1, self.e2)


@dataclass(frozen=True)
class ProductGraphSpec:
    vertices: tuple[tuple[str, str], ...]
    edges: tuple[ProductEdge, ...]


def _build_product(g: GraphSpec) -> ProductGraphSpec:
    vertices = tuple((u, v) for u in g.vertices for v in g.vertices)
    edges = tuple(
        ProductEdge(
            e1=a.key,
            e2=b.key,
            f1=a.f,
            f2=b.f,
            delta=1 if a.label != b.label else 0,
        )
        for a in g.edges
        for b in g.edges
    )
    return ProductGraphSpec(vertices=vertices, edges=edges)


# The fixed two-vertex graph: both self-loops plus both cross edges.
# Labels: 0 on (a,b) and (b,b), 1 on (b,a) and (a,a).
# Edge function f: 0 on the self-loops, 1 on the cross edges.
GRAPH_G = GraphSpec(
    vertices=("a", "b"),
    edges=(
        Edge("a", "a", label=1, f=0),
        Edge("a", "b", label=0, f=1),
        Edge("b", "a", label=1, f=1),
        Edge("b", "b", label=0, f=0),
    ),
)

PRODUCT_GXG = _build_product(GRAPH_G)

AnyGraph = Union[GraphSpec, ProductGraphSpec]


@dataclass(frozen=True)
class EdgeDistribution:
    """Stationary edge probabilities on a graph.

    Probabilities align with ``graph.edges`` and may be floats or exact
    Fractions. Construction validates nonnegativity, normalization, and
    per-vertex flow balance (outgoing mass equals incoming mass) within
    ``DEFAULT_CONFIG.abs_tol``; exact rational inputs therefore pass exactly.
    """

    graph: AnyGraph
    probs: tuple

    def __post_init__(self):
        edges = self.graph.edges
        if len(self.probs) != len(edges):
            raise NonStationaryError(
                f"expected {len(edges)} probabilities, got {len(self.probs)}"
            )
        tol = DEFAULT_CONFIG.abs_tol
        for p in self.probs:
            if p < -tol:
                raise NonStationaryError(f"negative edge probability {p}")
        total = sum(self.probs)
        if abs(total - 1) > tol:
            raise NonStationaryError(f"edge probabilities sum to {total}, not 1")
        for v in self.graph.vertices:
            out_mass = sum(p for e, p in zip(edges, self.probs) if e.src == v)
            in_mass = sum(p for e, p in zip(edges, self.probs) if e.dst == v)
            if abs(out_mass - in_mass) > tol:
                raise NonStationaryError(
                    f"flow imbalance at vertex {v!r}: out {out_mass} vs in {in_mass}"
                )

    @classmethod
    def from_mapping(cls, graph: AnyGraph, mapping) -> "EdgeDistribution":
        """Build from a map of edge keys ((src, dst) pairs, or pairs of base
        edges for the product graph) to probabilities; absent edges get 0."""
        return cls(graph, tuple(mapping.get(e.key, 0) for e in graph.edges))

    @classmethod
    def uniform(cls, graph: AnyGraph) -> "EdgeDistribution":
        m = len(graph.edges)
        return cls(graph, tuple(Fraction(1, m) for _ in range(m)))

    def expectation(self, values) -> float:
        """Expected value of a per-edge quantity; ``values`` maps edge -> number."""
        return sum(p * values(e) for e, p in zip(self.graph.edges, self.probs))


@dataclass(frozen=True)
class CyclePath:
    """Closed walk given as a chained sequence of (src, dst) edge keys."""

    graph: GraphSpec
    edges: tuple[tuple[str, str], ...]

    def __post_init__(self):
        if not self.edges:
            raise InvalidCycleError("a cycle needs at least one edge")
        known = {e.key for e in self.graph.edges}
        for key in self.edges:
            if tuple(key) not in known:
                raise InvalidCycleError(f"unknown edge {key}")
        for cur, nxt in zip(self.edges, self.edges[1:]):
            if cur[1] != nxt[0]:
                raise InvalidCycleError(
                    f"edges do not chain: {cur} is followed by {nxt}"
                )
        if self.edges[-1][1] != self.edges[0][0]:
            raise InvalidCycleError("walk does not return to its start vertex")

    def label_word(self) -> tuple[int, ...]:
        by_key = {e.key: e for e in self.graph.edges}
        return tuple(by_key[k].label for k in self.edges)


def empirical_distribution(path: CyclePath) -> EdgeDistribution:
    """Edge-frequency distribution of a closed walk, in exact rationals.

    Closedness makes every vertex's in-count equal its out-count, so the
    result is stationary exactly.
    """
    n = len(path.edges)
    counts: dict[tuple[str, str], int] = {}
    for key in path.edges:
        counts[key] = counts.get(key, 0) + 1
    probs = tuple(Fraction(counts.get(e.key, 0), n) for e in path.graph.edges)
    return EdgeDistribution(path.graph, probs)


def conditional_entropy(dist: EdgeDistribution) -> float:
    """H(Y|X) for the vertex pair (X, Y) drawn as an edge from ``dist``:

        sum over edges e of P(e) * log2(m(src(e)) / P(e)),

    where m(u) is the total outgoing mass at u. Zero-probability edges
    contribute nothing.
    """
    edges = dist.graph.edges
    out_mass: dict = {}
    for e, p in zip(edges, dist.probs):
        out_mass[e.src] = out_mass.get(e.src, 0) + p
    total = 0.0
    for e, p in zip(edges, dist.probs):
        if p > 0:
            total += float(p) * math.log2(out_mass[e.src] / p)
    return total


def lambda_g(x):
    """Spectral radius of the f-weighted transfer matrix of G: 2^(-x) + 1."""
    return 2.0 ** (-x) + 1.0


def lambda_gxg(x, z):
    """Closed-form spectral radius of the (f1+f2, delta)-weighted transfer
    matrix of G x G:

        (1/2) * [ (4^-x + 1)(2^-z + 1)
                  + sqrt( (4^-x + 1)^2 * 4^-z
                          - 2*(16^-x - 6*4^-x + 1) * 2^-z
                          + (4^-x + 1)^2 ) ].

    The radicand is nonnegative for all real x, z; round-off excursions
    below zero are clamped (and anything below -1e-12 is rejected).
    """
    ax = 4.0 ** (-x)
    az = 2.0 ** (-z)
    head = (ax + 1.0) * (az + 1.0)
    rad = (ax + 1.0) ** 2 * az * az - 2.0 * (ax * ax - 6.0 * ax + 1.0) * az + (ax + 1.0) ** 2
    if isinstance(rad, np.ndarray):
        if (rad < -1e-12).any():
            raise ArithmeticError("spectral-radius radicand fell below -1e-12")
        return 0.5 * (head + np.sqrt(np.clip(rad, 0.0, None)))
    if rad < -1e-12:
        raise ArithmeticError(f"spectral-radius radicand fell below -1e-12: {rad}")
    return 0.5 * (head + math.sqrt(max(rad, 0.0)))


def _transfer_matrix(spec: AnyGraph, x: float, z: float) -> tuple[np.ndarray, list]:
    verts = list(spec.vertices)
    index = {v: i for i, v in enumerate(verts)}
    mat = np.zeros((len(verts), len(verts)))
    for e in spec.edges:
        if isinstance(e, ProductEdge):
            weight = 2.0 ** (-(x * (e.f1 + e.f2) + z * e.delta))
        else:
            weight = 2.0 ** (-(x * e.f))
        mat[index[e.src], index[e.dst]] += weight
    return mat, verts


def lambda_power_iteration(
    spec: AnyGraph,
    x: float,
    z: float = 0.0,
    rel_tol: float = 1e-12,
    max_iter: int = 200_000,
) -> float:
    """Spectral radius of the exponentially weighted transfer matrix by power
    iteration. The matrices are primitive (all entries positive for finite
    weights), so convergence is guaranteed; this is the independent oracle
    for the closed forms :func:`lambda_g` and :func:`lambda_gxg`.
    """
    mat, _ = _transfer_matrix(spec, float(x), float(z))
    if not np.isfinite(mat).all():
        raise DomainError("transfer-matrix weights are not finite")
    vec = np.ones(mat.shape[0])
    estimate = 0.0
    for _ in range(max_iter):
        nxt = mat @ vec
        new_estimate = float(nxt.max())
        vec = nxt / new_estimate
        if abs(new_estimate - estimate) <= rel_tol * new_estimate:
            return new_estimate
        estimate = new_estimate
    raise ConvergenceError(
        f"power iteration did not reach rel_tol={rel_tol} in {max_iter} iterations"
    )


def capital_f(p: float, cfg: ToleranceConfig = DEFAULT_CONFIG) -> float:
    """Dual evaluation of the largest conditional entropy among stationary
    chains on G with switch rate exactly p:

        inf over x in R of p*x + log2(lambda_g(x)),

    which equals h(p). The infimum at p = 0 or p = 1 is approached as
    x -> +-infinity and equals 0; both endpoints are returned directly.
    """
    p = check_unit_range(p, 0.0, 1.0, cfg.abs_tol, "p")
    if p == 0.0 or p == 1.0:
        return 0.0

    def objective(x):
        return p * x + math.log2(lambda_g(x))

    a, b, seed_arg, seed_val = _bracket_line(objective, 0.0, cfg.max_refinements)
    xtol = max(1e-14, 1e-11 * max(abs(a), abs(b), 1.0))
    return _golden_section(objective, a, b, seed_arg, seed_val, xtol)[1]


def _capital_g_solve(
    p: float,
    delta: float,
    cfg: ToleranceConfig,
    start: tuple[float, float],
) -> tuple[tuple[float, float], float]:
    def objective(x, z):
        return 2.0 * p * x + delta * z + math.log2(lambda_gxg(x, z))

    return minimize_convex_2d(objective, cfg, start=start)


def capital_g(p: float, delta: float, cfg: ToleranceConfig = DEFAULT_CONFIG) -> float:
    """Dual evaluation of the largest conditional entropy among stationary
    chains on G x G whose component switch rates equal p and whose label
    disagreement rate is at most delta:

        inf over x in R, z >= 0 of 2*p*x + delta*z + log2(lambda_gxg(x, z)).

    The objective is jointly convex (log of the spectral radius of a matrix
    with log-convex entries). At p = 0 or p = 1 the infimum is approached
    only as x -> +-infinity; the constraint then forces a deterministic
    chain and the value is 0, returned directly.
    """
    p = check_unit_range(p, 0.0, 1.0, cfg.abs_tol, "p")
    delta = check_unit_range(delta, 0.0, 0.5, cfg.abs_tol, "delta")
    if delta <= 0.0:
        raise DomainError("capital_g requires delta > 0; the delta -> 0 limit "
                          "is handled by r_ma")
    if p == 0.0 or p == 1.0:
        return 0.0
    return _capital_g_solve(p, delta, cfg, start=(0.0, 1.0))[1]


# Grid width for the search over the switch-rate parameter p in r_ma. The
# profile 2*h(p) - capital_g(p, delta) is smooth with a single wide basin on
# [0, d] (checked against dense grids), so a coarse grid plus golden
# refinement resolves the supremum; each evaluation costs a full 2-D dual
# minimization, which dominates the sweep budgets.
_P_GRID_POINTS = 65


def r_ma(q: BoundQuery, cfg: ToleranceConfig = DEFAULT_CONFIG) -> RateValue:
    """Markov-type achievable rate:

        sup over p in [0, d] of 2*h(p) - capital_g(p, delta),

    floored at 0. At delta = 0 the constraint set of the pair chain is
    empty; the value is defined by continuity as the delta -> 0+ limit,
    which is h(d) for d <= 1/2.
    """
    d, delta = q.d, q.delta
    if delta == 0.0:
        return RateValue(binary_entropy(min(d, 0.5), cfg.abs_tol), Method.MARKOV)
    if d == 0.0:
        return RateValue(0.0, Method.MARKOV)

    warm: dict = {"start": (0.0, 1.0)}

    def neg_objective(p):
        p = float(p)
        if p <= 0.0:
            return 0.0
        xz, value = _capital_g_solve(p, delta, cfg, start=warm["start"])
        warm["start"] = xz
        return value - 2.0 * binary_entropy(p, cfg.abs_tol)

    p_cfg = replace(cfg, grid_points=min(cfg.grid_points, _P_GRID_POINTS))
    _, neg_best = minimize_scalar(neg_objective, 0.0, d, p_cfg)
    return RateValue(max(0.0, -neg_best), Method.MARKOV)


def count_switch_bounded(n: int, k: int) -> int:
    """Exact number of binary length-n words with at most k switches.

    Dynamic program over (last bit, switches so far) with exact integers;
    a switch is an index i with word[i] != word[i+1].
    """
    n = int(n)
    k = int(k)
    if n < 1:
        raise DomainError(f"n must be positive, got {n}")
    if k < 0 or k > n - 1:
        raise DomainError(f"k must lie in [0, n-1], got k={k}, n={n}")
    # ends_0[j] counts prefixes ending in bit 0 with exactly j switches.
    ends_0 = [0] * (k + 1)
    ends_1 = [0] * (k + 1)
    ends_0[0] = 1
    ends_1[0] = 1
    for _ in range(n - 1):
        new_0 = [0] * (k + 1)
        new_1 = [0] * (k + 1)
        for j in range(k + 1):
            new_0[j] = ends_0[j] + (ends_1[j - 1] if j else 0)
            new_1[j] = ends_1[j] + (ends_0[j - 1] if j else 0)
        ends_0, ends_1 = new_0, new_1
    return sum(ends_0) + sum(ends_1)
