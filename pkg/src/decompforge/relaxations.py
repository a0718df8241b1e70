"""Fractional (LP) and integral relaxations of matching and decomposition.

Everything here is exact: the LP solver works over rationals with Bland's
rule, so feasibility answers come with either an exact solution or an
exact Farkas certificate, and the integer solver works by Hermite-form
elimination over the triangle/edge incidence system.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

from .barriers import LatticeSolver
from .core import Edge, Hypergraph, Triangle, canonical_edge, graph_triangles, triangle_edges
from .errors import InvalidInstanceError, TooLargeError
from .octahedra import (
    FlipStats,
    edge_weight_sums,
    flip_in_place,
    octahedron_edges,
    octahedron_groups,
    octahedron_parts,
)
from .simplex import FarkasCertificate, FeasiblePoint, solve_feasibility


@dataclass(frozen=True)
class FractionalSolution:
    """Non-negative rational weights indexed by edge or triangle."""

    weights: dict

    def total(self) -> Fraction:
        return sum(self.weights.values(), Fraction(0))


@dataclass(frozen=True)
class Infeasible:
    """Exact infeasibility certificate: multipliers y with sum(y) > 0 on
    the right-hand side but y-weight <= 0 on every column."""

    certificate: dict
    objective: Fraction

    def __bool__(self) -> bool:
        return False


@dataclass(frozen=True)
class IntegralSolution:
    """Integer triangle weights (possibly negative)."""

    weights: dict[Triangle, int]

    def vertex_load(self) -> dict[int, int]:
        load: dict[int, int] = {}
        for t, w in self.weights.items():
            for v in t:
                load[v] = load.get(v, 0) + abs(w)
        return load

    def max_vertex_load(self) -> int:
        load = self.vertex_load()
        return max(load.values()) if load else 0

    def edge_sums(self) -> dict[tuple[int, int], int]:
        return edge_weight_sums(self.weights)


@dataclass(frozen=True)
class BoundedReductionFailure:
    """Local moves could not reach the requested per-vertex bound."""

    best: IntegralSolution
    achieved_bound: int
    requested_bound: int

    def __bool__(self) -> bool:
        return False


def fractional_pm(H: Hypergraph) -> FractionalSolution | Infeasible:
    """Exact fractional perfect matching: weight 1 incident to every
    vertex, or a Farkas certificate that none exists."""
    cols = H.sorted_edges()
    columns = [{v: 1 for v in e} for e in cols]
    result = solve_feasibility(columns, [1] * H.n)
    if isinstance(result, FeasiblePoint):
        return FractionalSolution({cols[j]: val for j, val in sorted(result.values.items())})
    return Infeasible(
        certificate={v: y for v, y in sorted(result.y.items())},
        objective=result.objective,
    )


def fractional_triangle_decomposition(
    G: Hypergraph,
    support: Iterable[Triangle] | None = None,
) -> FractionalSolution | Infeasible:
    """Exact fractional triangle decomposition: weight 1 on the triangles
    through every edge.  `support` restricts the allowed triangles."""
    if G.r != 2:
        raise InvalidInstanceError("fractional triangle decomposition needs a graph")
    edges = G.sorted_edges()
    edge_index = {e: i for i, e in enumerate(edges)}
    if support is None:
        triangles = list(graph_triangles(G))
    else:
        triangles = sorted(canonical_edge(t) for t in support)
        for t in triangles:
            for e in triangle_edges(t):
                if e not in edge_index:
                    raise InvalidInstanceError(f"support triangle {t} uses non-edge {e}")
    columns = [{edge_index[e]: 1 for e in triangle_edges(t)} for t in triangles]
    result = solve_feasibility(columns, [1] * len(edges))
    if isinstance(result, FeasiblePoint):
        return FractionalSolution({triangles[j]: val for j, val in sorted(result.values.items())})
    return Infeasible(
        certificate={edges[i]: y for i, y in sorted(result.y.items())},
        objective=result.objective,
    )


# -- integral decompositions --------------------------------------------------


@lru_cache(maxsize=8)
def _host_system(host: Hypergraph) -> tuple[dict[Edge, int], list[Triangle], LatticeSolver]:
    edges = host.sorted_edges()
    edge_index = {e: i for i, e in enumerate(edges)}
    triangles = list(graph_triangles(host))
    solver = LatticeSolver(len(edges))
    for t in triangles:
        vec = [0] * len(edges)
        for e in triangle_edges(t):
            vec[edge_index[e]] = 1
        solver.add(vec)
    return edge_index, triangles, solver


def integral_triangle_decomposition(
    S: Hypergraph,
    host: Hypergraph,
    triangle_limit: int = 2000,
) -> IntegralSolution | None:
    """Integer triangle weights over the host whose per-edge sums are the
    indicator of S; None exactly when no integer solution exists."""
    if S.r != 2 or host.r != 2 or S.n != host.n:
        raise InvalidInstanceError("S and host must be graphs on the same vertex set")
    if not S.edges <= host.edges:
        raise InvalidInstanceError("S must be a subgraph of the host")
    edge_index, triangles, solver = _host_system(host)
    if len(triangles) > triangle_limit:
        raise TooLargeError(
            f"host has {len(triangles)} triangles, above the desk-scale limit {triangle_limit}"
        )
    target = [0] * len(edge_index)
    for e in S.edges:
        target[edge_index[e]] = 1
    coeffs = solver.solve(target)
    if coeffs is None:
        return None
    return IntegralSolution({triangles[j]: c for j, c in sorted(coeffs.items())})


def _vertex_loads(weights: dict[Triangle, int], n: int) -> list[int]:
    load = [0] * n
    for t, w in weights.items():
        if w:
            for v in t:
                load[v] += abs(w)
    return load


def _octahedron_in_host(parts, host_edges: frozenset | None) -> bool:
    if host_edges is None:  # complete host
        return True
    return all(e in host_edges for e in octahedron_edges(parts))


def _score_state(loads: Sequence[int], bound: int, total: int) -> tuple[int, int]:
    excess = sum(max(0, s - bound) for s in loads)
    return excess, total


def _flip_effect(
    weights: dict[Triangle, int], parts, direction: int
) -> tuple[int, dict[int, int]]:
    """Change in total absolute weight and in per-vertex absolute loads."""
    group_a, group_b = octahedron_groups(parts)
    delta_total = 0
    delta_load: dict[int, int] = {}
    for group, sign in ((group_a, direction), (group_b, -direction)):
        for t in group:
            w0 = weights.get(t, 0)
            d = abs(w0 + sign) - abs(w0)
            delta_total += d
            for v in t:
                delta_load[v] = delta_load.get(v, 0) + d
    return delta_total, delta_load


def _cancelling_pairs(weights: dict[Triangle, int]) -> list[tuple[Triangle, Triangle, Edge]]:
    """Opposite-sign triangle pairs sharing an edge, in canonical order."""
    by_edge: dict[Edge, list[Triangle]] = {}
    for t, w in weights.items():
        if w:
            for e in triangle_edges(t):
                by_edge.setdefault(e, []).append(t)
    pairs = []
    for e in sorted(by_edge):
        ts = by_edge[e]
        pos = sorted(t for t in ts if weights.get(t, 0) > 0)
        neg = sorted(t for t in ts if weights.get(t, 0) < 0)
        for tp in pos:
            for tn in neg:
                pairs.append((tp, tn, e))
    return pairs


def _pair_octahedron(
    t_pos: Triangle,
    t_neg: Triangle,
    shared: Edge,
    n: int,
    host_edges: frozenset | None,
    weights: dict[Triangle, int],
    bound: int,
    loads: Sequence[int],
) -> tuple | None:
    """Best octahedron whose groups separate the pair: flipping it moves a
    unit of weight off both t_pos and t_neg.  Scored lexicographically by
    (change in bound excess, change in total absolute weight)."""
    u, v = shared
    x = next(w for w in t_pos if w not in shared)
    y = next(w for w in t_neg if w not in shared)
    if x == y:
        return None  # same triangle twice; direct cancellation needs no flip
    best = None
    others = [w for w in range(n) if w not in {u, v, x, y}]
    for u2 in others:
        for v2 in others:
            if v2 == u2:
                continue
            parts = octahedron_parts((u, u2), (v, v2), (x, y))
            if not _octahedron_in_host(parts, host_edges):
                continue
            # t_pos and t_neg are transversals differing in one slot, so
            # they land in opposite groups; subtract from t_pos's group
            group_a, _ = octahedron_groups(parts)
            direction = -1 if canonical_edge(t_pos) in group_a else 1
            delta_total, delta_load = _flip_effect(weights, parts, direction)
            delta_excess = sum(
                max(0, loads[w] + d - bound) - max(0, loads[w] - bound)
                for w, d in delta_load.items()
            )
            key = (delta_excess, delta_total, parts, direction)
            if best is None or key < best:
                best = key
    if best is None:
        return None
    delta_excess, delta_total, parts, direction = best
    return delta_excess, delta_total, parts, direction


def bounded_integral_decomposition(
    S: Hypergraph,
    host: Hypergraph,
    bound: int,
    max_steps: int = 2000,
    stats: FlipStats | None = None,
) -> IntegralSolution | BoundedReductionFailure | None:
    """Integral solution whose per-vertex absolute-weight sums are at most
    the bound, reached from a base solution by octahedron flips (which are
    edge-sum preserving by construction).  Returns the failure record with
    the best achieved bound when the moves run out."""
    base = integral_triangle_decomposition(S, host)
    if base is None:
        return None
    weights = {t: w for t, w in base.weights.items() if w}
    host_edges = host.edges
    n = host.n
    total = sum(abs(w) for w in weights.values())
    loads = _vertex_loads(weights, n)
    best_snapshot = (max(loads) if loads else 0, dict(weights))

    for _ in range(max_steps):
        score = _score_state(loads, bound, total)
        if score[0] == 0:
            return IntegralSolution(dict(weights))
        moved = False
        for t_pos, t_neg, shared in _cancelling_pairs(weights):
            found = _pair_octahedron(t_pos, t_neg, shared, n, host_edges, weights)
            if found is None:
                continue
            delta, parts, direction = found
            if delta >= 0 and delta + total >= total and delta > 0:
                continue  # only take weight-reducing or neutral moves
            flip_in_place(weights, parts, direction, stats)
            total += delta
            loads = _vertex_loads(weights, n)
            hi = max(loads) if loads else 0
            if hi < best_snapshot[0]:
                best_snapshot = (hi, dict(weights))
            moved = True
            break
        if not moved:
            break

    # small hosts: polish with a full first-improvement scan over octahedra
    if host.n <= 8:
        improved = True
        while improved and _score_state(loads, bound, total)[0] > 0:
            improved = False
            for six in combinations(range(n), 6):
                for split in _pair_splits(six):
                    parts = octahedron_parts(*split)
                    if not _octahedron_in_host(parts, host_edges):
                        continue
                    for direction in (1, -1):
                        delta = _flip_delta(weights, parts, direction)
                        if delta < 0:
                            flip_in_place(weights, parts, direction, stats)
                            total += delta
                            loads = _vertex_loads(weights, n)
                            improved = True
            hi = max(loads) if loads else 0
            if hi < best_snapshot[0]:
                best_snapshot = (hi, dict(weights))
        if _score_state(loads, bound, total)[0] == 0:
            return IntegralSolution(dict(weights))

    return BoundedReductionFailure(
        best=IntegralSolution(best_snapshot[1]),
        achieved_bound=best_snapshot[0],
        requested_bound=bound,
    )


def _pair_splits(six: tuple[int, ...]):
    """The 15 ways to split six vertices into three unordered pairs."""
    a = six[0]
    rest = six[1:]
    for i in range(5):
        b = rest[i]
        remaining = [x for j, x in enumerate(rest) if j != i]
        c = remaining[0]
        for k in range(1, 4):
            d = remaining[k]
            last = [x for j, x in enumerate(remaining) if j not in (0, k)]
            yield (a, b), (c, d), (last[0], last[1])


def _flip_delta(weights: dict[Triangle, int], parts, direction: int) -> int:
    group_a, group_b = octahedron_groups(parts)
    delta = 0
    for t in group_a:
        w0 = weights.get(t, 0)
        delta += abs(w0 + direction) - abs(w0)
    for t in group_b:
        w0 = weights.get(t, 0)
        delta += abs(w0 - direction) - abs(w0)
    return delta
