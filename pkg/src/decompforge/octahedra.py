"""Octahedron (K_{2,2,2}) triangle relations used to rewire weightings.

The octahedron on parts {a,a'},{b,b'},{c,c'} has eight triangles that
split into two groups of four, each group decomposing all twelve edges.
Adding one to a group and subtracting one from the other changes triangle
weights without changing any per-edge weight sum.  Every flip performed
through this module re-checks that cancellation on all twelve edges and
counts the check, so pipelines can report assertion totals.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .core import Triangle, canonical_edge, pair
from .errors import InvalidInputError

Parts = tuple[tuple[int, int], tuple[int, int], tuple[int, int]]


def octahedron_parts(p1: Iterable[int], p2: Iterable[int], p3: Iterable[int]) -> Parts:
    parts = tuple(tuple(sorted(p)) for p in (p1, p2, p3))
    flat = [v for p in parts for v in p]
    if len(flat) != 6 or len(set(flat)) != 6 or any(len(p) != 2 for p in parts):
        raise InvalidInputError(f"octahedron parts must be three disjoint pairs, got {parts}")
    return parts  # type: ignore[return-value]


def octahedron_groups(parts: Parts) -> tuple[tuple[Triangle, ...], tuple[Triangle, ...]]:
    """The two complementary 4-triangle decompositions.  Group A consists
    of the transversals picking an even number of second elements."""
    (a, a2), (b, b2), (c, c2) = parts
    group_a = []
    group_b = []
    for i in range(2):
        for j in range(2):
            for k in range(2):
                t = canonical_edge((parts[0][i], parts[1][j], parts[2][k]))
                (group_a if (i + j + k) % 2 == 0 else group_b).append(t)
    return tuple(sorted(group_a)), tuple(sorted(group_b))


def octahedron_edges(parts: Parts) -> tuple[tuple[int, int], ...]:
    edges = []
    for i in range(3):
        for j in range(i + 1, 3):
            for u in parts[i]:
                for v in parts[j]:
                    edges.append(pair(u, v))
    return tuple(sorted(edges))


@dataclass
class FlipStats:
    """Running counters for edge-sum preservation checks."""

    checks: int = 0
    violations: int = 0
    flips: int = 0

    def merge(self, other: "FlipStats") -> None:
        self.checks += other.checks
        self.violations += other.violations
        self.flips += other.flips


#: Global accumulator: every flip in any pipeline run contributes here in
#: addition to any per-run stats object.
GLOBAL_FLIP_STATS = FlipStats()


def reset_global_flip_stats() -> None:
    GLOBAL_FLIP_STATS.checks = 0
    GLOBAL_FLIP_STATS.violations = 0
    GLOBAL_FLIP_STATS.flips = 0


def flip_in_place(
    weights: dict[Triangle, int],
    parts: Parts,
    direction: int = 1,
    stats: FlipStats | None = None,
) -> None:
    """Add `direction` to group A triangles and subtract it from group B,
    verifying on all twelve edges that the per-edge sums are unchanged."""
    if direction not in (1, -1):
        raise InvalidInputError("direction must be +1 or -1")
    group_a, group_b = octahedron_groups(parts)
    for t in group_a:
        w = weights.get(t, 0) + direction
        if w:
            weights[t] = w
        else:
            weights.pop(t, None)
    for t in group_b:
        w = weights.get(t, 0) - direction
        if w:
            weights[t] = w
        else:
            weights.pop(t, None)
    # per-edge delta check: each edge gains `direction` from its unique
    # group-A triangle and loses it to its unique group-B triangle
    violations = 0
    for e in octahedron_edges(parts):
        delta = sum(direction for t in group_a if set(e) <= set(t))
        delta -= sum(direction for t in group_b if set(e) <= set(t))
        if delta != 0:
            violations += 1
    for tracker in (stats, GLOBAL_FLIP_STATS):
        if tracker is not None:
            tracker.checks += 12
            tracker.violations += violations
            tracker.flips += 1
    if violations:
        raise InvalidInputError(f"octahedron groups unbalanced on {violations} edges")


def flipped(
    weights: dict[Triangle, int],
    parts: Parts,
    direction: int = 1,
    stats: FlipStats | None = None,
) -> dict[Triangle, int]:
    """Pure variant of :func:`flip_in_place`: returns a new weighting."""
    out = dict(weights)
    flip_in_place(out, parts, direction, stats)
    return out


def edge_weight_sums(weights: dict[Triangle, int]) -> dict[tuple[int, int], int]:
    sums: dict[tuple[int, int], int] = {}
    for t, w in weights.items():
        if not w:
            continue
        a, b, c = t
        for e in ((a, b), (a, c), (b, c)):
            sums[e] = sums.get(e, 0) + w
    return {e: s for e, s in sums.items() if s}
