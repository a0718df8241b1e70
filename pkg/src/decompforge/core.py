"""Hypergraph data model, verifiers, design arithmetic and reductions.

Vertices are dense integer ids 0..n-1.  Edges are stored as sorted tuples
and iterated in lexicographic order everywhere, so that every routine in
the package is deterministic given its inputs.  Instances are immutable
values: all operations return new objects.
"""

from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from .errors import InvalidInstanceError, InvalidInputError

Edge = tuple[int, ...]
Triangle = tuple[int, int, int]


def canonical_edge(edge: Iterable[int]) -> Edge:
    return tuple(sorted(edge))


def pair(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


class Hypergraph:
    """An r-uniform hypergraph on vertex set {0..n-1}.

    Graphs are the r=2 case; the same type is used for both throughout.
    """

    __slots__ = ("n", "r", "edges")

    def __init__(self, n: int, r: int, edges: Iterable[Iterable[int]]):
        if n < 0 or r < 1:
            raise InvalidInstanceError(f"bad parameters n={n}, r={r}")
        canon = set()
        for e in edges:
            t = canonical_edge(e)
            if len(t) != r or len(set(t)) != r:
                raise InvalidInstanceError(f"edge {t} is not an {r}-set")
            if t[0] < 0 or t[-1] >= n:
                raise InvalidInstanceError(f"edge {t} out of range for n={n}")
            canon.add(t)
        self.n = n
        self.r = r
        self.edges = frozenset(canon)

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    def degrees(self) -> list[int]:
        deg = [0] * self.n
        for e in self.edges:
            for v in e:
                deg[v] += 1
        return deg

    def has_edge(self, edge: Iterable[int]) -> bool:
        return canonical_edge(edge) in self.edges

    def __len__(self) -> int:
        return len(self.edges)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Hypergraph)
            and self.n == other.n
            and self.r == other.r
            and self.edges == other.edges
        )

    def __hash__(self) -> int:
        return hash((self.n, self.r, self.edges))

    def __repr__(self) -> str:
        return f"Hypergraph(n={self.n}, r={self.r}, m={len(self.edges)})"

    # -- canonical JSON envelope ------------------------------------------

    def to_json(self) -> str:
        payload = {"n": self.n, "r": self.r, "edges": [list(e) for e in self.sorted_edges()]}
        return json.dumps(payload, separators=(",", ":"), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "Hypergraph":
        payload = json.loads(text)
        return cls(payload["n"], payload["r"], payload["edges"])


def complete_hypergraph(n: int, r: int) -> Hypergraph:
    return Hypergraph(n, r, combinations(range(n), r))


def complete_graph(n: int) -> Hypergraph:
    return complete_hypergraph(n, 2)


def graph_triangles(G: Hypergraph) -> Iterator[Triangle]:
    """All triangles of a graph, as sorted vertex triples in lex order."""
    if G.r != 2:
        raise InvalidInstanceError("triangles are defined for graphs (r=2)")
    adj = [set() for _ in range(G.n)]
    for u, v in G.edges:
        adj[u].add(v)
        adj[v].add(u)
    for u, v in G.sorted_edges():
        for w in sorted(adj[u] & adj[v]):
            if w > v:
                yield (u, v, w)


def triangle_edges(t: Sequence[int]) -> tuple[tuple[int, int], ...]:
    a, b, c = sorted(t)
    return ((a, b), (a, c), (b, c))


def induced_subgraph(G: Hypergraph, vertices: Iterable[int]) -> Hypergraph:
    """Subgraph on the same vertex ids, keeping edges inside the given set."""
    keep = set(vertices)
    return Hypergraph(G.n, G.r, (e for e in G.edges if keep.issuperset(e)))


class Matching:
    """A set of edges intended to be pairwise disjoint in some host.

    Validity against a host (membership, disjointness, coverage) is the
    verifier's job; the container only canonicalises.
    """

    __slots__ = ("edges",)

    def __init__(self, edges: Iterable[Iterable[int]]):
        self.edges = frozenset(canonical_edge(e) for e in edges)

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def covered_vertices(self) -> set[int]:
        return {v for e in self.edges for v in e}

    def __len__(self) -> int:
        return len(self.edges)

    def __eq__(self, other) -> bool:
        return isinstance(other, Matching) and self.edges == other.edges

    def __hash__(self) -> int:
        return hash(self.edges)

    def __repr__(self) -> str:
        return f"Matching(size={len(self.edges)})"

    def to_json(self, host: Hypergraph) -> str:
        payload = {
            "n": host.n,
            "r": host.r,
            "matching": [list(e) for e in self.sorted_edges()],
        }
        return json.dumps(payload, separators=(",", ":"), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "Matching":
        return cls(json.loads(text)["matching"])


class TriangleDecomposition:
    """A set of vertex triples intended to partition the edges of a graph."""

    __slots__ = ("triangles",)

    def __init__(self, triangles: Iterable[Iterable[int]]):
        canon = set()
        for t in triangles:
            tt = canonical_edge(t)
            if len(tt) != 3 or len(set(tt)) != 3:
                raise InvalidInstanceError(f"triangle {tt} is not a 3-set")
            canon.add(tt)
        self.triangles = frozenset(canon)

    def sorted_triangles(self) -> list[Triangle]:
        return sorted(self.triangles)

    def __len__(self) -> int:
        return len(self.triangles)

    def __eq__(self, other) -> bool:
        return isinstance(other, TriangleDecomposition) and self.triangles == other.triangles

    def __hash__(self) -> int:
        return hash(self.triangles)

    def __repr__(self) -> str:
        return f"TriangleDecomposition(size={len(self.triangles)})"

    def to_json(self, host: Hypergraph) -> str:
        payload = {
            "n": host.n,
            "r": host.r,
            "triangles": [list(t) for t in self.sorted_triangles()],
        }
        return json.dumps(payload, separators=(",", ":"), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "TriangleDecomposition":
        return cls(json.loads(text)["triangles"])


# -- verifiers (total functions; every pipeline output passes through one) --


@dataclass(frozen=True)
class DecompositionReport:
    accepted: bool
    triangle_count: int
    uncovered_edges: tuple[Edge, ...]
    multiply_covered_edges: tuple[Edge, ...]
    foreign_edges: tuple[Edge, ...]  # triangle edges absent from the host

    def __bool__(self) -> bool:
        return self.accepted


def verify_triangle_decomposition(G: Hypergraph, D: TriangleDecomposition) -> DecompositionReport:
    """Accepts iff every edge of G lies in exactly one triangle of D and
    every triangle edge lies in G."""
    counts: Counter = Counter()
    foreign = set()
    for t in D.triangles:
        for e in triangle_edges(t):
            counts[e] += 1
            if e not in G.edges:
                foreign.add(e)
    uncovered = tuple(sorted(e for e in G.edges if counts[e] == 0))
    multiple = tuple(sorted(e for e, c in counts.items() if c > 1))
    accepted = not uncovered and not multiple and not foreign
    return DecompositionReport(
        accepted=accepted,
        triangle_count=len(D.triangles),
        uncovered_edges=uncovered,
        multiply_covered_edges=multiple,
        foreign_edges=tuple(sorted(foreign)),
    )


@dataclass(frozen=True)
class MatchingReport:
    accepted: bool
    matching_size: int
    foreign_edges: tuple[Edge, ...]
    overlapping_vertices: tuple[int, ...]
    uncovered_vertices: tuple[int, ...]

    def __bool__(self) -> bool:
        return self.accepted


def verify_perfect_matching(H: Hypergraph, M: Matching) -> MatchingReport:
    """Accepts iff M's edges are in H, pairwise disjoint, and cover all vertices."""
    foreign = tuple(sorted(e for e in M.edges if e not in H.edges))
    seen: Counter = Counter()
    for e in M.edges:
        for v in e:
            seen[v] += 1
    overlap = tuple(sorted(v for v, c in seen.items() if c > 1))
    uncovered = tuple(sorted(v for v in range(H.n) if seen[v] == 0))
    accepted = not foreign and not overlap and not uncovered
    return MatchingReport(
        accepted=accepted,
        matching_size=len(M.edges),
        foreign_edges=foreign,
        overlapping_vertices=overlap,
        uncovered_vertices=uncovered,
    )


# -- degree and codegree statistics ----------------------------------------


def min_codegree(H: Hypergraph) -> int:
    """Minimum, over all (r-1)-subsets S of the vertex set, of the number
    of edges containing S."""
    if H.r < 2 or H.n < H.r:
        raise InvalidInstanceError(f"need r >= 2 and n >= r, got n={H.n}, r={H.r}")
    counts: Counter = Counter()
    for e in H.edges:
        for sub in combinations(e, H.r - 1):
            counts[sub] += 1
    total_subsets = math.comb(H.n, H.r - 1)
    if len(counts) < total_subsets:
        return 0  # some (r-1)-set extends to no edge
    return min(counts.values())


def downward_closure(edges: Iterable[Iterable[int]]) -> set[frozenset[int]]:
    """All subsets (including the empty set) of the given edges."""
    closure: set[frozenset[int]] = set()
    for e in edges:
        e = frozenset(e)
        for k in range(len(e) + 1):
            for sub in combinations(sorted(e), k):
                closure.add(frozenset(sub))
    closure.add(frozenset())
    return closure


def delta_sequence(J: Iterable[Iterable[int]], r: int) -> tuple[int, ...]:
    """Degree sequence (delta_0..delta_{r-1}) of a downward-closed family:
    delta_i is the least number of (i+1)-sets of the family containing an
    i-set of the family."""
    family = {frozenset(e) for e in J}
    family.add(frozenset())
    by_size: dict[int, list[frozenset[int]]] = {}
    for e in family:
        by_size.setdefault(len(e), []).append(e)
    # closure check: every nonempty member must have all its facets present
    for e in family:
        for v in e:
            if e - {v} not in family:
                raise InvalidInstanceError(f"family not closed under subsets at {sorted(e)}")
    deltas = []
    for i in range(r):
        level = by_size.get(i, [])
        above = by_size.get(i + 1, [])
        if not level:
            deltas.append(0)
            continue
        deltas.append(min(sum(1 for f in above if e < f) for e in level))
    return tuple(deltas)


def critical_degree_sequence(n: int, r: int) -> tuple[Fraction, ...]:
    """The critical sequence ((1 - i/r) * n for i < r) that space barriers
    approach from below."""
    return tuple(Fraction(r - i, r) * n for i in range(r))


# -- design arithmetic ------------------------------------------------------


@dataclass(frozen=True)
class DesignParams:
    """Parameters (n, q, r, lambda) of a design: every r-set of an n-set is
    to lie in exactly lambda of the chosen q-sets."""

    n: int
    q: int
    r: int
    lam: int = 1

    def __post_init__(self):
        if not (1 <= self.r <= self.q <= self.n):
            raise InvalidInputError(f"need r <= q <= n, got {self}")
        if self.lam < 1:
            raise InvalidInputError("multiplicity must be positive")


def design_divisibility(p: DesignParams) -> bool:
    """The classical necessary conditions: C(q-i, r-i) divides
    lambda * C(n-i, r-i) for every 0 <= i <= r-1."""
    return all(
        (p.lam * math.comb(p.n - i, p.r - i)) % math.comb(p.q - i, p.r - i) == 0
        for i in range(p.r)
    )


def design_count_leading(p: DesignParams) -> float:
    """Natural log of the leading term of the count of designs with these
    parameters:

        lambda!^(-C(n,r)) * ((lambda/e)^(Q-1) * N) ^ (lambda * C(n,r) / Q)

    with Q = C(q,r) and N = C(n-r, q-r).  The lower-order additive o(N)
    inside the base is dropped; returned in log form since the exponents
    overflow any fixed-width type.
    """
    if not design_divisibility(p):
        raise InvalidInstanceError(f"divisibility conditions fail for {p}")
    Q = math.comb(p.q, p.r)
    N = math.comb(p.n - p.r, p.q - p.r)
    cnr = math.comb(p.n, p.r)
    log_base = (Q - 1) * (math.log(p.lam) - 1.0) + math.log(N)
    return -cnr * math.lgamma(p.lam + 1) + (p.lam * cnr / Q) * log_base


def steiner_auxiliary(p: DesignParams) -> Hypergraph:
    """Auxiliary hypergraph whose perfect matchings are the (n, q, r)
    Steiner systems: vertices are the r-subsets of [n] in lexicographic
    order, and each q-subset Q contributes the edge consisting of its
    C(q, r) r-subsets."""
    if p.lam != 1:
        raise InvalidInputError("auxiliary reduction is for Steiner systems (lambda=1)")
    if not (p.r < p.q <= p.n):
        raise InvalidInputError(f"need r < q <= n, got {p}")
    index = {sub: i for i, sub in enumerate(combinations(range(p.n), p.r))}
    edges = []
    for Q in combinations(range(p.n), p.q):
        edges.append(tuple(sorted(index[sub] for sub in combinations(Q, p.r))))
    return Hypergraph(len(index), math.comb(p.q, p.r), edges)


def steiner_vertex_labels(p: DesignParams) -> list[tuple[int, ...]]:
    """The r-subset corresponding to each auxiliary vertex id."""
    return list(combinations(range(p.n), p.r))


# -- Latin squares ----------------------------------------------------------


class LatinSquare:
    """A k x k array over symbols {0..k-1}, each once per row and column."""

    __slots__ = ("order", "cells")

    def __init__(self, cells: Sequence[Sequence[int]]):
        k = len(cells)
        rows = [tuple(row) for row in cells]
        full = set(range(k))
        for row in rows:
            if len(row) != k or set(row) != full:
                raise InvalidInstanceError(f"row {row} is not a permutation of 0..{k - 1}")
        for j in range(k):
            if {row[j] for row in rows} != full:
                raise InvalidInstanceError(f"column {j} repeats a symbol")
        self.order = k
        self.cells = rows

    @classmethod
    def cyclic(cls, k: int) -> "LatinSquare":
        return cls([[(i + j) % k for j in range(k)] for i in range(k)])

    def __repr__(self) -> str:
        return f"LatinSquare(order={self.order})"


def latin_to_3graph(L: LatinSquare) -> Hypergraph:
    """Tripartite 3-graph on rows {0..k-1}, columns {k..2k-1} and symbols
    {2k..3k-1}: one edge per cell.  Perfect matchings are transversals."""
    k = L.order
    edges = [
        (i, k + j, 2 * k + L.cells[i][j])
        for i in range(k)
        for j in range(k)
    ]
    return Hypergraph(3 * k, 3, edges)
