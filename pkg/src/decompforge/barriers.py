"""Extremal obstructions to perfect matching, and their detection.

Two constructions cap matchings in r-graphs: space barriers (a small set S
met at least i times by every edge, so any matching has at most |S|/i
edges) and divisibility barriers (all edge intersection-count vectors lie
in a proper integer lattice missing the global part-size vector).

Lattices are kept in Hermite normal form so that equality of lattices is
equality of bases.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from itertools import combinations
from math import gcd
from typing import Iterable, Sequence

from .core import Edge, Hypergraph, Matching
from .errors import (
    InvalidBarrierError,
    InvalidInputError,
    InvalidInstanceError,
    TooLargeError,
)


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x, nx, y, ny, g, ng = 1, 0, 0, 1, a, b
    while ng:
        q = g // ng
        x, nx = nx, x - q * nx
        y, ny = ny, y - q * ny
        g, ng = ng, g - q * ng
    return x, y, g


def _hnf_rows(vectors: Iterable[Sequence[int]], dim: int) -> list[list[int]]:
    """Row-style Hermite normal form of the integer span of the vectors:
    row echelon, positive pivots, entries above each pivot reduced into
    [0, pivot)."""
    rows: list[list[int]] = []  # echelon, ordered by pivot column
    pivots: list[int] = []
    for vec in vectors:
        v = list(vec)
        if len(v) != dim:
            raise InvalidInputError(f"vector {v} has dimension != {dim}")
        i = 0
        for j in range(dim):
            if v[j] == 0:
                continue
            while i < len(pivots) and pivots[i] < j:
                i += 1
            if i == len(pivots) or pivots[i] > j:
                if v[j] < 0:
                    v = [-x for x in v]
                rows.insert(i, v)
                pivots.insert(i, j)
                v = None
                break
            row = rows[i]
            a, b = row[j], v[j]
            if b % a == 0:
                q = b // a
                for k in range(j, dim):
                    v[k] -= q * row[k]
            else:
                x, y, g = _xgcd(a, b)
                aa, bb = a // g, b // g
                for k in range(j, dim):
                    rk, vk = row[k], v[k]
                    row[k] = x * rk + y * vk
                    v[k] = -bb * rk + aa * vk
        # v is either consumed by insertion or reduced to zero
    # reduce entries above pivots
    for i in range(len(rows) - 1, -1, -1):
        j = pivots[i]
        a = rows[i][j]
        for k in range(i):
            q = rows[k][j] // a  # floor division puts entry in [0, a)
            if q:
                for col in range(j, dim):
                    rows[k][col] -= q * rows[i][col]
    return rows


@dataclass(frozen=True)
class IntegerLattice:
    """Subgroup of Z^d given by a Hermite-normal-form row basis."""

    dim: int
    basis: tuple[tuple[int, ...], ...]

    @property
    def rank(self) -> int:
        return len(self.basis)

    def index_in_ambient(self) -> int | None:
        """[Z^d : L] when L has full rank, else None (infinite index)."""
        if self.rank != self.dim:
            return None
        result = 1
        for i, row in enumerate(self.basis):
            result *= row[i] if row[i] else 0
        return result if result else None


def lattice_from_vectors(vectors: Sequence[Sequence[int]]) -> IntegerLattice:
    """HNF basis of the integer span of the given vectors."""
    if not vectors:
        raise InvalidInputError("need at least one vector")
    dim = len(vectors[0])
    rows = _hnf_rows(vectors, dim)
    return IntegerLattice(dim, tuple(tuple(r) for r in rows))


def lattice_contains(L: IntegerLattice, v: Sequence[int]) -> bool:
    """Membership by back-substitution against the HNF basis."""
    if len(v) != L.dim:
        raise InvalidInputError(f"vector {v} has dimension != {L.dim}")
    residue = list(v)
    for row in L.basis:
        j = next(k for k, x in enumerate(row) if x)
        if residue[j] == 0:
            continue
        if residue[j] % row[j] != 0:
            return False
        q = residue[j] // row[j]
        for k in range(j, L.dim):
            residue[k] -= q * row[k]
    return not any(residue)


class LatticeSolver:
    """Incremental HNF of a set of generator vectors that also remembers,
    for each basis row, an expression of it as an integer combination of
    the generators.  Used to solve A x = b over the integers where the
    generators are the columns of A."""

    def __init__(self, dim: int):
        self.dim = dim
        self._rows: list[list[int]] = []
        self._exprs: list[dict[int, int]] = []
        self._pivots: list[int] = []
        self._count = 0

    @staticmethod
    def _combine(e1: dict[int, int], c1: int, e2: dict[int, int], c2: int) -> dict[int, int]:
        out = {}
        for k, v in e1.items():
            out[k] = c1 * v
        for k, v in e2.items():
            out[k] = out.get(k, 0) + c2 * v
        return {k: v for k, v in out.items() if v}

    def add(self, vec: Sequence[int]) -> None:
        v = list(vec)
        expr = {self._count: 1}
        self._count += 1
        i = 0
        for j in range(self.dim):
            if v[j] == 0:
                continue
            while i < len(self._pivots) and self._pivots[i] < j:
                i += 1
            if i == len(self._pivots) or self._pivots[i] > j:
                if v[j] < 0:
                    v = [-x for x in v]
                    expr = {k: -c for k, c in expr.items()}
                self._rows.insert(i, v)
                self._exprs.insert(i, expr)
                self._pivots.insert(i, j)
                return
            row, rexpr = self._rows[i], self._exprs[i]
            a, b = row[j], v[j]
            if b % a == 0:
                q = b // a
                for k in range(j, self.dim):
                    v[k] -= q * row[k]
                expr = self._combine(expr, 1, rexpr, -q)
            else:
                x, y, g = _xgcd(a, b)
                aa, bb = a // g, b // g
                new_row = [x * row[k] + y * v[k] if k >= j else 0 for k in range(self.dim)]
                new_v = [-bb * row[k] + aa * v[k] if k >= j else 0 for k in range(self.dim)]
                self._exprs[i], expr = (
                    self._combine(rexpr, x, expr, y),
                    self._combine(rexpr, -bb, expr, aa),
                )
                self._rows[i] = new_row
                v = new_v

    def solve(self, target: Sequence[int]) -> dict[int, int] | None:
        """Integer coefficients over the generators reproducing the target,
        or None when the target is outside their integer span."""
        residue = list(target)
        coeffs: dict[int, int] = {}
        for i, row in enumerate(self._rows):
            j = self._pivots[i]
            if residue[j] == 0:
                continue
            if residue[j] % row[j] != 0:
                return None
            q = residue[j] // row[j]
            for k in range(j, self.dim):
                residue[k] -= q * row[k]
            for gen, c in self._exprs[i].items():
                coeffs[gen] = coeffs.get(gen, 0) + q * c
        if any(residue):
            return None
        return {k: v for k, v in coeffs.items() if v}


# -- vertex partitions and the two barrier constructions ---------------------


class VertexPartition:
    """Ordered partition (V_1..V_d) of {0..n-1} into nonempty parts."""

    __slots__ = ("n", "parts")

    def __init__(self, n: int, parts: Sequence[Iterable[int]]):
        canon = tuple(tuple(sorted(part)) for part in parts)
        seen: set[int] = set()
        for part in canon:
            if not part:
                raise InvalidInputError("empty part in partition")
            for v in part:
                if v in seen or not (0 <= v < n):
                    raise InvalidInputError(f"vertex {v} repeated or out of range")
                seen.add(v)
        if len(seen) != n:
            raise InvalidInputError("parts do not cover the vertex set")
        self.n = n
        self.parts = canon

    @property
    def d(self) -> int:
        return len(self.parts)

    def sizes(self) -> tuple[int, ...]:
        return tuple(len(p) for p in self.parts)

    def part_index(self) -> list[int]:
        idx = [0] * self.n
        for i, part in enumerate(self.parts):
            for v in part:
                idx[v] = i
        return idx


def edge_vector(edge: Edge, P: VertexPartition) -> tuple[int, ...]:
    """Intersection-count vector (|e ∩ V_1|, ..., |e ∩ V_d|); sums to |e|."""
    idx = P.part_index()
    counts = [0] * P.d
    for v in edge:
        counts[idx[v]] += 1
    return tuple(counts)


@dataclass(frozen=True)
class SpaceBarrierSpec:
    n: int
    r: int
    i: int
    S: tuple[int, ...]

    def __post_init__(self):
        if not (1 <= self.i <= self.r):
            raise InvalidInputError(f"need 1 <= i <= r, got i={self.i}")
        object.__setattr__(self, "S", tuple(sorted(self.S)))
        if any(not (0 <= v < self.n) for v in self.S):
            raise InvalidInputError("S out of range")


def space_barrier(spec: SpaceBarrierSpec) -> Hypergraph:
    """All edges of the complete r-graph meeting S at least i times.  Any
    matching in the result has size at most floor(|S|/i)."""
    if len(spec.S) * spec.r >= spec.i * spec.n:
        warnings.warn(
            f"|S|={len(spec.S)} is not below i*n/r={spec.i * spec.n / spec.r:.2f}; "
            "construction is not a barrier",
            stacklevel=2,
        )
    S = set(spec.S)
    edges = [
        e
        for e in combinations(range(spec.n), spec.r)
        if sum(1 for v in e if v in S) >= spec.i
    ]
    return Hypergraph(spec.n, spec.r, edges)


def divisibility_barrier(P: VertexPartition, L: IntegerLattice, r: int) -> Hypergraph:
    """All edges of the complete r-graph whose intersection-count vector
    lies in L.  Requires the part-size vector to be outside L, which is
    what forbids a perfect matching."""
    if L.dim != P.d:
        raise InvalidInputError("lattice dimension must match number of parts")
    if lattice_contains(L, P.sizes()):
        raise InvalidBarrierError(
            f"part sizes {P.sizes()} lie in the lattice; construction is vacuous"
        )
    edges = [
        e
        for e in combinations(range(P.n), r)
        if lattice_contains(L, edge_vector(e, P))
    ]
    return Hypergraph(P.n, r, edges)


@dataclass(frozen=True)
class BarrierVerdict:
    barrier: bool
    lattice: IntegerLattice
    part_sizes: tuple[int, ...]
    index: int | None = field(default=None)

    def __bool__(self) -> bool:
        return self.barrier


def detect_divisibility_barrier(H: Hypergraph, P: VertexPartition) -> BarrierVerdict:
    """Compute the lattice generated by all edge vectors of H under P.  If
    the part-size vector is outside it, H is contained in a divisibility
    barrier and has no perfect matching."""
    if P.n != H.n:
        raise InvalidInputError("partition and hypergraph disagree on n")
    if not H.edges:
        vectors: list[Sequence[int]] = [(0,) * P.d]
    else:
        vectors = sorted({edge_vector(e, P) for e in H.edges})
    L = lattice_from_vectors(vectors)
    sizes = P.sizes()
    is_barrier = not lattice_contains(L, sizes)
    return BarrierVerdict(
        barrier=is_barrier,
        lattice=L,
        part_sizes=sizes,
        index=L.index_in_ambient(),
    )


def parity_barrier(n: int, odd_part_size: int) -> tuple[Hypergraph, VertexPartition]:
    """The parity obstruction for 3-graphs: V_1 of odd size, edges meeting
    V_1 an even number of times (lattice generated by (2,0) and (0,1))."""
    if odd_part_size % 2 == 0 or not (0 < odd_part_size < n):
        raise InvalidInputError("first part must have odd size strictly inside V")
    P = VertexPartition(n, [range(odd_part_size), range(odd_part_size, n)])
    L = lattice_from_vectors([(2, 0), (0, 1)])
    return divisibility_barrier(P, L, 3), P


def is_tridivisible(G: Hypergraph) -> bool:
    """True iff 3 divides the edge count and every degree is even: the
    divisibility precondition for a triangle decomposition."""
    if G.r != 2:
        raise InvalidInstanceError("tridivisibility is defined for graphs (r=2)")
    return len(G.edges) % 3 == 0 and all(d % 2 == 0 for d in G.degrees())


# -- exhaustive maximum matching (oracle) ------------------------------------


def exact_max_matching(H: Hypergraph, vertex_limit: int = 15) -> Matching:
    """Maximum-size matching by branch and bound; deterministic, returning
    the lexicographically smallest optimum.  Guarded by a vertex limit
    because the search is exponential."""
    if H.n > vertex_limit:
        raise TooLargeError(f"n={H.n} exceeds exhaustive bound {vertex_limit}")
    edges_at: list[list[Edge]] = [[] for _ in range(H.n)]
    for e in H.sorted_edges():
        edges_at[min(e)].append(e)

    best_size = -1
    best: tuple[Edge, ...] = ()
    used = [False] * H.n
    chosen: list[Edge] = []

    def consider() -> None:
        nonlocal best_size, best
        cand = tuple(sorted(chosen))
        if len(chosen) > best_size or (len(chosen) == best_size and cand < best):
            best_size = len(chosen)
            best = cand

    def search(v: int, free: int) -> None:
        while v < H.n and used[v]:
            v += 1
        if v == H.n:
            consider()
            return
        if len(chosen) + free // H.r <= best_size:
            # cannot strictly improve; still allow lexicographic refinement
            if len(chosen) + free // H.r < best_size:
                return
        for e in edges_at[v]:
            if any(used[u] for u in e):
                continue
            for u in e:
                used[u] = True
            chosen.append(e)
            search(v + 1, free - H.r)
            chosen.pop()
            for u in e:
                used[u] = False
        # leave v uncovered
        search(v + 1, free - 1)

    search(0, H.n)
    return Matching(best)


def has_perfect_matching(H: Hypergraph, vertex_limit: int = 15) -> bool:
    if H.n % H.r != 0:
        return False
    return len(exact_max_matching(H, vertex_limit)) * H.r == H.n
