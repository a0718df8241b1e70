"""Exact rational feasibility solver for systems A x = b, x >= 0.

Phase-one revised simplex over Fraction arithmetic with Bland's rule
(columns scanned in the order given, artificials last), so termination is
guaranteed and runs are deterministic.  The inverse basis is kept as
sparse rows; a crash pass seeds the basis with disjoint-support columns,
which on incidence-type systems removes most artificials up front.

Returns either a feasible vertex or a Farkas certificate y with
y.b > 0 and y.A_j <= 0 for every column, proving infeasibility exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import ImpossibleStateError

Column = dict[int, Fraction]


@dataclass(frozen=True)
class FeasiblePoint:
    values: dict[int, Fraction]  # column index -> value (zeros omitted)


@dataclass(frozen=True)
class FarkasCertificate:
    y: dict[int, Fraction]  # row index -> multiplier (zeros omitted)
    objective: Fraction  # y . b, strictly positive


def _coerce_columns(columns: Sequence[dict[int, int | Fraction]]) -> list[Column]:
    return [{r: Fraction(a) for r, a in col.items() if a} for col in columns]


def solve_feasibility(
    columns: Sequence[dict[int, int | Fraction]],
    rhs: Sequence[int | Fraction],
    max_pivots: int | None = None,
) -> FeasiblePoint | FarkasCertificate:
    cols = _coerce_columns(columns)
    b = [Fraction(v) for v in rhs]
    m = len(b)
    if any(v < 0 for v in b):
        raise ValueError("rhs must be non-negative (negate rows first)")
    ncols = len(cols)
    ART = ncols  # artificial for row r has column id ART + r

    # crash: greedily take columns with pairwise row-disjoint positive support
    basis_of_row: list[int | None] = [None] * m
    owner: list[int | None] = [None] * m  # row -> crash column occupying it
    leader: dict[int, int] = {}
    taken: set[int] = set()
    for j, col in enumerate(cols):
        if not col or any(a <= 0 for a in col.values()):
            continue
        rows = sorted(col)
        if any(r in taken for r in rows):
            continue
        lead = rows[0]
        val = b[lead] / col[lead]
        if val < 0 or any(b[r] - col[r] * val < 0 for r in rows[1:]):
            continue
        taken.update(rows)
        leader[j] = lead
        for r in rows:
            owner[r] = j

    basis: list[int] = [0] * m
    binv: list[dict[int, Fraction]] = [dict() for _ in range(m)]
    xb: list[Fraction] = [Fraction(0)] * m
    for r in range(m):
        j = owner[r]
        if j is not None and leader[j] == r:
            basis[r] = j
        else:
            basis[r] = ART + r
    # initial B = crash cols + unit cols; invert by forward substitution:
    # row r of B^-1: if r hosts a crash column j, it is e_r / a_lead;
    # an artificial row r whose b-row is touched by crash column j must
    # subtract that column's contribution.
    for r in range(m):
        j = basis[r]
        if j < ncols:
            binv[r][r] = 1 / cols[j][r]
            xb[r] = b[r] / cols[j][r]
        else:
            binv[r][r] = Fraction(1)
            xb[r] = b[r]
            own = owner[r]
            if own is not None:
                lead = leader[own]
                coeff = cols[own][r] / cols[own][lead]
                binv[r][lead] = -coeff
                xb[r] = b[r] - coeff * b[lead]

    art_rows = {r for r in range(m) if basis[r] >= ART}
    limit = max_pivots if max_pivots is not None else 50 * (m + ncols) + 1000

    for _ in range(limit):
        objective = sum((xb[r] for r in art_rows), Fraction(0))
        if objective == 0:
            values: dict[int, Fraction] = {}
            for r in range(m):
                if basis[r] < ncols and xb[r]:
                    values[basis[r]] = xb[r]
            return FeasiblePoint(values)

        # duals: phase-one costs are 1 exactly on basic artificials
        y: dict[int, Fraction] = {}
        for r in art_rows:
            for k, v in binv[r].items():
                y[k] = y.get(k, 0) + v

        entering = -1
        rc_cache: Fraction = Fraction(0)
        for j, col in enumerate(cols):
            rc = -sum(y.get(r, 0) * a for r, a in col.items())
            if rc < 0:
                entering, rc_cache = j, rc
                break
        if entering < 0:
            for r in range(m):
                rc = 1 - y.get(r, 0)
                if rc < 0:
                    entering, rc_cache = ART + r, rc
                    break
        if entering < 0:
            yy = {k: v for k, v in y.items() if v}
            return FarkasCertificate(y=yy, objective=objective)

        if entering < ncols:
            colmap = cols[entering]
        else:
            colmap = {entering - ART: Fraction(1)}
        direction: list[Fraction] = []
        for r in range(m):
            row = binv[r]
            direction.append(sum((row.get(k, 0) * a for k, a in colmap.items()), Fraction(0)))

        pivot_row = -1
        best_t: Fraction | None = None
        for r in range(m):
            if direction[r] > 0:
                t = xb[r] / direction[r]
                if best_t is None or t < best_t or (
                    t == best_t and basis[r] < basis[pivot_row]
                ):
                    best_t, pivot_row = t, r
        if pivot_row < 0:
            raise ImpossibleStateError("phase-one objective unbounded below")

        dp = direction[pivot_row]
        prow = {k: v / dp for k, v in binv[pivot_row].items() if v}
        binv[pivot_row] = prow
        xb[pivot_row] = xb[pivot_row] / dp
        t0 = xb[pivot_row]
        for r in range(m):
            if r == pivot_row:
                continue
            dr = direction[r]
            if dr:
                row = binv[r]
                for k, v in prow.items():
                    nv = row.get(k, 0) - dr * v
                    if nv:
                        row[k] = nv
                    elif k in row:
                        del row[k]
                xb[r] -= dr * t0
        if basis[pivot_row] >= ART:
            art_rows.discard(pivot_row)
        basis[pivot_row] = entering
        if entering >= ART:
            art_rows.add(pivot_row)

    raise ImpossibleStateError("pivot limit exceeded; Bland's rule should terminate")
