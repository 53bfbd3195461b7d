"""
Exact two-phase simplex over the rationals.

Solves   min cost.x   subject to   rows.x = rhs,  x >= 0
with Bland's rule, so it terminates without any tolerance.
"""

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import List, Optional, Sequence

from app.utils.rational import ONE, ZERO


class LPStatus(str, Enum):
    optimal = "optimal"
    infeasible = "infeasible"
    unbounded = "unbounded"


@dataclass
class LPResult:
    status: LPStatus
    x: List[Fraction] = field(default_factory=list)
    value: Optional[Fraction] = None


class _Tableau:
    def __init__(self, rows: List[List[Fraction]], basis: List[int]):
        # each row holds the constraint coefficients followed by its rhs
        self.rows = rows
        self.basis = basis

    def pivot(self, i: int, j: int) -> None:
        row = self.rows[i]
        piv = row[j]
        if piv != 1:
            row = [a / piv for a in row]
            self.rows[i] = row
        for k, other in enumerate(self.rows):
            if k != i and other[j] != 0:
                f = other[j]
                self.rows[k] = [a - f * b for a, b in zip(other, row)]
        self.basis[i] = j

    def run(self, cost: Sequence[Fraction], allowed: int) -> LPStatus:
        """Primal simplex on the first `allowed` columns, Bland's rule."""
        while True:
            basic = set(self.basis)
            entering = None
            for j in range(allowed):
                if j in basic:
                    continue
                reduced = cost[j] - sum(
                    (cost[b] * self.rows[i][j] for i, b in enumerate(self.basis) if self.rows[i][j] != 0),
                    ZERO,
                )
                if reduced < 0:
                    entering = j
                    break
            if entering is None:
                return LPStatus.optimal

            leaving = None
            best = None
            for i, row in enumerate(self.rows):
                if row[entering] > 0:
                    ratio = row[-1] / row[entering]
                    key = (ratio, self.basis[i])
                    if best is None or key < best:
                        best = key
                        leaving = i
            if leaving is None:
                return LPStatus.unbounded
            self.pivot(leaving, entering)

    def objective(self, cost: Sequence[Fraction]) -> Fraction:
        return sum((cost[b] * self.rows[i][-1] for i, b in enumerate(self.basis)), ZERO)


def solve_lp(cost: Sequence[Fraction], rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> LPResult:
    n = len(cost)
    m = len(rows)

    work: List[List[Fraction]] = []
    for i, (row, b) in enumerate(zip(rows, rhs)):
        sign = -1 if b < 0 else 1
        artificial = [ONE if k == i else ZERO for k in range(m)]
        work.append([sign * Fraction(a) for a in row] + artificial + [sign * Fraction(b)])

    tableau = _Tableau(work, [n + i for i in range(m)])

    # Phase 1: drive the artificial variables to zero.
    phase1 = [ZERO] * n + [ONE] * m
    tableau.run(phase1, n + m)
    if tableau.objective(phase1) != 0:
        return LPResult(status=LPStatus.infeasible)

    # Pivot degenerate artificials out; rows with nothing left are redundant.
    redundant = []
    for i in range(m):
        if tableau.basis[i] >= n:
            col = next((j for j in range(n) if tableau.rows[i][j] != 0), None)
            if col is None:
                redundant.append(i)
            else:
                tableau.pivot(i, col)
    for i in reversed(redundant):
        del tableau.rows[i]
        del tableau.basis[i]

    # Phase 2 on the original columns only.
    phase2 = [Fraction(c) for c in cost] + [ZERO] * m
    status = tableau.run(phase2, n)
    if status == LPStatus.unbounded:
        return LPResult(status=status)

    x = [ZERO] * n
    for i, b in enumerate(tableau.basis):
        x[b] = tableau.rows[i][-1]
    return LPResult(status=LPStatus.optimal, x=x, value=tableau.objective(phase2))
