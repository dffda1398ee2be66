"""Exact linear feasibility over rationals.

Solves equality systems ``A x = b, x >= 0`` by a dense phase-1 simplex with
Bland's pivoting rule (smallest eligible column enters, smallest basis index
breaks ratio ties).  Bland's rule guarantees finite termination with no
genericity assumptions, which matters here because the geometry this backs
is routinely degenerate (collinear lattice points, repeated coordinates).

Every answer doubles as a certificate:

* feasible: a basic solution vector, so at most ``rank`` entries are
  nonzero and the basic columns are linearly independent;
* infeasible: a Farkas vector ``y`` with ``y . A_j <= 0`` for every column
  and ``y . b > 0``, checkable by plain rational arithmetic.

Artificial columns never re-enter the basis once they leave.  That cannot
produce a wrong verdict: a "feasible" exit carries an explicit solution,
and an "infeasible" exit carries a Farkas vector whose validity follows
from the terminal reduced costs alone.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .vectors import ONE, ZERO


@dataclass
class FeasibilityResult:
    feasible: bool
    solution: Optional[list]  # per structural column, when feasible
    farkas: Optional[list]    # per row, when infeasible


class ExactSimplex:
    """Phase-1 tableau for ``min sum(artificials)`` over ``Ax + Is = b``.

    ``columns`` is column-major: columns[j][i] is the coefficient of
    variable j in row i.
    """

    def __init__(self, columns: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]):
        m = len(rhs)
        n = len(columns)
        self.m = m
        self.n = n
        sign = [-1 if rhs[i] < 0 else 1 for i in range(m)]
        self.row_sign = sign
        self.rows = []
        for i in range(m):
            row = [sign[i] * columns[j][i] for j in range(n)]
            row.extend(ONE if t == i else ZERO for t in range(m))
            row.append(sign[i] * rhs[i])
            self.rows.append(row)
        self.basis = [n + i for i in range(m)]
        ncols = n + m
        reduced = []
        for j in range(ncols):
            s = ZERO
            for i in range(m):
                s += self.rows[i][j]
            cost = ZERO if j < n else ONE
            reduced.append(cost - s)
        self.reduced = reduced
        self.solved = False

    def objective(self) -> Fraction:
        total = ZERO
        for i in range(self.m):
            if self.basis[i] >= self.n:
                total += self.rows[i][-1]
        return total

    def _pivot(self, row: int, col: int) -> None:
        rows = self.rows
        prow = rows[row]
        piv = prow[col]
        if piv != 1:
            inv = ONE / piv
            prow = [v * inv for v in prow]
            rows[row] = prow
        for i in range(self.m):
            if i == row:
                continue
            f = rows[i][col]
            if f:
                target = rows[i]
                rows[i] = [a - f * b for a, b in zip(target, prow)]
        f = self.reduced[col]
        if f:
            red = self.reduced
            for j in range(len(red)):
                if prow[j]:
                    red[j] -= f * prow[j]
        self.basis[row] = col

    def _ratio_row(self, col: int) -> Optional[int]:
        best_row = None
        best_ratio = None
        for i in range(self.m):
            c = self.rows[i][col]
            if c > 0:
                ratio = self.rows[i][-1] / c
                if (best_ratio is None or ratio < best_ratio
                        or (ratio == best_ratio and self.basis[i] < self.basis[best_row])):
                    best_ratio = ratio
                    best_row = i
        return best_row

    def solve(self) -> bool:
        """Run phase 1 to termination; True iff the system is feasible."""
        n = self.n
        red = self.reduced
        while True:
            enter = -1
            for j in range(n):  # Bland: smallest structural index
                if red[j] < 0:
                    enter = j
                    break
            if enter < 0:
                break
            row = self._ratio_row(enter)
            if row is None:
                # Phase-1 objective is bounded below by zero, so an
                # unbounded ray is impossible.
                raise AssertionError("phase-1 ratio test found no pivot row")
            self._pivot(row, enter)
        self.solved = True
        return self.objective() == 0

    def solution(self) -> list:
        x = [ZERO] * self.n
        for i in range(self.m):
            if self.basis[i] < self.n:
                x[self.basis[i]] = self.rows[i][-1]
        return x

    def farkas(self) -> list:
        # y_i = 1 - reduced_cost(artificial_i), then undo the row flips.
        y = []
        for i in range(self.m):
            yi = ONE - self.reduced[self.n + i]
            y.append(self.row_sign[i] * yi)
        return y

    def force_into_basis(self, col: int) -> bool:
        """Pivot a structural column into the basis of a feasible tableau.

        Keeps feasibility (min-ratio step).  Returns False when the column
        has no positive tableau entry, which cannot happen for systems
        whose feasible region is bounded, but is reported rather than
        assumed.
        """
        if col in self.basis:
            return True
        row = self._ratio_row(col)
        if row is None:
            return False
        self._pivot(row, col)
        return True


def solve_feasibility(columns: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> FeasibilityResult:
    tab = ExactSimplex(columns, rhs)
    if tab.solve():
        return FeasibilityResult(True, tab.solution(), None)
    return FeasibilityResult(False, None, tab.farkas())
