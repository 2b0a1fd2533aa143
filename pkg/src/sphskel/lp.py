"""Exact rational linear programming.

Solves ``max c.x  s.t.  A x <= b, x >= 0`` with a dense two-phase tableau
simplex using Bland's anti-cycling rule.  Every pivot is a Fraction
operation, so optimal values, primal vertices, and dual certificates are
exact.  Returned primal points are basic solutions, i.e. vertices of the
feasible region.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as Q
from typing import Sequence

from .linalg import Mat, Vec, dot, mat, vec

OPTIMAL = "optimal"
UNBOUNDED = "unbounded"
INFEASIBLE = "infeasible"


@dataclass(frozen=True)
class LpProblem:
    """max c.x  s.t.  A x <= b, x >= 0 (A is |b| x |c|)."""

    c: Vec
    a: Mat
    b: Vec

    def __post_init__(self) -> None:
        for row in self.a:
            if len(row) != len(self.c):
                raise ValueError("constraint row length differs from objective")
        if len(self.a) != len(self.b):
            raise ValueError("constraint count differs from rhs length")

    @staticmethod
    def build(c: Sequence, a: Sequence[Sequence], b: Sequence) -> "LpProblem":
        return LpProblem(vec(c), mat(a), vec(b))


@dataclass(frozen=True)
class LpResult:
    status: str
    value: Q | None = None
    x: Vec | None = None
    y: Vec | None = None


def _pivot(tab: list[list[Q]], basis: list[int], row: int, col: int) -> None:
    piv = tab[row][col]
    tab[row] = [v / piv for v in tab[row]]
    for i in range(len(tab)):
        if i != row and tab[i][col] != 0:
            f = tab[i][col]
            tab[i] = [a - f * b for a, b in zip(tab[i], tab[row])]
    basis[row] = col


def _reduced_costs(tab: list[list[Q]], basis: list[int], cost: list[Q]) -> list[Q]:
    red = list(cost)
    for i, bi in enumerate(basis):
        cb = cost[bi]
        if cb != 0:
            row = tab[i]
            for j in range(len(cost)):
                if row[j] != 0:
                    red[j] -= cb * row[j]
    return red


def _simplex(tab: list[list[Q]], basis: list[int], cost: list[Q]) -> str:
    """Run Bland-rule simplex to optimality or unboundedness.

    ``cost`` has one entry per variable column; the rightmost tableau column
    is the rhs and is never eligible to enter.
    """
    while True:
        red = _reduced_costs(tab, basis, cost)
        enter = next((j for j in range(len(cost)) if red[j] > 0), None)
        if enter is None:
            return OPTIMAL
        leave = None
        best_ratio: Q | None = None
        for i, row in enumerate(tab):
            aij = row[enter]
            if aij > 0:
                ratio = row[-1] / aij
                if (
                    best_ratio is None
                    or ratio < best_ratio
                    or (ratio == best_ratio and basis[i] < basis[leave])
                ):
                    best_ratio = ratio
                    leave = i
        if leave is None:
            return UNBOUNDED
        _pivot(tab, basis, leave, enter)


def solve(problem: LpProblem) -> LpResult:
    """Solve the LP; statuses are optimal / unbounded / infeasible."""
    n = len(problem.c)
    m = len(problem.b)
    if m == 0:
        if any(cj > 0 for cj in problem.c):
            return LpResult(UNBOUNDED)
        return LpResult(OPTIMAL, Q(0), (Q(0),) * n, ())

    # Columns: n originals, m slacks, then phase-1 artificials as needed.
    art_rows = [i for i in range(m) if problem.b[i] < 0]
    nart = len(art_rows)
    ncols = n + m + nart
    art_of_row = {r: n + m + k for k, r in enumerate(art_rows)}
    tab: list[list[Q]] = []
    basis: list[int] = []
    for i in range(m):
        row = [Q(x) for x in problem.a[i]]
        row += [Q(1) if j == i else Q(0) for j in range(m)]
        row += [Q(0)] * nart
        row.append(Q(problem.b[i]))
        if i in art_of_row:
            row = [-v for v in row]
            row[art_of_row[i]] = Q(1)
            basis.append(art_of_row[i])
        else:
            basis.append(n + i)
        tab.append(row)

    if nart:
        cost1 = [Q(0)] * (n + m) + [Q(-1)] * nart
        _simplex(tab, basis, cost1)
        infeas = sum((tab[i][-1] for i in range(len(tab)) if basis[i] >= n + m), Q(0))
        if infeas != 0:
            return LpResult(INFEASIBLE)
        # Drive remaining (zero-valued) artificials out; drop null rows.
        for i in reversed(range(len(tab))):
            if basis[i] >= n + m:
                col = next((j for j in range(n + m) if tab[i][j] != 0), None)
                if col is None:
                    del tab[i]
                    del basis[i]
                else:
                    _pivot(tab, basis, i, col)
        tab = [row[: n + m] + row[-1:] for row in tab]
        ncols = n + m

    cost = [Q(c) for c in problem.c] + [Q(0)] * (ncols - n)
    status = _simplex(tab, basis, cost)
    if status == UNBOUNDED:
        return LpResult(UNBOUNDED)

    x = [Q(0)] * n
    for i, bi in enumerate(basis):
        if bi < n:
            x[bi] = tab[i][-1]
    # Dual values are the negated reduced costs of the slack columns.  A
    # row dropped as redundant in phase 1 has an all-zero slack column left,
    # hence multiplier 0.
    red = _reduced_costs(tab, basis, cost)
    y = tuple(-red[n + j] for j in range(m))
    return LpResult(OPTIMAL, dot(problem.c, x), tuple(x), y)


def check_certificate(problem: LpProblem, result: LpResult) -> bool:
    """Exact strong-duality check of a claimed optimal result.

    Verifies primal feasibility (A x <= b, x >= 0), dual feasibility
    (A^T y >= c, y >= 0), and the zero duality gap c.x == b.y.
    """
    if result.status != OPTIMAL or result.x is None or result.y is None:
        return False
    x, y = result.x, result.y
    if len(x) != len(problem.c) or len(y) != len(problem.b):
        return False
    if any(v < 0 for v in x) or any(v < 0 for v in y):
        return False
    for row, bi in zip(problem.a, problem.b):
        if dot(row, x) > bi:
            return False
    for j in range(len(problem.c)):
        col = sum((problem.a[i][j] * y[i] for i in range(len(y))), Q(0))
        if col < problem.c[j]:
            return False
    if dot(problem.c, x) != dot(problem.b, y):
        return False
    if result.value is not None and result.value != dot(problem.c, x):
        return False
    return True


def solve_free(c: Sequence[Q], a: Sequence[Sequence[Q]], b: Sequence[Q]) -> LpResult:
    """max c.x s.t. A x <= b with x unrestricted in sign (x = x+ - x-)."""
    n = len(c)
    cc = list(c) + [-Q(v) for v in c]
    aa = [list(row) + [-Q(v) for v in row] for row in a]
    res = solve(LpProblem.build(cc, aa, list(b)))
    if res.status != OPTIMAL:
        return res
    x = tuple(res.x[j] - res.x[n + j] for j in range(n))
    return LpResult(OPTIMAL, res.value, x, res.y)
