"""Exact dense-tableau simplex for small equality-form linear programs.

Minimizes c.x subject to A x = b, x >= 0 over exact rationals, via the
two-phase method with Bland's anti-cycling rule.  Built for desk-scale
problems (a handful of rows, a few hundred columns) where exact optima are
the whole point; no attempt at sparse or revised tricks.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence, Tuple


class LPInfeasibleError(RuntimeError):
    """The equality system has no nonnegative solution."""


class LPUnboundedError(RuntimeError):
    """The objective is unbounded below on the feasible region."""


_ZERO = Fraction(0)
_ONE = Fraction(1)


def _pivot(rows: List[List[Fraction]], basis: List[int], cost: List[Fraction], row: int, col: int) -> None:
    pivot_row = rows[row]
    inv = _ONE / pivot_row[col]
    if inv != 1:
        rows[row] = pivot_row = [v * inv for v in pivot_row]
    for other in rows:
        if other is pivot_row:
            continue
        factor = other[col]
        if factor:
            for k, v in enumerate(pivot_row):
                if v:
                    other[k] -= factor * v
    factor = cost[col]
    if factor:
        for k, v in enumerate(pivot_row):
            if v:
                cost[k] -= factor * v
    basis[row] = col


def _bland_min(rows: List[List[Fraction]], basis: List[int], cost: List[Fraction], ncols: int) -> None:
    while True:
        col = next((j for j in range(ncols) if cost[j] < 0), None)
        if col is None:
            return
        best_row = -1
        best_ratio = None
        for i, r in enumerate(rows):
            a = r[col]
            if a > 0:
                ratio = r[-1] / a
                if (
                    best_ratio is None
                    or ratio < best_ratio
                    or (ratio == best_ratio and basis[i] < basis[best_row])
                ):
                    best_ratio = ratio
                    best_row = i
        if best_row < 0:
            raise LPUnboundedError("no leaving row: objective unbounded below")
        _pivot(rows, basis, cost, best_row, col)


def linear_min(
    c: Sequence[Fraction], A: Sequence[Sequence[Fraction]], b: Sequence[Fraction]
) -> Tuple[Fraction, List[Fraction]]:
    """Solve min c.x s.t. A x = b, x >= 0 exactly.

    Returns (optimal value, one optimal basic solution).  Raises
    LPInfeasibleError / LPUnboundedError accordingly.
    """
    m = len(A)
    n = len(c)
    if len(b) != m or any(len(row) != n for row in A):
        raise ValueError("inconsistent LP dimensions")

    # rows carry [A | b] with b >= 0; artificials get columns n..n+m-1
    rows: List[List[Fraction]] = []
    for i in range(m):
        row = [Fraction(v) for v in A[i]]
        rhs = Fraction(b[i])
        if rhs < 0:
            row = [-v for v in row]
            rhs = -rhs
        art = [_ZERO] * m
        art[i] = _ONE
        rows.append(row + art + [rhs])
    basis = [n + i for i in range(m)]

    # Phase 1: minimize the sum of artificials.  Reduced costs start as
    # -(column sums) over the real columns, since every artificial is basic.
    total = n + m
    cost = [_ZERO] * (total + 1)
    for j in range(n):
        cost[j] = -sum(rows[i][j] for i in range(m))
    cost[-1] = -sum(rows[i][-1] for i in range(m))
    _bland_min(rows, basis, cost, total)
    if -cost[-1] != 0:
        raise LPInfeasibleError("phase 1 optimum is positive")

    # Drive any degenerate artificials out of the basis; a row with no real
    # nonzero entry is redundant and dropped.
    for i in reversed(range(len(rows))):
        if basis[i] >= n:
            col = next((j for j in range(n) if rows[i][j]), None)
            if col is None:
                del rows[i]
                del basis[i]
            else:
                _pivot(rows, basis, cost, i, col)

    # Phase 2 on the real objective, artificial columns frozen out.
    cost = [Fraction(v) for v in c] + [_ZERO] * m + [_ZERO]
    for i, j in enumerate(basis):
        factor = cost[j]
        if factor:
            for k, v in enumerate(rows[i]):
                if v:
                    cost[k] -= factor * v
    _bland_min(rows, basis, cost, n)

    solution = [_ZERO] * n
    for i, j in enumerate(basis):
        if j < n:
            solution[j] = rows[i][-1]
    value = sum((ci * xi for ci, xi in zip(c, solution)), start=_ZERO)
    return value, solution
