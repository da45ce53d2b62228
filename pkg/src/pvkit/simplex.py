"""Dense two-phase simplex over exact rationals.

Solves ``min c.x  s.t.  A x = b, x >= 0`` with every pivot carried out in
``fractions.Fraction`` arithmetic, so optimality, feasibility and the
reported duals are exact -- there is no feasibility tolerance to tune.
Bland's rule (lowest eligible index for both the entering column and the
leaving basic variable) makes the run deterministic and cycle-free.
Problem sizes here are a few hundred variables at most, where exact
rationals are entirely affordable.

Artificial columns are kept in the tableau after phase 1 (banned from
re-entering), which leaves the basis inverse sitting in the artificial
block: the dual vector ``y = c_B B^-1`` is read off directly.  Redundant
rows (an artificial stuck basic with an all-zero row) are deleted; their
duals are reported as 0.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)
_PIVOT_CAP = 20000


@dataclass
class LPResult:
    status: str  # 'optimal' | 'infeasible' | 'unbounded'
    x: list[Fraction]
    duals: list[Fraction]
    objective: Fraction | None


def _pivot(T, basis, row, col):
    piv = T[row][col]
    T[row] = [v / piv for v in T[row]]
    for r in range(len(T)):
        if r != row and T[r][col] != 0:
            factor = T[r][col]
            T[r] = [a - factor * b for a, b in zip(T[r], T[row])]
    basis[row] = col


def _optimize(T, basis, costs, banned) -> str:
    n_cols = len(T[0]) - 1
    for _ in range(_PIVOT_CAP):
        # reduced costs from scratch: sizes are tiny, simplicity wins
        y = [costs[basis[r]] for r in range(len(T))]
        entering = -1
        for j in range(n_cols):
            if j in banned or j in basis:
                continue
            rc = costs[j] - sum(y[r] * T[r][j] for r in range(len(T)))
            if rc < 0:
                entering = j
                break
        if entering < 0:
            return "optimal"
        leave = -1
        best = None
        for r in range(len(T)):
            a = T[r][entering]
            if a > 0:
                ratio = T[r][-1] / a
                if best is None or ratio < best or (
                    ratio == best and basis[r] < basis[leave]
                ):
                    best = ratio
                    leave = r
        if leave < 0:
            return "unbounded"
        _pivot(T, basis, leave, entering)
    raise RuntimeError("simplex did not terminate within the pivot cap")


def solve_lp(A, b, c) -> LPResult:
    """Exact ``min c.x  s.t.  A x = b, x >= 0``; requires b >= 0 rowwise."""
    m = len(A)
    n = len(c)
    costs = [Fraction(v) for v in c]
    for bi in b:
        if Fraction(bi) < 0:
            raise ValueError("solve_lp expects b >= 0 (flip rows beforehand)")
    T = [
        [Fraction(v) for v in A[i]]
        + [_ONE if k == i else _ZERO for k in range(m)]
        + [Fraction(b[i])]
        for i in range(m)
    ]
    basis = [n + i for i in range(m)]

    phase1 = [_ZERO] * n + [_ONE] * m
    _optimize(T, basis, phase1, banned=frozenset())
    infeasibility = sum(
        T[r][-1] for r in range(len(T)) if basis[r] >= n
    )
    if infeasibility > 0:
        return LPResult("infeasible", [], [], None)

    # drive leftover zero-level artificials out; delete truly redundant rows
    r = 0
    while r < len(T):
        if basis[r] >= n:
            col = next((j for j in range(n) if T[r][j] != 0), -1)
            if col >= 0:
                _pivot(T, basis, r, col)
            else:
                del T[r], basis[r]
                continue
        r += 1

    full_costs = costs + [_ZERO] * m
    banned = frozenset(range(n, n + m))
    status = _optimize(T, basis, full_costs, banned)
    if status != "optimal":
        return LPResult(status, [], [], None)

    x = [_ZERO] * n
    for r, bv in enumerate(basis):
        if bv < n:
            x[bv] = T[r][-1]
    # the artificial block holds the row-transform matrix M with
    # tableau = M * [A | I | b], so y = c_B * M is a dual for the full
    # original row set, deleted redundant rows included
    duals = [
        sum(full_costs[basis[r]] * T[r][n + i0] for r in range(len(T)))
        for i0 in range(m)
    ]
    objective = sum(full_costs[basis[r]] * T[r][-1] for r in range(len(T)))
    return LPResult("optimal", x, duals, objective)
