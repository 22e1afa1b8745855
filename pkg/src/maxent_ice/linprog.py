"""A minimal dense two-phase simplex for the small LPs used by the oracle.

Solves  min c^T x  s.t.  A_ub x <= b_ub,  A_eq x = b_eq,  x >= 0.
Bland's rule keeps it cycle-free; problem sizes here are tiny (tens of
variables and rows), so no effort is spent on sparsity or revised updates.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["LPResult", "solve_lp"]

_TOL = 1e-9


@dataclass(frozen=True)
class LPResult:
    x: np.ndarray
    value: float
    status: str  # optimal | infeasible | unbounded


def _pivot(tab: np.ndarray, basis: np.ndarray, row: int, col: int) -> None:
    tab[row] /= tab[row, col]
    for r in range(tab.shape[0]):
        if r != row and tab[r, col] != 0.0:
            tab[r] -= tab[r, col] * tab[row]
    basis[row] = col


def _run_simplex(tab: np.ndarray, basis: np.ndarray, num_cols: int) -> str:
    """Iterate on a tableau whose last row is the (maximization-form) objective."""
    m = tab.shape[0] - 1
    for _ in range(50000):
        obj = tab[-1, :num_cols]
        # Bland: entering = lowest-index column with negative reduced cost
        entering = -1
        for j in range(num_cols):
            if obj[j] < -_TOL:
                entering = j
                break
        if entering < 0:
            return "optimal"
        ratios = np.full(m, np.inf)
        col = tab[:m, entering]
        rhs = tab[:m, -1]
        pos = col > _TOL
        ratios[pos] = rhs[pos] / col[pos]
        if not np.any(np.isfinite(ratios)):
            return "unbounded"
        best = ratios.min()
        # Bland on ties: lowest basis index leaves
        candidates = [r for r in range(m) if pos[r] and ratios[r] <= best + _TOL]
        leaving = min(candidates, key=lambda r: basis[r])
        _pivot(tab, basis, leaving, entering)
    raise RuntimeError("simplex iteration cap exceeded")


def solve_lp(c, a_ub=None, b_ub=None, a_eq=None, b_eq=None) -> LPResult:
    c = np.asarray(c, dtype=float).ravel()
    n = c.size
    rows = []
    rhs = []
    kinds = []  # 'ub' rows get a slack column, 'eq' rows do not
    if a_ub is not None:
        a_ub = np.atleast_2d(np.asarray(a_ub, dtype=float))
        b_ub = np.asarray(b_ub, dtype=float).ravel()
        for r in range(a_ub.shape[0]):
            rows.append(a_ub[r])
            rhs.append(b_ub[r])
            kinds.append("ub")
    if a_eq is not None:
        a_eq = np.atleast_2d(np.asarray(a_eq, dtype=float))
        b_eq = np.asarray(b_eq, dtype=float).ravel()
        for r in range(a_eq.shape[0]):
            rows.append(a_eq[r])
            rhs.append(b_eq[r])
            kinds.append("eq")
    m = len(rows)
    if m == 0:
        raise ValueError("LP needs at least one constraint")
    amat = np.vstack(rows)
    bvec = np.asarray(rhs, dtype=float)

    n_slack = sum(1 for k in kinds if k == "ub")
    total = n + n_slack + m  # structural + slack + one artificial per row
    tab = np.zeros((m + 1, total + 1))
    basis = np.zeros(m, dtype=np.int64)
    slack_at = n
    for r in range(m):
        row = amat[r].copy()
        b = bvec[r]
        s_coeff = 1.0
        if kinds[r] == "ub":
            s_col = slack_at
            slack_at += 1
        else:
            s_col = -1
        if b < 0:
            row = -row
            b = -b
            s_coeff = -1.0
        tab[r, :n] = row
        if s_col >= 0:
            tab[r, s_col] = s_coeff
        art = n + n_slack + r
        tab[r, art] = 1.0
        tab[r, -1] = b
        basis[r] = art

    # phase 1: minimize sum of artificials
    tab[-1, n + n_slack : n + n_slack + m] = 1.0
    for r in range(m):
        tab[-1] -= tab[r]
    status = _run_simplex(tab, basis, total)
    if status != "optimal" or tab[-1, -1] < -1e-7:
        return LPResult(x=np.full(n, np.nan), value=np.nan, status="infeasible")
    # drive leftover artificials out of the basis where possible
    for r in range(m):
        if basis[r] >= n + n_slack:
            for j in range(n + n_slack):
                if abs(tab[r, j]) > _TOL:
                    _pivot(tab, basis, r, j)
                    break

    # phase 2: original objective over structural + slack columns
    tab[:, n + n_slack : n + n_slack + m] = 0.0  # retire artificials
    tab[-1, :] = 0.0
    tab[-1, :n] = c
    for r in range(m):
        if basis[r] < n + n_slack and abs(tab[-1, basis[r]]) > 0:
            tab[-1] -= tab[-1, basis[r]] * tab[r]
    status = _run_simplex(tab, basis, n + n_slack)
    if status != "optimal":
        return LPResult(x=np.full(n, np.nan), value=np.nan, status=status)
    x = np.zeros(total)
    for r in range(m):
        x[basis[r]] = tab[r, -1]
    return LPResult(x=x[:n].copy(), value=float(c @ x[:n]), status="optimal")
