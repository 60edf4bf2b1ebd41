"""Dense two-phase tableau simplex.

Dantzig's rule picks the entering column until 200 degenerate pivots have
been made, after which Bland's smallest-index rule takes over to rule out
cycling. Ratio-test ties always go to the smallest basic index.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import NonConvergence

LP_TOL = 1e-8
PIVOT_TOL = 1e-10
BLAND_AFTER = 200

LE, GE, EQ = "<=", ">=", "=="


@dataclass(frozen=True)
class LinearProgram:
    """Optimize objective . x subject to rows (coeffs, relation, rhs) and per-variable bounds.

    ``bounds`` holds one (lo, hi) pair per variable, either side possibly
    infinite; ``None`` means every variable is free.
    """

    objective: tuple[float, ...]
    rows: tuple[tuple[tuple[float, ...], str, float], ...] = ()
    sense: str = "max"
    bounds: Optional[tuple[tuple[float, float], ...]] = None

    def __post_init__(self):
        n = len(self.objective)
        if self.sense not in ("max", "min"):
            raise ValueError(f"sense must be 'max' or 'min', got {self.sense!r}")
        for coeffs, rel, _ in self.rows:
            if len(coeffs) != n:
                raise ValueError(f"row has {len(coeffs)} coefficients, objective has {n}")
            if rel not in (LE, GE, EQ):
                raise ValueError(f"unknown relation {rel!r}")
        if self.bounds is not None:
            if len(self.bounds) != n:
                raise ValueError("need one (lo, hi) bound pair per variable")
            for lo, hi in self.bounds:
                if lo > hi:
                    raise ValueError(f"empty variable box [{lo}, {hi}]")

    @property
    def n_vars(self) -> int:
        return len(self.objective)

    def var_bounds(self) -> list[tuple[float, float]]:
        if self.bounds is None:
            return [(-math.inf, math.inf)] * self.n_vars
        return [(float(lo), float(hi)) for lo, hi in self.bounds]


@dataclass
class LPResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    optimum: float = math.nan
    solution: np.ndarray = field(default_factory=lambda: np.zeros(0))
    iterations: int = 0

    @property
    def ok(self) -> bool:
        return self.status == "optimal"


class _Tableau:
    """Rows 0..m-1 hold constraints, the last row the reduced costs; last column is the rhs."""

    def __init__(self, tab: np.ndarray, basis: list[int]):
        self.tab = tab
        self.basis = basis
        self.iterations = 0
        self.degenerate = 0

    def pivot(self, r: int, e: int):
        t = self.tab
        t[r] /= t[r, e]
        col = t[:, e].copy()
        col[r] = 0.0
        t -= np.outer(col, t[r])
        t[:, e] = 0.0
        t[r, e] = 1.0
        self.basis[r] = e
        self.iterations += 1

    def run(self, allowed: np.ndarray, cost_tol: float, max_iter: int) -> str:
        t = self.tab
        while True:
            if self.iterations >= max_iter:
                raise NonConvergence(f"simplex exceeded {max_iter} pivots")
            rc = np.where(allowed, t[-1, :-1], 0.0)
            cand = np.flatnonzero(rc < -cost_tol)
            if cand.size == 0:
                return "optimal"
            e = int(cand[0]) if self.degenerate >= BLAND_AFTER else int(cand[np.argmin(rc[cand])])
            col = t[:-1, e]
            pos = np.flatnonzero(col > PIVOT_TOL)
            if pos.size == 0:
                return "unbounded"
            ratios = t[pos, -1] / col[pos]
            best = ratios.min()
            ties = pos[ratios <= best + 1e-12 * (1.0 + abs(best))]
            r = int(min(ties, key=lambda i: self.basis[i]))
            if best <= 1e-12:
                self.degenerate += 1
            self.pivot(r, e)


def _standard_form(lp: LinearProgram):
    """Rewrite x = T y + offset with y >= 0; returns (A, rel, b, c, T, offset) for min c.y."""
    n = lp.n_vars
    cols: list[np.ndarray] = []
    offset = np.zeros(n)
    extra_rows: list[tuple[int, float]] = []  # (std column, upper bound on it)
    for j, (lo, hi) in enumerate(lp.var_bounds()):
        unit = np.zeros(n)
        unit[j] = 1.0
        if lo < 0.0 < hi and (math.isfinite(lo) or math.isfinite(hi)):
            # split around zero: shifting by a large finite bound would swamp the rhs
            cols.append(unit)
            if math.isfinite(hi):
                extra_rows.append((len(cols) - 1, hi))
            cols.append(-unit)
            if math.isfinite(lo):
                extra_rows.append((len(cols) - 1, -lo))
        elif math.isfinite(lo):
            offset[j] = lo
            cols.append(unit)
            if math.isfinite(hi):
                extra_rows.append((len(cols) - 1, hi - lo))
        elif math.isfinite(hi):
            offset[j] = hi
            cols.append(-unit)
        else:
            cols.append(unit)
            cols.append(-unit)
    T = np.array(cols).T if cols else np.zeros((n, 0))
    ns = T.shape[1]
    A_rows, rels, rhs = [], [], []
    for coeffs, rel, b in lp.rows:
        a = np.asarray(coeffs, dtype=float)
        A_rows.append(a @ T)
        rels.append(rel)
        rhs.append(float(b) - float(a @ offset))
    for k, ub in extra_rows:
        a = np.zeros(ns)
        a[k] = 1.0
        A_rows.append(a)
        rels.append(LE)
        rhs.append(ub)
    A = np.array(A_rows) if A_rows else np.zeros((0, ns))
    sign = 1.0 if lp.sense == "min" else -1.0
    c = sign * (np.asarray(lp.objective, dtype=float) @ T)
    return A, rels, np.array(rhs), c, T, offset


def lp_solve(lp: LinearProgram, max_iter: Optional[int] = None) -> LPResult:
    """Solve ``lp``; infeasibility and unboundedness come back as statuses, not exceptions."""
    A, rels, b, c, T, offset = _standard_form(lp)
    ns = A.shape[1]

    keep = []
    for i in range(A.shape[0]):
        scale = np.max(np.abs(A[i])) if ns else 0.0
        if scale == 0.0:
            ok = {LE: b[i] >= -LP_TOL, GE: b[i] <= LP_TOL, EQ: abs(b[i]) <= LP_TOL}[rels[i]]
            if not ok:
                return LPResult("infeasible")
            continue
        A[i] /= scale
        b[i] /= scale
        keep.append(i)
    A, b = A[keep], b[keep]
    rels = [rels[i] for i in keep]
    flip = b < 0
    A[flip] *= -1.0
    b[flip] *= -1.0
    rels = [{LE: GE, GE: LE, EQ: EQ}[r] if f else r for r, f in zip(rels, flip)]

    m = len(b)
    n_slack = sum(r != EQ for r in rels)
    n_art = sum(r != LE for r in rels)
    ncols = ns + n_slack + n_art
    tab = np.zeros((m + 1, ncols + 1))
    tab[:m, :ns] = A
    tab[:m, -1] = b
    basis = [0] * m
    s_idx, a_idx = ns, ns + n_slack
    art_cols = []
    for i, r in enumerate(rels):
        if r == LE:
            tab[i, s_idx] = 1.0
            basis[i] = s_idx
            s_idx += 1
        else:
            if r == GE:
                tab[i, s_idx] = -1.0
                s_idx += 1
            tab[i, a_idx] = 1.0
            basis[i] = a_idx
            art_cols.append(a_idx)
            a_idx += 1
    if max_iter is None:
        max_iter = 50 * (m + ncols) + 1000
    tb = _Tableau(tab, basis)
    is_art = np.zeros(ncols, dtype=bool)
    is_art[art_cols] = True

    if art_cols:
        # phase 1: minimize the sum of artificials
        tab[-1, :] = 0.0
        for i in range(m):
            if is_art[basis[i]]:
                tab[-1, :] -= tab[i, :]
        tab[-1, art_cols] = 0.0
        tb.run(np.ones(ncols, dtype=bool), 1e-11, max_iter)
        if -tab[-1, -1] > LP_TOL * max(1.0, float(np.max(b, initial=0.0))):
            return LPResult("infeasible", iterations=tb.iterations)
        # drive remaining zero-level artificials out of the basis, dropping redundant rows
        drop = []
        for i in range(m):
            if is_art[tb.basis[i]]:
                cand = np.flatnonzero((np.abs(tab[i, :ncols]) > 1e-9) & ~is_art)
                if cand.size:
                    tb.pivot(i, int(cand[0]))
                else:
                    drop.append(i)
        if drop:
            keep_rows = [i for i in range(m + 1) if i not in drop]
            tb.tab = tab = tab[keep_rows]
            tb.basis = [tb.basis[i] for i in range(m) if i not in drop]
            m = len(tb.basis)

    cost = np.zeros(ncols)
    cost[:ns] = c
    tab[-1, :-1] = cost
    tab[-1, -1] = 0.0
    for i in range(m):
        tab[-1, :] -= cost[tb.basis[i]] * tab[i, :]
    cost_tol = 1e-12 * max(1.0, float(np.max(np.abs(c), initial=0.0)))
    status = tb.run(~is_art, cost_tol, max_iter)
    if status == "unbounded":
        return LPResult("unbounded", iterations=tb.iterations)

    y = np.zeros(ncols)
    for i, j in enumerate(tb.basis):
        y[j] = tab[i, -1]
    x = T @ y[:ns] + offset
    optimum = float(np.dot(lp.objective, x))
    return LPResult("optimal", optimum, x, tb.iterations)
