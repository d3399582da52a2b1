"""Exact two-phase simplex over Fractions with Bland's anti-cycling rule.

Solves ``min c^T x  s.t.  E x = d, x >= 0`` and returns a certificate with
every verdict: optimal primal/dual pair, an unbounded ray, or a Farkas
vector proving infeasibility. Meant for desk-scale problems; the basis
inverse is kept densely.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class LpResult:
    status: str
    x: Optional[tuple] = None
    value: Optional[Fraction] = None
    duals: Optional[tuple] = None
    ray: Optional[tuple] = None
    farkas: Optional[tuple] = None

    def verify(self, c, E, d) -> bool:
        """Re-check the certificate for this verdict with exact arithmetic."""
        c, E, d = _as_fractions(c, E, d)
        cols = len(c)
        if self.status == OPTIMAL:
            x, y = self.x, self.duals
            primal = all(v >= 0 for v in x) and all(
                sum(row[j] * x[j] for j in range(cols)) == d[k] for k, row in enumerate(E)
            )
            dual = all(
                c[j] - sum(E[k][j] * y[k] for k in range(len(E))) >= 0 for j in range(cols)
            )
            gap = sum(ci * xi for ci, xi in zip(c, x)) == sum(dk * yk for dk, yk in zip(d, y))
            return primal and dual and gap and self.value == sum(ci * xi for ci, xi in zip(c, x))
        if self.status == UNBOUNDED:
            r = self.ray
            return (
                all(v >= 0 for v in r)
                and all(sum(row[j] * r[j] for j in range(cols)) == 0 for row in E)
                and sum(ci * ri for ci, ri in zip(c, r)) < 0
            )
        if self.status == INFEASIBLE:
            y = self.farkas
            return all(
                sum(E[k][j] * y[k] for k in range(len(E))) <= 0 for j in range(cols)
            ) and sum(dk * yk for dk, yk in zip(d, y)) > 0
        return False


def _as_fractions(c, E, d):
    c = [Fraction(v) for v in c]
    E = [[Fraction(v) for v in row] for row in E]
    d = [Fraction(v) for v in d]
    return c, E, d


class _Tableau:
    """Revised simplex state: basis, explicit basis inverse, basic values."""

    def __init__(self, cols, d):
        self.cols = cols  # list of column vectors, real then artificial
        r = len(d)
        self.basis = [len(cols) - r + i for i in range(r)]
        self.binv = [[_ONE if i == k else _ZERO for k in range(r)] for i in range(r)]
        self.xb = list(d)

    def column(self, j):
        col = self.cols[j]
        return [sum(row[k] * col[k] for k in range(len(col)) if col[k]) for row in self.binv]

    def multipliers(self, cost):
        r = len(self.basis)
        cb = [cost[b] for b in self.basis]
        return [sum(cb[i] * self.binv[i][k] for i in range(r)) for k in range(r)]

    def reduced(self, cost, y, j):
        col = self.cols[j]
        return cost[j] - sum(y[k] * col[k] for k in range(len(col)) if col[k])

    def pivot(self, row, j, u):
        p = u[row]
        r = len(self.basis)
        prow = [v / p for v in self.binv[row]]
        self.binv[row] = prow
        xr = self.xb[row] / p
        self.xb[row] = xr
        for i in range(r):
            if i != row and u[i]:
                f = u[i]
                bi = self.binv[i]
                self.binv[i] = [bi[k] - f * prow[k] for k in range(r)]
                self.xb[i] -= f * xr
        self.basis[row] = j

    def run(self, cost, allowed):
        """Bland's rule iterations; returns None at optimum or the entering
        column index and its direction when unbounded."""
        while True:
            y = self.multipliers(cost)
            basic = set(self.basis)
            enter = None
            for j in allowed:
                if j not in basic and self.reduced(cost, y, j) < 0:
                    enter = j
                    break
            if enter is None:
                return None
            u = self.column(enter)
            best = None
            for i, ui in enumerate(u):
                if ui > 0:
                    ratio = self.xb[i] / ui
                    key = (ratio, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return enter, u
            self.pivot(best[1], enter, u)


def solve_standard(c: Sequence, E: Sequence[Sequence], d: Sequence) -> LpResult:
    """min c^T x subject to E x = d, x >= 0."""
    c, E, d = _as_fractions(c, E, d)
    r, n = len(E), len(c)
    if any(len(row) != n for row in E) or len(d) != r:
        raise ValueError("inconsistent LP dimensions")
    if r == 0:
        if any(v < 0 for v in c):
            j = next(j for j, v in enumerate(c) if v < 0)
            return LpResult(UNBOUNDED, ray=tuple(_ONE if k == j else _ZERO for k in range(n)))
        return LpResult(OPTIMAL, x=tuple([_ZERO] * n), value=_ZERO, duals=())

    flip = [-1 if v < 0 else 1 for v in d]
    rows = [[flip[k] * v for v in E[k]] for k in range(r)]
    dd = [flip[k] * d[k] for k in range(r)]
    cols = [[rows[k][j] for k in range(r)] for j in range(n)]
    cols += [[_ONE if k == i else _ZERO for k in range(r)] for i in range(r)]
    tab = _Tableau(cols, dd)
    real = list(range(n))

    phase1 = [_ZERO] * n + [_ONE] * r
    tab.run(phase1, range(n + r))
    infeas = sum(tab.xb[i] for i, b in enumerate(tab.basis) if b >= n)
    if infeas > 0:
        y = tab.multipliers(phase1)
        # phase-one multipliers give E^T y <= 0 with d^T y > 0 after undoing flips
        return LpResult(INFEASIBLE, farkas=tuple(flip[k] * y[k] for k in range(r)))

    for i in range(r):
        if tab.basis[i] >= n:
            for j in real:
                if j in tab.basis:
                    continue
                u = tab.column(j)
                if u[i] != 0:
                    tab.pivot(i, j, u)
                    break
            # otherwise the row is redundant and the artificial stays at zero

    cost = list(c) + [_ZERO] * r
    unbounded = tab.run(cost, real)
    if unbounded is not None:
        enter, u = unbounded
        ray = [_ZERO] * n
        ray[enter] = _ONE
        for i, b in enumerate(tab.basis):
            if b < n:
                ray[b] = -u[i]
        return LpResult(UNBOUNDED, ray=tuple(ray))

    x = [_ZERO] * n
    for i, b in enumerate(tab.basis):
        if b < n:
            x[b] = tab.xb[i]
    y = tab.multipliers(cost)
    duals = tuple(flip[k] * y[k] for k in range(r))
    value = sum(ci * xi for ci, xi in zip(c, x))
    return LpResult(OPTIMAL, x=tuple(x), value=value, duals=duals)
