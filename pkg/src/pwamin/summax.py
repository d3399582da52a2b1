"""Sums of maxima of affine functions and their reduction to a single maximum.

For alpha in R^G, min over u with sum(u) = 0 of max_i (alpha_i + u_i) equals
mean(alpha), attained at u_i = mean(alpha) - alpha_i. Applying this with
alpha_i = max_j (a_ij^T x + b_ij) turns

    s(x) = sum_i max_j (a_ij^T x + b_ij)

into g(x, u) = max_{i,j} (a_ij^T x + b_ij + u_i) with sum(u) = 0, whose
minimum over u is s(x) / G. The constraint is removed by substituting
u_G = -(u_1 + ... + u_{G-1}).
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Sequence

from . import core
from .coordinate import (
    DEFAULT_FLOAT_TOL,
    Outcome,
    RunOutcome,
    SolverState,
    SweepTrace,
    UpdateRule,
    require_unique_precondition,
    unique_update,
)
from .core import EXACT, PwaFunction, to_scalar, to_vector


@dataclass(frozen=True)
class SumMaxFunction:
    """``groups[i]`` is a tuple of ``(a_ij, b_ij)`` pairs."""

    groups: tuple
    numeric: str = EXACT

    def __init__(self, groups: Sequence[Sequence], numeric: str = EXACT):
        gs = []
        n = None
        for group in groups:
            terms = tuple((to_vector(a, numeric), to_scalar(b, numeric)) for a, b in group)
            if not terms:
                raise core.DimensionError("every group needs at least one affine term")
            for a, _ in terms:
                if n is None:
                    n = len(a)
                if len(a) != n or n < 1:
                    raise core.DimensionError("affine terms of unequal or zero dimension")
            gs.append(terms)
        if not gs:
            raise core.DimensionError("need at least one group")
        object.__setattr__(self, "groups", tuple(gs))
        object.__setattr__(self, "numeric", numeric)

    @property
    def n(self) -> int:
        return len(self.groups[0][0][0])

    def group_maxima(self, x) -> tuple:
        x = to_vector(x, self.numeric)
        if len(x) != self.n:
            raise core.DimensionError(f"point has length {len(x)}, function has n={self.n}")
        return tuple(
            max(sum((ai * xi for ai, xi in zip(a, x)), b) for a, b in group) for group in self.groups
        )

    def __call__(self, x):
        return sum(self.group_maxima(x))

    def with_numeric(self, numeric: str) -> "SumMaxFunction":
        if numeric == self.numeric:
            return self
        return SumMaxFunction(self.groups, numeric)


def scaled_sum_as_minmax(alpha: Sequence):
    """Return ``(mean(alpha), u*)`` with sum(u*) = 0 and alpha_i + u*_i = mean."""
    if len(alpha) < 1:
        raise ValueError("need at least one value")
    value = sum(alpha[1:], alpha[0]) / len(alpha)
    return value, tuple(value - a for a in alpha)


@dataclass(frozen=True)
class LiftedFunction:
    """g over (x, u_1..u_{G-1}) with u_G eliminated; rows ordered group by group."""

    g: PwaFunction
    n_x: int
    n_groups: int
    row_group: tuple

    def full_u(self, z) -> tuple:
        """All G auxiliary values from a lifted point (last one reconstructed)."""
        u = tuple(z[self.n_x :])
        zero = 0 * z[0]
        return u + (zero - sum(u, zero),)

    def pack(self, x, u) -> tuple:
        """Lifted point from x and a full u (its last entry is implied and dropped)."""
        return tuple(x) + tuple(u[: self.n_groups - 1])

    def min_over_u(self, s: SumMaxFunction, x):
        """Closed-form min over feasible u of g(x, u), i.e. mean of group maxima."""
        return scaled_sum_as_minmax(s.group_maxima(x))[0]


def lift(s: SumMaxFunction) -> LiftedFunction:
    G = len(s.groups)
    if G < 2:
        raise ValueError("lifting needs at least two groups; one group is already a max of affine functions")
    rows, b, owner = [], [], []
    for i, group in enumerate(s.groups):
        if i < G - 1:
            ucoef = [1 if k == i else 0 for k in range(G - 1)]
        else:
            ucoef = [-1] * (G - 1)
        for a, bij in group:
            rows.append(list(a) + ucoef)
            b.append(bij)
            owner.append(i)
    g = PwaFunction(rows, b, s.numeric)
    return LiftedFunction(g, s.n, G, tuple(owner))


def interlaced_minimize(
    s: SumMaxFunction,
    x0=None,
    max_cycles: int = 1000,
    tol=None,
) -> RunOutcome:
    """Alternate the closed-form u update with one unique-rule sweep over x.

    The trace's max-y column records the original objective sum_i max_j(.).
    Stops at a fixed point when a full round (u update plus x sweep) moves
    the lifted values by at most ``tol``.
    """
    lifted = lift(s)
    g = lifted.g
    require_unique_precondition(g)
    if tol is None:
        tol = 0 if s.numeric == EXACT else DEFAULT_FLOAT_TOL
    tol = to_scalar(tol, s.numeric)
    x = to_vector(x0 if x0 is not None else [0] * s.n, s.numeric)
    if len(x) != s.n:
        raise core.DimensionError("x0 has the wrong length")

    state = SolverState.start(g, lifted.pack(x, [0 * x[0]] * lifted.n_groups), UpdateRule.UNIQUE)
    trace = SweepTrace()
    trace.cycles.append((0, 0, s(x), None, None))
    max_abs = max(abs(v) for v in state.y)
    history = []

    def done(status, message=""):
        return RunOutcome(status, state, trace, max_abs, message)

    for cycle in range(1, max_cycles + 1):
        before = state.y
        x = state.x[: s.n]
        _, u = scaled_sum_as_minmax(s.group_maxima(x))
        z = lifted.pack(x, u)
        state = replace(state, x=z, y=core.values(g, z))
        for j in range(s.n):
            state = unique_update(state, j)
            trace.iterations.append(
                (cycle, (cycle - 1) * s.n + j + 1, j, state.x[j], s(state.x[: s.n]))
            )
        state = replace(state, cycle=cycle)
        objective = s(state.x[: s.n])
        step = core.inf_norm_diff(state.y, before)
        trace.cycles.append((cycle, cycle * s.n, objective, None, step))
        max_abs = max(max_abs, max(abs(v) for v in state.y))
        if step <= tol:
            return done(Outcome.FIXED_POINT)
        history.append(objective)
        W = max(10, s.n)
        if len(history) > W and history[-1 - W] - history[-1] > W * tol:
            diffs = [history[k] - history[k - 1] for k in range(len(history) - W, len(history))]
            if all(abs(d - diffs[0]) <= tol * (1 + abs(diffs[0])) for d in diffs) and diffs[0] < 0:
                return done(Outcome.DIVERGENCE_SUSPECTED, "objective decreases by a constant every round")
    return done(Outcome.BUDGET_EXHAUSTED)


def final_x(outcome: RunOutcome, s: SumMaxFunction) -> tuple:
    return outcome.state.x[: s.n]
