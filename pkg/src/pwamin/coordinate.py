"""Cyclic coordinate minimization of f(x) = max(Ax + b).

The algorithm works on the values y = Ax + b. Updating coordinate j by a
shift d moves every y_i to y_i + a_ij * d, so a single step only needs column
j of A. Two rules pick d:

* unique rule: minimize the max over rows that depend on x_j only; the
  minimizer is the crossing of the negative-slope and positive-slope
  envelopes and is unique once the row-sign set is consistent.
* proximal rule: among all minimizers of the full univariate max, take the
  one nearest to the current value (d closest to 0).

x is carried alongside y for reporting.
"""

from __future__ import annotations

import csv
import enum
import io
from dataclasses import dataclass, field, replace
from typing import Optional

from . import core
from .core import EXACT, PwaFunction, format_scalar
from .envelope import UnboundedBelow, argmin_interval, clamp, crossing
from .signs import closure_of_rows, is_consistent

DEFAULT_FLOAT_TOL = 1e-9

TRACE_HEADER = ("cycle", "iteration", "j", "x_j_star", "max_y", "e_y", "step_inf_norm")


class PreconditionError(ValueError):
    pass


class UpdateRule(str, enum.Enum):
    UNIQUE = "unique"
    PROXIMAL = "proximal"


class Outcome(str, enum.Enum):
    FIXED_POINT = "FixedPoint"
    BUDGET_EXHAUSTED = "CycleBudgetExhausted"
    DIVERGENCE_SUSPECTED = "DivergenceSuspected"


def rows_consistent(f: PwaFunction) -> bool:
    return is_consistent(set(f.row_signs))


def require_unique_precondition(f: PwaFunction) -> None:
    if not rows_consistent(f):
        raise PreconditionError(
            "unique rule needs a consistent row-sign set: every column must be "
            "all zero or contain both a negative and a positive entry"
        )


def _shifted(f: PwaFunction, y, j, d):
    if d == 0:
        return tuple(y)
    return tuple(yi + a * d if a != 0 else yi for yi, a in zip(y, f.columns[j]))


def unique_step(f: PwaFunction, y, j: int):
    """Return ``(d, p_j(y))`` where d is the unique-rule shift of x_j."""
    neg, pos = f.column_support[j]
    if not neg and not pos:
        return 0 * y[0], tuple(y)
    if not neg or not pos:
        raise PreconditionError(f"column {j} has nonzero entries of one sign only")
    col = f.columns[j]
    d = crossing([(col[i], y[i]) for i in neg], [(col[i], y[i]) for i in pos])
    return d, _shifted(f, y, j, d)


def proximal_step(f: PwaFunction, y, j: int):
    """Return ``(d, y')`` for the proximal rule; raises UnboundedBelow."""
    col = f.columns[j]
    lo, hi = argmin_interval(list(zip(col, y)))
    d = clamp(0 * y[0], lo, hi)
    return d, _shifted(f, y, j, d)


def _step_fn(rule):
    return unique_step if UpdateRule(rule) is UpdateRule.UNIQUE else proximal_step


def cycle_map(f: PwaFunction, y, rule=UpdateRule.UNIQUE):
    """p(y) = p_n(...p_1(y)) for the given rule."""
    step = _step_fn(rule)
    for j in range(f.n):
        y = step(f, y, j)[1]
    return y


def iterate_cycles(f: PwaFunction, y, k: int, rule=UpdateRule.UNIQUE):
    for _ in range(k):
        y = cycle_map(f, y, rule)
    return y


def is_fixed_point(f: PwaFunction, y, tol=0) -> bool:
    """True iff max over negative rows equals max over positive rows, per column."""
    for neg, pos in f.column_support:
        if not neg and not pos:
            continue
        if not neg or not pos:
            return False
        if abs(max(y[i] for i in neg) - max(y[i] for i in pos)) > tol:
            return False
    return True


def violation_measure(f: PwaFunction, y):
    """e(y): least eps >= 0 with cons{sgn a_i | i in eps-argmax y} nonempty.

    The infimum sits at one of the gaps max y - y_i. Rows are grouped by gap
    directly rather than re-tested against ``y_i + eps >= max y``, which
    keeps float mode free of rounding at the thresholds.
    """
    if not rows_consistent(f):
        raise PreconditionError("e(y) is only finite-guaranteed for a consistent row-sign set")
    top = max(y)
    gaps = sorted((top - v, i) for i, v in enumerate(y))
    signs = f.row_signs
    active = []
    k = 0
    while k < len(gaps):
        d = gaps[k][0]
        while k < len(gaps) and gaps[k][0] == d:
            active.append(gaps[k][1])
            k += 1
        if closure_of_rows(signs, active):
            return d
    raise AssertionError("full row set has an empty closure despite the precondition")


@dataclass(frozen=True)
class SolverState:
    f: PwaFunction
    x: tuple
    y: tuple
    cycle: int = 0
    rule: UpdateRule = UpdateRule.UNIQUE

    @classmethod
    def start(cls, f: PwaFunction, x0=None, rule=UpdateRule.UNIQUE) -> "SolverState":
        rule = UpdateRule(rule)
        if rule is UpdateRule.UNIQUE:
            require_unique_precondition(f)
        x = f.point(x0 if x0 is not None else [0] * f.n)
        return cls(f, x, core.values(f, x), 0, rule)

    @property
    def max_y(self):
        return max(self.y)


def _update(state: SolverState, j: int, step) -> SolverState:
    d, y = step(state.f, state.y, j)
    if d == 0:
        return state
    x = list(state.x)
    x[j] = x[j] + d
    return replace(state, x=tuple(x), y=y)


def unique_update(state: SolverState, j: int) -> SolverState:
    return _update(state, j, unique_step)


def proximal_update(state: SolverState, j: int) -> SolverState:
    return _update(state, j, proximal_step)


@dataclass
class SweepTrace:
    """Per-iteration rows ``(cycle, iteration, j, x_j_star, max_y)`` and
    per-cycle rows ``(cycle, iteration, max_y, e_y, step_inf_norm)``.

    Cycle 0 holds the initial point with an empty step.
    """

    iterations: list = field(default_factory=list)
    cycles: list = field(default_factory=list)

    @property
    def max_y(self) -> list:
        return [row[2] for row in self.cycles]

    def rows(self):
        """All rows in CSV order, each cycle's iterations before its summary."""
        by_cycle = {}
        for it in self.iterations:
            by_cycle.setdefault(it[0], []).append(it)
        for cyc, iteration, max_y, e_y, step in self.cycles:
            for c, i, j, xj, my in by_cycle.get(cyc, ()):
                yield (c, i, j + 1, xj, my, None, None)
            yield (cyc, iteration, None, None, max_y, e_y, step)

    def write_csv(self, stream) -> None:
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(TRACE_HEADER)
        for row in self.rows():
            writer.writerow(
                "" if v is None else (str(v) if isinstance(v, int) else format_scalar(v))
                for v in row
            )

    def to_csv(self) -> str:
        buf = io.StringIO()
        self.write_csv(buf)
        return buf.getvalue()


def sweep(state: SolverState, trace: Optional[SweepTrace] = None) -> SolverState:
    """One cyclic pass j = 0..n-1 with the state's rule."""
    step = _step_fn(state.rule)
    cycle = state.cycle + 1
    base = state.cycle * state.f.n
    for j in range(state.f.n):
        before = state.max_y
        state = _update(state, j, step)
        if state.max_y > before:
            # coordinate minimization never increases the objective in exact arithmetic
            if state.f.numeric == EXACT:
                raise AssertionError("max y increased during an update")
        if trace is not None:
            trace.iterations.append((cycle, base + j + 1, j, state.x[j], state.max_y))
    return replace(state, cycle=cycle)


@dataclass
class RunOutcome:
    status: Outcome
    state: SolverState
    trace: SweepTrace
    max_abs_y: object = None
    message: str = ""

    @property
    def cycles(self) -> int:
        return self.state.cycle


def _safe_e(f, y):
    try:
        return violation_measure(f, y)
    except PreconditionError:
        return None


def _translating(diffs, tol) -> bool:
    first = diffs[0]
    for d in diffs[1:]:
        scale = 1 + max(abs(v) for v in d)
        if core.inf_norm_diff(d, first) > tol * scale:
            return False
    return True


def run(
    f: PwaFunction,
    x0=None,
    rule=UpdateRule.UNIQUE,
    max_cycles: int = 1000,
    tol=None,
    record_e: bool = True,
    window: Optional[int] = None,
    stop_when_e_below=None,
) -> RunOutcome:
    """Sweep until a fixed point, the cycle budget, or a suspected divergence.

    ``tol`` defaults to 0 in exact mode and 1e-9 in float mode and bounds the
    per-cycle step ``||p(y) - y||_inf``. Divergence is suspected when, over
    the last ``window`` cycles (default ``max(10, n)``), every step exceeds
    ``tol``, max y dropped by more than ``window * tol`` and the per-cycle
    change of y stayed the same vector. ``stop_when_e_below`` ends the run
    early (as budget-exhausted) once e(y) drops below it.
    """
    if max_cycles < 1:
        raise ValueError("max_cycles must be >= 1")
    if tol is None:
        tol = 0 if f.numeric == EXACT else DEFAULT_FLOAT_TOL
    if tol < 0:
        raise ValueError("tol must be >= 0")
    tol = core.to_scalar(tol, f.numeric)
    W = window if window is not None else max(10, f.n)

    state = SolverState.start(f, x0, rule)
    trace = SweepTrace()
    e0 = _safe_e(f, state.y) if record_e else None
    trace.cycles.append((0, 0, state.max_y, e0, None))
    max_abs = max(abs(v) for v in state.y)
    diffs = []
    maxes = [state.max_y]

    def done(status, message=""):
        return RunOutcome(status, state, trace, max_abs, message)

    while state.cycle < max_cycles:
        prev = state
        try:
            state = sweep(state, trace)
        except UnboundedBelow as exc:
            state = prev
            return done(Outcome.DIVERGENCE_SUSPECTED, f"univariate minimization unbounded: {exc}")
        diff = tuple(a - b for a, b in zip(state.y, prev.y))
        step = max(abs(v) for v in diff)
        e = _safe_e(f, state.y) if record_e else None
        trace.cycles.append((state.cycle, state.cycle * f.n, state.max_y, e, step))
        max_abs = max(max_abs, max(abs(v) for v in state.y))
        maxes.append(state.max_y)

        if step <= tol:
            return done(Outcome.FIXED_POINT)
        if stop_when_e_below is not None and e is not None and e < stop_when_e_below:
            return done(Outcome.BUDGET_EXHAUSTED, "e(y) below requested threshold")

        diffs.append(diff)
        if len(diffs) > W:
            diffs.pop(0)
        if (
            len(diffs) == W
            and maxes[-1 - W] - maxes[-1] > W * tol
            and _translating(diffs, tol)
        ):
            return done(Outcome.DIVERGENCE_SUSPECTED, "y translates by a constant vector every cycle")
    return done(Outcome.BUDGET_EXHAUSTED)
