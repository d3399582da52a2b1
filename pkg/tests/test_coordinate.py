import io
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import closure_by_enumeration, e_by_grid
from pwamin.core import PwaFunction, argmax_set, level_set_indices, values
from pwamin.coordinate import (
    TRACE_HEADER,
    Outcome,
    PreconditionError,
    SolverState,
    SweepTrace,
    UpdateRule,
    cycle_map,
    is_fixed_point,
    iterate_cycles,
    proximal_step,
    proximal_update,
    run,
    sweep,
    unique_step,
    unique_update,
    violation_measure,
)
from pwamin.envelope import UnboundedBelow
from pwamin.instances import example1, example2, example4
from pwamin.oracle import contains_origin_rint_conv
from pwamin.signs import consistency_closure, is_consistent, is_consistent_in_coordinate
from strategies import function_and_y, functions

F1 = example1().function
F2 = example2().function
F4 = example4().function


def test_unique_update_example3_averaging():
    rng = random.Random(3)
    for _ in range(20):
        y = tuple(Fraction(rng.randint(-50, 50), rng.randint(1, 9)) for _ in range(3))
        _, y2 = unique_step(F1, y, 0)
        avg = (y[1] + y[2]) / 2
        assert y2 == (y[0], avg, avg)


def test_unique_update_example4_first_step():
    state = unique_update(SolverState.start(F4, (0, 0, 0)), 0)
    assert state.x == (-1, 0, 0)
    assert state.y == (-1, 3, -1, 3)


def test_unique_update_noop_when_balanced():
    state = SolverState.start(F2, (1, 1))
    assert unique_update(state, 0) is state


def test_unique_update_zero_column_and_precondition():
    f = PwaFunction([[1, 0], [-1, 0]], [0, 1])
    state = SolverState.start(f, (0, 5))
    assert unique_update(state, 1) is state
    with pytest.raises(PreconditionError):
        SolverState.start(PwaFunction([[1, 1], [-1, 0]], [0, 0]))
    with pytest.raises(PreconditionError):
        unique_step(PwaFunction([[1, 1], [-1, 0]], [0, 0]), (0, 0), 1)


def test_proximal_example1_fixed():
    state = SolverState.start(F1, (2, 1, 0), UpdateRule.PROXIMAL)
    for j in range(3):
        assert proximal_update(state, j).x == state.x


def test_proximal_clamps():
    # f(t) = max(-t, 0, t - 2) with x_prev in and out of [0, 2]
    f = PwaFunction([[-1], [0], [1]], [0, 0, -2])
    assert proximal_update(SolverState.start(f, (5,), "proximal"), 0).x == (2,)
    assert proximal_update(SolverState.start(f, (1,), "proximal"), 0).x == (1,)
    assert proximal_update(SolverState.start(f, (-3,), "proximal"), 0).x == (0,)
    with pytest.raises(UnboundedBelow):
        proximal_step(PwaFunction([[1], [2]], [0, 0]), (0, 0), 0)


def test_sweep_example4_table():
    state = sweep(SolverState.start(F4, (0, 0, 0)))
    assert state.x == (-1, -2, 2)
    assert state.y == (-1, 3, -1, 1)
    assert state.cycle == 1


def test_sweep_fixed_point_unchanged():
    state = SolverState.start(F1, (1, 1, 1))
    assert sweep(state).y == state.y


def test_run_examples():
    out = run(F4, (0, 0, 0))
    assert out.status is Outcome.DIVERGENCE_SUSPECTED
    ys = [row[2] for row in out.trace.cycles]
    assert all(b - a == -1 for a, b in zip(ys[1:], ys[2:]))

    out = run(F1, (2, 1, 0), UpdateRule.PROXIMAL)
    assert out.status is Outcome.FIXED_POINT
    assert out.cycles == 1 and max(out.state.y) == 1

    for x0 in [(3, -1), (0, 7), (Fraction(1, 3), -2)]:
        out = run(F2, x0)
        assert out.status is Outcome.FIXED_POINT
        assert out.state.x[0] == out.state.x[1]
        # one sweep reaches it, the second confirms
        assert out.cycles <= 2


def test_run_validates_arguments():
    with pytest.raises(ValueError):
        run(F1, max_cycles=0)
    with pytest.raises(ValueError):
        run(F1, tol=-1)
    out = run(F1, (5, 0, -5), max_cycles=3)
    assert out.status is Outcome.BUDGET_EXHAUSTED and out.cycles == 3


def test_is_fixed_point_examples():
    assert is_fixed_point(F1, (2, 2, 2))
    assert is_fixed_point(F1, (Fraction(-7, 3),) * 3)
    rng = random.Random(0)
    for _ in range(200):
        x = [Fraction(rng.randint(-20, 20), rng.randint(1, 5)) for _ in range(3)]
        assert not is_fixed_point(F4, values(F4, x))


def test_violation_measure_examples():
    assert violation_measure(F1, (1, -2, 1)) == 3
    assert e_by_grid(F1.A, (1, -2, 1), Fraction(1, 4), Fraction(6)) == 3
    assert violation_measure(F1, (0, 0, 0)) == 0
    with pytest.raises(PreconditionError):
        violation_measure(PwaFunction([[1]], [0]), (0,))


def test_trace_csv():
    out = run(F4, (0, 0, 0), max_cycles=2, window=50)
    text = out.trace.to_csv()
    lines = text.splitlines()
    assert lines[0] == ",".join(TRACE_HEADER)
    assert lines[1] == "0,0,,,4,4,"
    assert lines[2] == "1,1,1,-1,3,,"
    assert lines[5].startswith("1,3,,,3,")
    buf = io.StringIO()
    out.trace.write_csv(buf)
    assert buf.getvalue() == text
    # determinism: identical inputs give identical traces
    assert run(F4, (0, 0, 0), max_cycles=2, window=50).trace.to_csv() == text


def test_float_mode_trace_and_tol():
    f = F1.with_numeric("float")
    out = run(f, (0.5, 2.0, -1.25), max_cycles=200)
    assert out.status is Outcome.FIXED_POINT
    assert isinstance(out.state.y[0], float)
    assert max(out.state.y) - min(out.state.y) <= 1e-8


# properties -----------------------------------------------------------------

def _active(y):
    return set(level_set_indices(y, max(y)))


def _signs(f, rows):
    return {f.row_signs[i] for i in rows}


@settings(max_examples=200)
@given(function_and_y(), st.data())
def test_unique_step_balances_column_and_is_monotone(fy, data):
    f, y = fy
    j = data.draw(st.integers(0, f.n - 1))
    _, y2 = unique_step(f, y, j)
    assert max(y2) <= max(y)
    neg, pos = f.column_support[j]
    if neg:
        assert max(y2[i] for i in neg) == max(y2[i] for i in pos)


@settings(max_examples=200)
@given(function_and_y(consistent=False), st.data())
def test_proximal_step_monotone(fy, data):
    f, y = fy
    j = data.draw(st.integers(0, f.n - 1))
    try:
        _, y2 = proximal_step(f, y, j)
    except UnboundedBelow:
        neg, pos = f.column_support[j]
        assert not neg or not pos
        return
    assert max(y2) <= max(y)


@settings(max_examples=200)
@given(function_and_y(), st.data())
def test_active_set_evolution_single(fy, data):
    f, y = fy
    j = data.draw(st.integers(0, f.n - 1))
    I = _active(y)
    _, y2 = unique_step(f, y, j)
    I2 = set(level_set_indices(y2, max(y)))
    if is_consistent_in_coordinate(_signs(f, I), j):
        assert I2 == I
    else:
        assert I2 == {i for i in I if f.A[i][j] == 0}


@settings(max_examples=150)
@given(function_and_y(max_n=4, max_m=5))
def test_active_set_after_m_sweeps(fy):
    f, y = fy
    top = max(y)
    closure = closure_by_enumeration(_signs(f, _active(y)))
    ym = iterate_cycles(f, y, f.m)
    assert _signs(f, level_set_indices(ym, top)) == closure
    if closure:
        assert max(ym) == top
        assert is_consistent(_signs(f, argmax_set(ym)))
    else:
        assert max(ym) < top


@settings(max_examples=200)
@given(function_and_y())
def test_e_bounds_and_grid_oracle(fy):
    f, y = fy
    e = violation_measure(f, y)
    assert 0 <= e <= max(y) - min(y)
    # the infimum is attained: feasible at e, infeasible just below
    assert consistency_closure(_signs(f, [i for i, v in enumerate(y) if v + e >= max(y)]))
    if e > 0:
        assert not consistency_closure(_signs(f, [i for i, v in enumerate(y) if max(y) - v < e]))


@settings(max_examples=40, deadline=None)
@given(function_and_y(max_n=3, max_m=4))
def test_e_matches_grid_search(fy):
    f, y = fy
    # every threshold max y - y_i is a multiple of 1/lcm of denominators
    step = Fraction(1, 60)
    assert violation_measure(f, y) == e_by_grid(f.A, y, step, max(y) - min(y))


@settings(max_examples=200)
@given(function_and_y(), st.data())
def test_e_lipschitz(fy, data):
    f, y = fy
    delta = data.draw(st.fractions(0, 2, max_denominator=6))
    y2 = tuple(v + data.draw(st.fractions(-delta, delta, max_denominator=12)) for v in y)
    assert abs(violation_measure(f, y) - violation_measure(f, y2)) <= 2 * delta


@settings(max_examples=100, deadline=None)
@given(function_and_y(max_n=4, max_m=5))
def test_fixed_points_are_consistent_and_proximal_fixed(fy):
    f, y = fy
    out = run(f, None, max_cycles=30, record_e=False)
    if out.status is not Outcome.FIXED_POINT:
        return
    yf = out.state.y
    assert is_fixed_point(f, yf)
    assert cycle_map(f, yf) == yf
    assert is_consistent(_signs(f, argmax_set(yf)))
    for j in range(f.n):
        _, y2 = proximal_step(f, yf, j)
        assert y2 == yf


@settings(max_examples=100, deadline=None)
@given(functions(max_n=4, max_m=6, consistent=True))
def test_fixed_points_have_consistent_argmax(f):
    for x in [(0,) * f.n, (1,) * f.n]:
        y = values(f, x)
        if is_fixed_point(f, y):
            assert is_consistent(_signs(f, argmax_set(y)))


@settings(max_examples=60, deadline=None)
@given(functions(max_n=4, max_m=6, consistent=True))
def test_trace_max_nonincreasing_and_bounded(f):
    out = run(f, None, max_cycles=25)
    ys = out.trace.max_y
    assert all(b <= a for a, b in zip(ys, ys[1:]))
    its = [row[4] for row in out.trace.iterations]
    assert all(b <= a for a, b in zip(its, its[1:]))
    ok, cert = contains_origin_rint_conv(f.A)
    if ok:
        assert out.status is not Outcome.DIVERGENCE_SUSPECTED
        # lam > 0 with lam^T A = 0 pins lam^T y = lam^T b; with y <= max y0
        # this bounds every entry from below
        lam = cert.lam
        top = max(values(f, (0,) * f.n))
        level = sum(l * bi for l, bi in zip(lam, f.b))
        y = values(f, (0,) * f.n)
        for _ in range(25):
            y = cycle_map(f, y)
            assert sum(l * v for l, v in zip(lam, y)) == level
            for i, v in enumerate(y):
                assert top >= v >= (level - (1 - lam[i]) * top) / lam[i]


def test_sweep_trace_rows_one_based():
    trace = SweepTrace()
    sweep(SolverState.start(F4, (0, 0, 0)), trace)
    assert [row[2] for row in trace.iterations] == [0, 1, 2]
