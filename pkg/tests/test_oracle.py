from fractions import Fraction

import pytest
from hypothesis import given, settings

from oracles import brute_minimum, pwa_groups
from pwamin.core import PwaFunction, values
from pwamin.instances import example1, example2, example4
from pwamin.oracle import (
    EmptyFeasibleSet,
    Flavor,
    contains_origin_conv,
    contains_origin_rint_conv,
    is_bounded_below,
    is_global_minimizer,
    solve_min_lp,
    y_set_is_bounded,
)
from pwamin.signs import sign_condition_holds
from strategies import functions, matrices

F1 = example1().function
F4 = example4().function


def test_conv_examples():
    ok, cert = contains_origin_conv(F1.A)
    assert ok and cert.flavor is Flavor.FEASIBLE and cert.check(F1.A)
    assert contains_origin_conv(F4.A) == (False, None)
    assert contains_origin_conv([(1, -2), (-2, 1)]) == (False, None)
    assert contains_origin_conv([(0, 0)])[0]


def test_rint_examples():
    ok, cert = contains_origin_rint_conv(F1.A)
    assert ok and cert.lam == (Fraction(1, 3),) * 3
    # 0 is a vertex of conv, not in its relative interior
    assert contains_origin_rint_conv([(0, 0), (1, 0)]) == (False, None)
    assert contains_origin_rint_conv([(1, 0), (-1, 0)])[0]


def test_bounded_and_global_min():
    assert is_bounded_below(F1)
    assert not is_bounded_below(F4)
    assert not is_bounded_below(example2().function)
    assert is_global_minimizer(F1, (1, 1, 1))
    assert not is_global_minimizer(F1, (2, 1, 0))


def test_min_lp_examples():
    res = solve_min_lp(F1)
    assert res.status == "optimal" and res.value == 0
    assert res.lam == (Fraction(1, 3),) * 3
    assert max(values(F1, res.x)) == 0
    assert solve_min_lp(F4).status == "unbounded"
    box = PwaFunction([[1, 0], [-1, 0], [0, 1], [0, -1]], [1, 1, 1, 1])
    res = solve_min_lp(box)
    assert res.value == 1 and res.x == (0, 0)


def test_y_set_bounded_examples():
    assert y_set_is_bounded(F1)
    assert not y_set_is_bounded(PwaFunction([[1, 0]], [0]))
    box = PwaFunction([[1, 0], [-1, 0], [0, 1], [0, -1]], [1, 1, 1, 1])
    assert y_set_is_bounded(box)
    with pytest.raises(EmptyFeasibleSet):
        y_set_is_bounded(PwaFunction([[1], [-1]], [-1, -1]))


@settings(max_examples=200, deadline=None)
@given(matrices(max_n=4, max_m=6))
def test_conv_implications(A):
    conv, cert = contains_origin_conv(A)
    rint, rcert = contains_origin_rint_conv(A)
    if rint:
        assert conv and rcert.check(A)
    if conv:
        assert cert.check(A)
        assert sign_condition_holds(A)


@settings(max_examples=150, deadline=None)
@given(functions(max_n=3, max_m=5))
def test_min_lp_against_brute_force(f):
    res = solve_min_lp(f)
    brute = brute_minimum(pwa_groups(f), f.n)
    if res.status == "unbounded":
        assert brute is None
        return
    assert brute is not None and abs(float(res.value) - brute) <= 1e-6
    # strong duality and complementary slackness hold exactly
    y = values(f, res.x)
    assert max(y) == res.value == sum(l * b for l, b in zip(res.lam, f.b))
    assert all(l == 0 or v == res.value for l, v in zip(res.lam, y))
    assert is_global_minimizer(f, res.x)
