import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from stepgec.problems import (P5_A, P5_B, builtin_problems, constant_slope_problem,
                              exact_solution, get_problem, solve_secant_relation)

PROBLEMS = builtin_problems()


def test_six_problems_in_order():
    assert [p.name for p in PROBLEMS] == [f"#{k}" for k in range(1, 7)]


@pytest.mark.parametrize("p", PROBLEMS, ids=lambda p: p.name)
def test_initial_value_matches_exact_solution(p):
    assert p.exact(p.x0) == pytest.approx(p.y0, abs=1e-14)


@pytest.mark.parametrize("p", PROBLEMS, ids=lambda p: p.name)
@pytest.mark.parametrize("frac", [0.1, 0.37, 0.5, 0.9])
def test_exact_solution_satisfies_the_ode(p, frac):
    x = p.x0 + frac * p.span
    d = 1e-5 * max(1.0, abs(x))
    slope = (p.exact(x + d) - p.exact(x - d)) / (2 * d)
    assert slope == pytest.approx(p.f(p.exact(x)), rel=1e-7, abs=1e-9)


@pytest.mark.parametrize("p", PROBLEMS, ids=lambda p: p.name)
def test_derivatives_are_consistent(p):
    for y in (p.y0, p.exact(p.xN)):
        d = 1e-6 * max(1.0, abs(y))
        assert p.f_y(y) == pytest.approx((p.f(y + d) - p.f(y - d)) / (2 * d), rel=1e-6, abs=1e-9)
        assert p.f_yy(y) == pytest.approx((p.f_y(y + d) - p.f_y(y - d)) / (2 * d), rel=1e-5, abs=1e-7)


@pytest.mark.parametrize("key", [3, "3", "#3", " #3 "])
def test_get_problem_keys(key):
    assert get_problem(key).name == "#3"


@pytest.mark.parametrize("key", [0, 7, "x", None])
def test_get_problem_rejects_unknown(key):
    with pytest.raises(KeyError):
        get_problem(key)


def test_exact_solution_checks_domain():
    p = get_problem(1)
    assert exact_solution(p, 5.0) == pytest.approx(2 * math.exp(5))
    with pytest.raises(ValueError):
        exact_solution(p, 5.1)


def test_cosine_problem_endpoints():
    # the interval is symmetric and y(xN) = 1
    assert P5_A == -P5_B
    p = get_problem(5)
    assert p.exact(p.xN) == pytest.approx(1.0, abs=1e-14)


@given(st.floats(-1.2261911708835171, 1.2261911708835171))
def test_secant_relation_inverse(x):
    y = solve_secant_relation(x)
    assert y == pytest.approx(math.atan(math.sinh(x)), abs=1e-14)


def test_secant_relation_at_hard_point():
    # a point where a plain Newton iteration overshoots the bracket
    x = 1.2179885785
    assert solve_secant_relation(x) == pytest.approx(math.atan(math.sinh(x)), abs=1e-14)


def test_with_interval_reevaluates_start_value():
    p = get_problem(3).with_interval(0.0, 50.0)
    assert (p.x0, p.xN, p.y0) == (0.0, 50.0, 1.0)
    q = get_problem(1).with_interval(1.0, 2.0)
    assert q.y0 == pytest.approx(2 * math.e)


def test_interval_must_be_increasing():
    with pytest.raises(ValueError):
        get_problem(1).with_interval(2.0, 1.0)


def test_constant_slope_problem():
    p = constant_slope_problem(0.5, 0.0, 2.0, 1.0)
    assert p.exact(2.0) == 2.0
    assert p.f_y(123.0) == 0.0
