"""Scalar autonomous test problems ``y' = f(y)`` with exact solutions."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable

__all__ = [
    "ScalarAutonomousProblem",
    "builtin_problems",
    "get_problem",
    "exact_solution",
    "solve_secant_relation",
    "constant_slope_problem",
]

Scalar = Callable[[float], float]

# Endpoints of problem #5 as printed (31 digits); they round to double.
P5_A = float("-1.2261911708835170708130609674719")
P5_B = float("1.2261911708835170708130609674719")


@dataclass(frozen=True)
class ScalarAutonomousProblem:
    name: str
    f: Scalar
    f_y: Scalar
    f_yy: Scalar
    x0: float
    xN: float
    y0: float
    exact: Scalar
    rhs_text: str = ""

    def __post_init__(self):
        if not self.xN > self.x0:
            raise ValueError(f"{self.name}: need xN > x0")

    @property
    def span(self) -> float:
        return self.xN - self.x0

    def with_interval(self, x0: float, xN: float) -> ScalarAutonomousProblem:
        """Same ODE and exact solution on another interval.

        ``y0`` is re-evaluated from the exact solution at the new ``x0``.
        """
        return replace(self, x0=x0, xN=xN, y0=self.exact(x0))


def exact_solution(problem: ScalarAutonomousProblem, x: float) -> float:
    """Evaluate the exact solution on ``[x0, xN]``."""
    slack = 1e-12 * max(1.0, problem.span)
    if not (problem.x0 - slack <= x <= problem.xN + slack):
        raise ValueError(f"x={x!r} outside [{problem.x0}, {problem.xN}]")
    return problem.exact(x)


def _secant_relation(y: float) -> float:
    return math.log(1.0 / math.cos(y) + math.tan(y))


def solve_secant_relation(x: float, tol: float = 1e-14) -> float:
    """Solve ``ln(sec y + tan y) = x`` for ``y`` in ``(-pi/2, pi/2)``.

    Bisection on a bracket, then Newton (the derivative is ``sec y``) once
    the bracket is narrow.
    """
    if x == 0.0:
        return 0.0
    lo, hi = -0.5 * math.pi + 1e-6, 0.5 * math.pi - 1e-6
    r_lo, r_hi = _secant_relation(lo) - x, _secant_relation(hi) - x
    if r_lo > 0 or r_hi < 0:
        raise ValueError(f"cannot bracket ln(sec y + tan y) = {x!r}")
    while hi - lo > 1e-3:
        mid = 0.5 * (lo + hi)
        if _secant_relation(mid) - x > 0:
            hi = mid
        else:
            lo = mid
    y = 0.5 * (lo + hi)
    for _ in range(100):
        r = _secant_relation(y) - x
        if abs(r) < tol:
            polished = y - r * math.cos(y)
            if abs(_secant_relation(polished) - x) <= abs(r):
                return polished
            return y
        if r > 0:
            hi = y
        else:
            lo = y
        y_new = y - r * math.cos(y)
        if not lo < y_new < hi:
            y_new = 0.5 * (lo + hi)
        if y_new == y:
            break
        y = y_new
    r = _secant_relation(y) - x
    if abs(r) >= tol:
        # one last look at the float neighbours
        best = min((y, math.nextafter(y, lo), math.nextafter(y, hi)),
                   key=lambda v: abs(_secant_relation(v) - x))
        if abs(_secant_relation(best) - x) >= tol:
            raise ArithmeticError(f"secant relation residual {r:.3e} at x={x!r}")
        y = best
    return y


def _p1():
    return ScalarAutonomousProblem(
        "#1", lambda y: y, lambda y: 1.0, lambda y: 0.0,
        0.0, 5.0, 2.0, lambda x: 2.0 * math.exp(x), "y' = y")


def _p2():
    return ScalarAutonomousProblem(
        "#2", lambda y: y * y, lambda y: 2.0 * y, lambda y: 2.0,
        -10.0, -3.0, 0.1, lambda x: -1.0 / x, "y' = y^2")


def _p3():
    return ScalarAutonomousProblem(
        "#3",
        lambda y: 0.25 * y * (1.0 - y / 20.0),
        lambda y: 0.25 - y / 40.0,
        lambda y: -1.0 / 40.0,
        0.0, 20.0, 1.0,
        lambda x: 20.0 / (1.0 + 19.0 * math.exp(-x / 4.0)),
        "y' = (y/4)(1 - y/20)")


def _p4():
    return ScalarAutonomousProblem(
        "#4", lambda y: 1.0 / y, lambda y: -1.0 / (y * y),
        lambda y: 2.0 / (y * y * y),
        5.0, 25.0, 1.0, lambda x: math.sqrt(2.0 * x - 9.0), "y' = 1/y")


def _p5():
    return ScalarAutonomousProblem(
        "#5", math.cos, lambda y: -math.sin(y), lambda y: -math.cos(y),
        P5_A, P5_B, -1.0, solve_secant_relation, "y' = cos y")


def _p6():
    return ScalarAutonomousProblem(
        "#6", lambda y: -y, lambda y: -1.0, lambda y: 0.0,
        0.0, 10.0, 1.0, lambda x: math.exp(-x), "y' = -y")


_BUILDERS = (_p1, _p2, _p3, _p4, _p5, _p6)
_BUILTIN = tuple(b() for b in _BUILDERS)


def builtin_problems() -> list[ScalarAutonomousProblem]:
    """The six benchmark problems, in order #1..#6."""
    return list(_BUILTIN)


def get_problem(key: int | str) -> ScalarAutonomousProblem:
    """Look up a builtin problem by index (1-6) or name (``"#3"`` or ``"3"``)."""
    if isinstance(key, str):
        key = key.strip().lstrip("#")
    try:
        idx = int(key)
    except (TypeError, ValueError):
        raise KeyError(f"unknown problem {key!r}") from None
    if not 1 <= idx <= len(_BUILTIN):
        raise KeyError(f"problem index {idx} not in 1..{len(_BUILTIN)}")
    return _BUILTIN[idx - 1]


def constant_slope_problem(c: float = 0.5, x0: float = 0.0, xN: float = 1.0,
                           y0: float = 1.0) -> ScalarAutonomousProblem:
    """``y' = c``: a linear solution that Euler reproduces exactly."""
    return ScalarAutonomousProblem(
        f"const({c})", lambda y: c, lambda y: 0.0, lambda y: 0.0,
        x0, xN, y0, lambda x: y0 + c * (x - x0), f"y' = {c}")
