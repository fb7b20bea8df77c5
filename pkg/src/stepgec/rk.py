"""Fixed-step explicit Runge-Kutta machinery.

Euler, classical RK4, a 7th-order method (the propagating half of Fehlberg's
7(8) pair) and the DOP853 embedded triple with its three weight sets.

The triple step is not the textbook DOP853 step. All 12 stages share one
base value, the 8th-order solution ``mu_V``, and the 3rd-order solution is
advanced from the 5th-order one::

    mu_V' = mu_V + sum(b_V * k)
    mu_H' = mu_H + sum(b_H * k)
    mu_L' = mu_H + sum(b_L * k)

so ``mu_H' - mu_L'`` is a pure one-step error estimate for the 3rd-order
method.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Sequence

from . import _tableaus as _t

__all__ = [
    "ButcherTableau",
    "TripleState",
    "StepFailure",
    "DP853",
    "RK4",
    "RK7",
    "euler_step",
    "rk4_step",
    "rk7_step",
    "rk_step",
    "dp853_triple_step",
    "dp853_sparsity_check",
    "rooted_trees",
    "order_condition_residuals",
    "tableau_csv",
    "integrate_fixed",
]

Field = Callable[[float, float], float]


class StepFailure(ArithmeticError):
    """A step produced a non-finite stage or result."""


@dataclass(frozen=True)
class ButcherTableau:
    """Explicit Runge-Kutta coefficients.

    ``weights`` maps a label (e.g. ``"V"``) to a weight vector; single methods
    use the label ``"b"``. ``orders`` holds the claimed order of each weight
    set.
    """

    name: str
    c: tuple[float, ...]
    a: tuple[tuple[float, ...], ...]
    weights: dict[str, tuple[float, ...]]
    orders: dict[str, int]

    @property
    def stages(self) -> int:
        return len(self.c)

    def validate(self, tol: float = 1e-13) -> None:
        """Check explicitness, consistency and the row-sum condition."""
        s = self.stages
        if len(self.a) != s or any(len(row) != s for row in self.a):
            raise ValueError(f"{self.name}: a must be {s}x{s}")
        for q in range(s):
            if any(self.a[q][r] != 0 for r in range(q, s)):
                raise ValueError(f"{self.name}: a is not strictly lower triangular")
            if abs(sum(self.a[q]) - self.c[q]) > tol:
                raise ValueError(f"{self.name}: row-sum condition fails at stage {q + 1}")
        for label, b in self.weights.items():
            if len(b) != s:
                raise ValueError(f"{self.name}: weight set {label} has wrong length")
            if abs(sum(b) - 1.0) > tol:
                raise ValueError(f"{self.name}: weights {label} do not sum to 1")


@dataclass(frozen=True)
class TripleState:
    """Three concurrent DOP853 solutions at node ``x``."""

    x: float
    mu_L: float
    mu_H: float
    mu_V: float

    @classmethod
    def start(cls, x: float, mu: float) -> TripleState:
        return cls(x, mu, mu, mu)


def _floats(rows):
    return tuple(tuple(float(v) for v in row) for row in rows)


DP853 = ButcherTableau(
    name="DP853",
    c=_t.DP853_C,
    a=_t.DP853_A,
    weights={"L": _t.DP853_B_L, "H": _t.DP853_B_H, "V": _t.DP853_B_V},
    orders={"L": 3, "H": 5, "V": 8},
)

RK4 = ButcherTableau(
    name="RK4",
    c=tuple(float(v) for v in _t.RK4_C),
    a=_floats(_t.RK4_A),
    weights={"b": tuple(float(v) for v in _t.RK4_B)},
    orders={"b": 4},
)

RK7 = ButcherTableau(
    name="RK7",
    c=tuple(float(v) for v in _t.RKF7_C),
    a=_floats(_t.RKF7_A),
    weights={"b": tuple(float(v) for v in _t.RKF7_B)},
    orders={"b": 7},
)


def _check(value: float) -> float:
    if not math.isfinite(value):
        raise StepFailure(f"non-finite value {value!r}")
    return value


def euler_step(f: Callable[[float], float], y: float, h: float) -> float:
    """One step of Euler's method for the autonomous ODE ``y' = f(y)``."""
    return _check(y + h * f(y))


def rk_step(tab: ButcherTableau, g: Field, x: float, y: float, h: float,
            label: str = "b") -> float:
    """One step of a single explicit method for ``y' = g(x, y)``."""
    a, c, b = tab.a, tab.c, tab.weights[label]
    k: list[float] = []
    for q in range(tab.stages):
        row = a[q]
        yq = y
        for r in range(q):
            if row[r]:
                yq += row[r] * k[r]
        k.append(_check(h * g(x + c[q] * h, yq)))
    acc = 0.0
    for bq, kq in zip(b, k):
        if bq:
            acc += bq * kq
    return _check(y + acc)


def rk4_step(g: Field, x: float, y: float, h: float) -> float:
    """One step of the classical four-stage RK4."""
    return rk_step(RK4, g, x, y, h)


def rk7_step(g: Field, x: float, y: float, h: float) -> float:
    """One step of the 7th-order Fehlberg method."""
    return rk_step(RK7, g, x, y, h)


def integrate_fixed(step, g: Field, x0: float, y0: float, x1: float,
                    n: int) -> float:
    """Apply ``n`` equal steps of ``step`` from ``x0`` to ``x1``."""
    if n < 1:
        raise ValueError(f"need at least one step, got n={n}")
    h = (x1 - x0) / n
    y = y0
    for j in range(n):
        y = step(g, x0 + j * h, y, h)
    return y


def dp853_triple_step(g: Field, state: TripleState, h: float,
                      tab: ButcherTableau = DP853) -> TripleState:
    """Advance the (L, H, V) triple one step of size ``h``."""
    a, c = tab.a, tab.c
    bL, bH, bV = tab.weights["L"], tab.weights["H"], tab.weights["V"]
    x, base = state.x, state.mu_V
    k: list[float] = []
    for q in range(tab.stages):
        row = a[q]
        arg = base
        for r in range(q):
            if row[r]:
                arg += row[r] * k[r]
        k.append(_check(h * g(x + c[q] * h, arg)))
    dL = dH = dV = 0.0
    for q in range(tab.stages):
        kq = k[q]
        dL += bL[q] * kq
        dH += bH[q] * kq
        dV += bV[q] * kq
    return TripleState(
        x=x + h,
        mu_L=_check(state.mu_H + dL),
        mu_H=_check(state.mu_H + dH),
        mu_V=_check(state.mu_V + dV),
    )


_ZERO_HV = (2, 3, 4, 5)
_ZERO_L = (2, 3, 4, 5, 6, 7, 8, 10, 11)


def dp853_sparsity_check(tab: ButcherTableau) -> bool:
    """True iff the DOP853 weight zero pattern holds exactly (1-based stages)."""
    w = tab.weights
    if any(w[lab][q - 1] != 0 for lab in ("H", "V") for q in _ZERO_HV):
        return False
    return all(w["L"][q - 1] == 0 for q in _ZERO_L)


# --- order conditions via rooted trees --------------------------------------

@lru_cache(maxsize=None)
def rooted_trees(order: int) -> tuple[tuple, ...]:
    """All rooted trees with ``order`` vertices.

    A tree is the sorted tuple of its subtrees; the single vertex is ``()``.
    """
    if order == 1:
        return ((),)
    out = set()
    for forest in _forests(order - 1, order - 1):
        out.add(tuple(sorted(forest)))
    return tuple(sorted(out))


def _forests(n: int, max_part: int):
    # multisets of trees with total order n, parts in non-increasing order
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), 0, -1):
        for t in rooted_trees(first):
            for rest in _forests(n - first, first):
                if rest and _tree_order(rest[0]) == first and rest[0] > t:
                    continue
                yield (t,) + rest


def _tree_order(t: tuple) -> int:
    return 1 + sum(_tree_order(s) for s in t)


def _gamma(t: tuple) -> int:
    g = _tree_order(t)
    for s in t:
        g *= _gamma(s)
    return g


def _stage_weights(t: tuple, a, s: int, cache: dict) -> list:
    key = t
    if key in cache:
        return cache[key]
    vec = [1] * s
    for child in t:
        inner = _stage_weights(child, a, s, cache)
        av = [sum(a[q][r] * inner[r] for r in range(s)) for q in range(s)]
        vec = [v * w for v, w in zip(vec, av)]
    cache[key] = vec
    return vec


def order_condition_residuals(a: Sequence[Sequence], b: Sequence,
                              order: int) -> list[tuple[tuple, float]]:
    """Residuals ``b . Phi(t) - 1/gamma(t)`` for every tree up to ``order``.

    Accepts floats or ``Fraction``s; with fractions the residuals are exact.
    """
    s = len(b)
    cache: dict = {}
    out = []
    for p in range(1, order + 1):
        for t in rooted_trees(p):
            phi = _stage_weights(t, a, s, cache)
            val = sum(bq * v for bq, v in zip(b, phi))
            target = Fraction(1, _gamma(t))
            if not isinstance(val, Fraction):
                target = float(target)
            out.append((t, val - target))
    return out


def tableau_csv(tab: ButcherTableau = DP853) -> str:
    """CSV dump of a tableau: one row per stage with c, a-row and weights."""
    buf = io.StringIO()
    w = csv.writer(buf)
    labels = list(tab.weights)
    w.writerow(["stage", "c"] + [f"a{r + 1}" for r in range(tab.stages)]
               + [f"b_{lab}" for lab in labels])
    for q in range(tab.stages):
        w.writerow([q + 1, repr(tab.c[q])] + [repr(v) for v in tab.a[q]]
                   + [repr(tab.weights[lab][q]) for lab in labels])
    return buf.getvalue()


for _tab in (DP853, RK4, RK7):
    _tab.validate()
if not dp853_sparsity_check(DP853):  # pragma: no cover - guards transcription
    raise ImportError("DP853 weight zero pattern violated")
