"""The auxiliary ODE for the Taylor-Lagrange function.

For ``y' = f(y)`` anchored at ``(x0, y0)``, the mean-value form of Taylor's
theorem gives ``y(x) = y0 + f(mu(x)) (x - x0)``. Differentiating yields

    mu'(x) = g(x, mu) = [f(y0 + f(mu)(x - x0)) - f(mu)] / [f_y(mu)(x - x0)]

whose solution ``mu`` reconstructs ``y`` through the remainder term
``f(mu)(x - x0)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .problems import ScalarAutonomousProblem

__all__ = ["FieldSingularity", "LagrangeField"]


class FieldSingularity(ArithmeticError):
    """``g`` was evaluated at the anchor or where ``f_y(mu) = 0``."""


@dataclass(frozen=True)
class LagrangeField:
    problem: ScalarAutonomousProblem
    anchor_x: float
    anchor_y: float

    @classmethod
    def at_start(cls, problem: ScalarAutonomousProblem) -> LagrangeField:
        return cls(problem, problem.x0, problem.y0)

    def eval_g(self, x: float, mu: float) -> float:
        p = self.problem
        dx = x - self.anchor_x
        if abs(dx) < 1e-12 * max(1.0, abs(self.anchor_x)):
            raise FieldSingularity(f"g evaluated at the anchor x={x!r}")
        fmu = p.f(mu)
        num = p.f(self.anchor_y + fmu * dx) - fmu
        den = p.f_y(mu) * dx
        if den == 0.0:
            if num == 0.0:
                # linear solution: any mu reproduces it, so mu stays put
                return 0.0
            raise FieldSingularity(f"f_y(mu) = 0 at mu={mu!r}")
        return num / den

    __call__ = eval_g

    def eval_g_mu(self, x: float, mu: float) -> float:
        """Central-difference ``dg/dmu``."""
        d = max(1e-6, 1e-6 * abs(mu))
        return (self.eval_g(x, mu + d) - self.eval_g(x, mu - d)) / (2.0 * d)

    def total_derivative(self, fn, x: float, mu: float, step: float) -> float:
        """``(d/dx + g d/dmu) fn`` at ``(x, mu)`` by a central difference
        along the tangent line of the flow."""
        slope = self.eval_g(x, mu)
        return (fn(x + step, mu + step * slope)
                - fn(x - step, mu - step * slope)) / (2.0 * step)

    def eval_g_ttt(self, x: float, mu: float) -> float:
        """Third total derivative of ``g`` along the flow, i.e. ``mu''''``.

        Three nested central differences. The step is ``1e-4 max(1, |x|)``,
        shrunk so the whole stencil stays on one side of the anchor.
        """
        step = 1e-4 * max(1.0, abs(x))
        step = min(step, 0.1 * abs(x - self.anchor_x))
        d1 = lambda u, v: self.total_derivative(self.eval_g, u, v, step)
        d2 = lambda u, v: self.total_derivative(d1, u, v, step)
        value = self.total_derivative(d2, x, mu, step)
        if not math.isfinite(value):
            raise FieldSingularity("non-finite third derivative")
        return value

    def remainder(self, mu: float, x: float) -> float:
        """The Lagrange remainder ``f(mu)(x - x0)``."""
        return self.problem.f(mu) * (x - self.anchor_x)

    def taylor_value(self, mu: float, x: float) -> float:
        """``y0 + f(mu)(x - x0)``."""
        return self.anchor_y + self.remainder(mu, x)

    def g_mu_estimate(self, x: float, mu: float) -> float:
        """Closed-form approximation of ``dg/dmu`` valid for ``mu`` near ``y0``.

        Only used as a cross-check of :meth:`eval_g_mu`.
        """
        p = self.problem
        y0, dx = self.anchor_y, x - self.anchor_x
        fy0, fy = p.f_y(y0), p.f_y(mu)
        return (-fy0 * p.f_yy(mu) / fy ** 2 * (p.f(mu) + (y0 - mu) / dx)
                + fy0 / fy * (fy - 1.0 / dx))
