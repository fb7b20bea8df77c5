"""Starting value ``mu_1`` of the Lagrange function near the anchor.

Near the anchor ``g`` cannot be evaluated, so ``mu_1`` comes from Taylor's
theorem directly: find the interior abscissa ``xi`` with

    F(xi) = y_mu - y0 - f(y(xi)) (x_mu - x0) = 0

by Newton's method, with every ``y`` value supplied by RK7.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

from .lagrange import LagrangeField
from .rk import integrate_fixed, rk7_step

__all__ = ["BootstrapError", "BootstrapResult", "bootstrap"]

log = logging.getLogger(__name__)


class BootstrapError(RuntimeError):
    pass


@dataclass(frozen=True)
class BootstrapResult:
    x1: float
    y1: float
    xi1: float
    mu1: float
    iterations: int
    residual: float


def bootstrap(field: LagrangeField, x_mu: float, *, delta_xi: float = 1e-5,
              tol: float = 1e-14, max_iter: int = 25,
              rk7_steps: int = 5) -> BootstrapResult:
    """Solve for ``xi_1`` and ``mu_1 = y(xi_1)`` on ``(x0, x_mu)``."""
    p = field.problem
    x0, y0 = field.anchor_x, field.anchor_y
    if not x_mu > x0:
        raise BootstrapError(f"x_mu={x_mu!r} must exceed the anchor {x0!r}")
    rhs = lambda x, y: p.f(y)

    def y_at(x: float) -> float:
        return integrate_fixed(rk7_step, rhs, x0, y0, x, rk7_steps)

    y_mu = y_at(x_mu)
    width = x_mu - x0

    def F(xi: float) -> float:
        return y_mu - y0 - p.f(y_at(xi)) * width

    xi = 0.5 * (x_mu + x0)
    r = F(xi)
    it = 0
    while abs(r) >= tol:
        if it >= max_iter:
            raise BootstrapError(
                f"Newton did not converge in {max_iter} iterations (|F|={abs(r):.3e})")
        dF = (F(xi + delta_xi) - r) / delta_xi
        if abs(dF) < 1e-300:
            raise BootstrapError("F is flat; cannot take a Newton step")
        new = xi - r / dF
        # keep the iterate inside the open interval
        if new <= x0:
            new = 0.5 * (xi + x0)
        elif new >= x_mu:
            new = 0.5 * (xi + x_mu)
        xi = new
        r = F(xi)
        it += 1
    log.debug("bootstrap at x0=%g: xi=%r after %d Newton steps", x0, xi, it)
    return BootstrapResult(x1=x_mu, y1=y_mu, xi1=xi, mu1=y_at(xi),
                           iterations=it, residual=r)
