"""Starting local tolerance and first stepsize for the auxiliary solve."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

from .bootstrap import BootstrapResult
from .lagrange import FieldSingularity, LagrangeField
from .rk import StepFailure, rk4_step

__all__ = [
    "HeuristicReport",
    "stability_cap",
    "suggest_local_tolerance",
    "suggest_initial_stepsize",
    "STABILITY_CONSTANT",
]

# width of the real stability interval shared by all three DOP853 methods
STABILITY_CONSTANT = 1.3764


@dataclass(frozen=True)
class HeuristicReport:
    eps_rho: float
    delta_mu_m: float
    h2: float
    h2_source: str  # "default" | "stability" | "g_ttt"

    def to_dict(self) -> dict:
        return asdict(self)


def stability_cap(g_mu_abs: float, c: float = STABILITY_CONSTANT) -> float:
    """Largest stable step ``c / |g_mu|``; ``inf`` when ``g_mu = 0``."""
    if g_mu_abs == 0.0:
        return math.inf
    return c / g_mu_abs


def suggest_local_tolerance(field: LagrangeField, boot: BootstrapResult,
                            eps_g: float, eps_rho_default: float, *,
                            n_steps: int = 50,
                            stability_constant: float = STABILITY_CONSTANT,
                            exclude_within: float | None = 1e-2,
                            ) -> tuple[float, float]:
    """Local tolerance from a coarse RK4 pass over ``[x1, xN]``.

    Returns ``(eps_rho, delta_mu_m)``. Nodes closer than ``exclude_within``
    to the anchor are skipped (``None`` keeps them all), as are nodes with
    ``f_y(mu) = 0``. With no usable node the default is returned and
    ``delta_mu_m`` is ``nan``.
    """
    p = field.problem
    x0, xN = field.anchor_x, p.xN
    x, mu = boot.x1, boot.mu1
    h = (xN - x) / n_steps
    try:
        h = min(h, stability_cap(abs(field.eval_g_mu(x, mu)), stability_constant))
    except FieldSingularity:
        pass
    n = max(n_steps, math.ceil((xN - x) / h - 1e-9))
    h = (xN - x) / n

    delta_mu_m = -math.inf
    for j in range(n + 1):
        xj = boot.x1 + j * h if j < n else xN
        if j:
            try:
                mu = rk4_step(field.eval_g, x, mu, xj - x)
            except (FieldSingularity, StepFailure):
                break
            x = xj
        dx = x - x0
        if exclude_within is not None and dx < exclude_within:
            continue
        den = abs(p.f_y(mu) * dx)
        if den == 0.0:
            continue
        yj = field.taylor_value(mu, x)
        delta_mu_m = max(delta_mu_m, eps_g * max(1.0, abs(yj)) / den)

    if delta_mu_m == -math.inf:
        return eps_rho_default, math.nan
    return min(eps_rho_default, delta_mu_m / (xN - x0)), delta_mu_m


def suggest_initial_stepsize(field: LagrangeField, boot: BootstrapResult,
                             h2_default: float = 0.1,
                             stability_constant: float = STABILITY_CONSTANT,
                             ) -> tuple[float, str]:
    """First DOP853 stepsize: the smallest of the default, the stability
    bound and the fourth-derivative bound. Non-finite bounds are dropped."""
    x, mu = boot.x1, boot.mu1
    candidates = [(h2_default, "default")]
    try:
        cap = stability_cap(abs(field.eval_g_mu(x, mu)), stability_constant)
        if math.isfinite(cap):
            candidates.append((cap, "stability"))
    except FieldSingularity:
        pass
    try:
        gttt = field.eval_g_ttt(x, mu)
        if gttt != 0.0:
            h_t = abs(24.0 * max(1.0, abs(mu)) / gttt) ** (1.0 / 3.0)
            if math.isfinite(h_t):
                candidates.append((h_t, "g_ttt"))
    except (FieldSingularity, ZeroDivisionError, OverflowError):
        pass
    h2, source = min(candidates, key=lambda c: c[0])
    return h2, source
