"""Stepwise global error control for Euler's method.

Euler's method advances ``y`` while the DOP853 triple integrates the
Lagrange function ``mu`` on the same grid. At every node the Taylor
reconstruction ``y^T = y0 + f(mu)(x - x0)`` gives an estimate of the Euler
global error; when that estimate breaches the tolerance the Euler value is
replaced by ``y^T`` ("quenched"). If the estimated error of ``y^T`` itself
grows past ``eps_rb`` the expansion is re-anchored at the previous node.
"""

from __future__ import annotations

import logging
import math
from dataclasses import asdict, dataclass, field
from typing import Optional

from .bootstrap import BootstrapError, BootstrapResult, bootstrap
from .heuristics import (STABILITY_CONSTANT, HeuristicReport, stability_cap,
                         suggest_initial_stepsize, suggest_local_tolerance)
from .lagrange import FieldSingularity, LagrangeField
from .problems import ScalarAutonomousProblem
from .rk import StepFailure, TripleState, dp853_triple_step, euler_step

__all__ = [
    "SolverConfig",
    "StepDiagnostics",
    "SolveResult",
    "SolverError",
    "primary_lec",
    "secondary_lec",
    "remainder_error",
    "quench_test",
    "solve",
    "baseline_euler_max_error",
    "relative_error",
]

log = logging.getLogger(__name__)


class SolverError(RuntimeError):
    """The solve was aborted; ``partial`` holds the trace so far."""

    def __init__(self, message: str, partial: Optional["SolveResult"] = None):
        super().__init__(message)
        self.partial = partial


@dataclass(frozen=True)
class SolverConfig:
    """Tolerances and knobs for :func:`solve`.

    ``eps_rho_default`` defaults to ``eps_g / 100`` and ``eps_rb`` to
    ``eps_g / 1000``; pass ``math.inf`` as ``eps_rb`` to disable reboots.

    ``step_growth`` bounds the candidate stepsize of the next step to
    ``step_growth * h`` (and always to ``h2_default``). The default 1.2 lets
    the stepsize recover by 20% per node after a stability or LEC cut; ``1.0``
    reuses the previous stepsize and ``inf`` restarts every step from
    ``h2_default``.
    """

    eps_g: float
    eps_rho_default: Optional[float] = None
    eta: float = 0.85
    h2_default: float = 0.1
    eps_rb: Optional[float] = None
    x_mu_offset: float = 1e-3
    p: int = 3
    stability_constant: float = STABILITY_CONSTANT
    secondary_lec_floor_enabled: bool = False
    always_quench: bool = False
    step_growth: float = 1.2
    max_reboots: int = 100
    prepass_steps: int = 50
    prepass_exclude_near_anchor: bool = True

    def __post_init__(self):
        if self.eps_rho_default is None:
            object.__setattr__(self, "eps_rho_default", self.eps_g / 100.0)
        if self.eps_rb is None:
            object.__setattr__(self, "eps_rb", self.eps_g / 1000.0)
        for name in ("eps_g", "eps_rho_default", "eps_rb", "h2_default",
                     "x_mu_offset", "stability_constant", "step_growth"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if not 0.0 < self.eta < 1.0:
            raise ValueError("eta must lie in (0, 1)")
        if self.p < 1:
            raise ValueError("p must be >= 1")

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class StepDiagnostics:
    """Everything known about one node.

    ``kind`` is ``"anchor"`` for an expansion point, ``"bootstrap"`` for the
    node ``x1`` whose value comes from RK7, and ``"step"`` otherwise. A
    reboot turns the previous ``"step"`` node into an ``"anchor"`` whose
    ``y_final`` is the re-anchored value.
    """

    x: float
    h: float
    y_euler: float
    y_final: float
    y_taylor: float
    mu_L: float
    mu_H: float
    mu_V: float
    Delta_mu: float = 0.0
    Delta_yT: float = 0.0
    Delta_y_rel: float = 0.0
    quenched: bool = False
    lec_primary: bool = False
    lec_secondary: bool = False
    stability_capped: bool = False
    kind: str = "step"
    anchor_x: float = math.nan
    true_rel_err: Optional[float] = None

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class SolveResult:
    trace: list[StepDiagnostics]
    config: SolverConfig
    problem_name: str
    Q: int = 0
    P: int = 0
    S: int = 0
    star: int = 0
    h2: float = math.nan
    reboot_nodes: list[float] = field(default_factory=list)
    breach_nodes: list[float] = field(default_factory=list)
    heuristics: list[HeuristicReport] = field(default_factory=list)
    bootstraps: list[BootstrapResult] = field(default_factory=list)
    max_rel_error: Optional[float] = None

    @property
    def N(self) -> int:
        return len(self.trace)

    @property
    def reboots(self) -> int:
        return len(self.reboot_nodes)

    @property
    def nodes(self) -> list[float]:
        return [d.x for d in self.trace]

    def max_abs_estimate(self) -> float:
        """Largest ``|Delta_y_rel|`` over the trace."""
        return max((abs(d.Delta_y_rel) for d in self.trace), default=0.0)

    def summary(self) -> dict:
        return {
            "problem": self.problem_name,
            "N": self.N, "Q": self.Q, "P": self.P, "S": self.S,
            "star": self.star, "h2": self.h2,
            "reboots": self.reboots, "reboot_nodes": list(self.reboot_nodes),
            "breach_nodes": list(self.breach_nodes),
            "max_rel_error": self.max_rel_error,
            "max_rel_estimate": self.max_abs_estimate(),
            "heuristics": [h.to_dict() for h in self.heuristics],
            "config": self.config.to_dict(),
        }


def relative_error(value: float, exact: float) -> float:
    """Hinge-normalised error ``|value - exact| / max(1, |exact|)``."""
    return abs(value - exact) / max(1.0, abs(exact))


def primary_lec(mu_L: float, mu_H: float, h: float, p: int, eps_rho: float,
                eta: float) -> Optional[float]:
    """Stepsize from the local error per unit step of the ``mu`` solution.

    Returns ``None`` when the bound ``|L h^p| <= eps_rho max(1, |mu_H|)``
    already holds.
    """
    L = (mu_H - mu_L) / h ** (p + 1)
    scale = eps_rho * max(1.0, abs(mu_H))
    if abs(L * h ** p) > scale:
        return eta * (scale / abs(L)) ** (1.0 / p)
    return None


def secondary_lec(L: float, mu: float, fld: LagrangeField, x: float, h: float,
                  p: int, eps_rho: float, eta: float) -> Optional[float]:
    """Stepsize from the induced local error in ``y0 + f(mu)(x - x0)``."""
    dx = x - fld.anchor_x
    d = abs(L * fld.problem.f_y(mu) * dx)
    if d == 0.0:
        return None
    scale = eps_rho * max(1.0, abs(fld.taylor_value(mu, x)))
    if d * h ** p > scale:
        return eta * (scale / d) ** (1.0 / p)
    return None


def remainder_error(fld: LagrangeField, mu: float, x: float, Delta: float,
                    denom: float) -> float:
    """Second-order estimate of the error in the remainder term caused by an
    error ``Delta`` in ``mu``, divided by ``denom``."""
    p = fld.problem
    dx = x - fld.anchor_x
    return (p.f_yy(mu) * dx * Delta ** 2 - 2.0 * p.f_y(mu) * dx * Delta) / (2.0 * denom)


def quench_test(Delta_y_rel: float, eps_g: float, Delta_yT: float) -> bool:
    return abs(Delta_y_rel) > abs(eps_g - abs(Delta_yT))


def _start_node(x: float, y: float, anchor_x: float) -> StepDiagnostics:
    # mu_0 = 0 is a placeholder: the expansion holds for any mu at the anchor
    return StepDiagnostics(x=x, h=0.0, y_euler=y, y_final=y, y_taylor=y,
                           mu_L=0.0, mu_H=0.0, mu_V=0.0, kind="anchor",
                           anchor_x=anchor_x)


class _Reboot(Exception):
    pass


def solve(problem: ScalarAutonomousProblem, config: SolverConfig) -> SolveResult:
    """Integrate ``problem`` on its interval with stepwise error control."""
    cfg = config
    xN = problem.xN
    span = problem.span
    res = SolveResult(trace=[_start_node(problem.x0, problem.y0, problem.x0)],
                      config=cfg, problem_name=problem.name)
    anchor_x, anchor_y = problem.x0, problem.y0

    while True:
        fld = LagrangeField(problem, anchor_x, anchor_y)
        try:
            boot = bootstrap(fld, anchor_x + cfg.x_mu_offset)
        except (BootstrapError, FieldSingularity, StepFailure) as exc:
            raise SolverError(f"bootstrap failed at x0={anchor_x!r}: {exc}", res) from exc
        res.bootstraps.append(boot)
        exclude = 10.0 * cfg.x_mu_offset if cfg.prepass_exclude_near_anchor else None
        eps_rho, dmm = suggest_local_tolerance(
            fld, boot, cfg.eps_g, cfg.eps_rho_default, n_steps=cfg.prepass_steps,
            stability_constant=cfg.stability_constant, exclude_within=exclude)
        h, source = suggest_initial_stepsize(fld, boot, cfg.h2_default,
                                             cfg.stability_constant)
        res.heuristics.append(HeuristicReport(eps_rho, dmm, h, source))

        state = TripleState.start(boot.x1, boot.mu1)
        res.trace.append(StepDiagnostics(
            x=boot.x1, h=boot.x1 - anchor_x, y_euler=boot.y1, y_final=boot.y1,
            y_taylor=fld.taylor_value(boot.mu1, boot.x1), mu_L=boot.mu1,
            mu_H=boot.mu1, mu_V=boot.mu1, kind="bootstrap", anchor_x=anchor_x))
        y = boot.y1
        first = True

        try:
            while state.x < xN:
                if not first:
                    h = min(cfg.h2_default, cfg.step_growth * h)
                diag, state, y, h = _advance(fld, state, y, h, eps_rho, cfg, res)
                if first and len(res.bootstraps) == 1:
                    res.h2 = diag.h
                first = False
                if (abs(diag.Delta_yT) > cfg.eps_rb
                        and xN - res.trace[-1].x > 2.0 * cfg.x_mu_offset):
                    raise _Reboot
                res.trace.append(diag)
                if diag.quenched:
                    res.Q += 1
                if diag.lec_primary:
                    res.P += 1
                if diag.lec_secondary:
                    res.S += 1
                if diag.stability_capped:
                    res.star += 1
        except _Reboot:
            res.breach_nodes.append(diag.x)
        except (FieldSingularity, StepFailure) as exc:
            if res.trace[-1].kind != "step":
                raise SolverError(f"step failed at x={state.x!r}: {exc}", res) from exc
            log.info("step from x=%g failed (%s); rebooting", state.x, exc)
            res.breach_nodes.append(math.nan)
        else:
            break

        # re-anchor at the last accepted node, one node back from the breach
        if res.reboots >= cfg.max_reboots:
            raise SolverError(f"reboot limit {cfg.max_reboots} reached", res)
        node = res.trace[-1]
        anchor_x = node.x
        anchor_y = fld.taylor_value(node.mu_V, node.x)
        node.kind = "anchor"
        node.y_final = anchor_y
        res.reboot_nodes.append(anchor_x)
        log.info("reboot at x=%g (y=%r)", anchor_x, anchor_y)

    _finish(problem, res)
    return res


def _advance(fld, state, y, h, eps_rho, cfg, res):
    """One controlled node: stability cap, triple step, LEC, Euler, quench."""
    x = state.x
    xN = fld.problem.xN
    cap = stability_cap(abs(fld.eval_g_mu(x, state.mu_H)), cfg.stability_constant)
    capped = cap <= h
    if capped:
        h = cap
    remaining = xN - x
    if h >= remaining or remaining - h < 1e-12 * max(1.0, abs(xN)):
        h = remaining
        capped = capped and cap <= remaining

    new = dp853_triple_step(fld.eval_g, state, h)
    L = (new.mu_H - new.mu_L) / h ** (cfg.p + 1)
    h_p = primary_lec(new.mu_L, new.mu_H, h, cfg.p, eps_rho, cfg.eta)
    h_s = secondary_lec(L, new.mu_H, fld, new.x, h, cfg.p, eps_rho, cfg.eta)
    if h_s is not None and cfg.secondary_lec_floor_enabled:
        h_s = max(h_s, 0.1 * (h_p if h_p is not None else h))
    lec_p = lec_s = False
    if h_p is not None or h_s is not None:
        if h_s is None or (h_p is not None and h_p <= h_s):
            h_new, lec_p = h_p, True
        else:
            h_new, lec_s = h_s, True
        if h_new < h:
            h = h_new
            capped = False
            new = dp853_triple_step(fld.eval_g, state, h)
        else:
            lec_p = lec_s = False

    p = fld.problem
    x_new = xN if new.x >= xN or xN - new.x < 1e-12 * max(1.0, abs(xN)) else new.x
    if x_new != new.x:
        new = TripleState(x_new, new.mu_L, new.mu_H, new.mu_V)
    mu = new.mu_H
    Delta = new.mu_V - new.mu_L
    y_euler = euler_step(p.f, y, h)
    y_T = fld.taylor_value(mu, x_new)
    denom = max(1.0, abs(y_T))
    dyT = remainder_error(fld, mu, x_new, Delta, denom)
    dy_rel = (y_T - y_euler) / denom
    quench = cfg.always_quench or quench_test(dy_rel, cfg.eps_g, dyT)
    diag = StepDiagnostics(
        x=x_new, h=h, y_euler=y_euler, y_final=y_T if quench else y_euler,
        y_taylor=y_T, mu_L=new.mu_L, mu_H=new.mu_H, mu_V=new.mu_V,
        Delta_mu=Delta, Delta_yT=dyT, Delta_y_rel=dy_rel, quenched=quench,
        lec_primary=lec_p, lec_secondary=lec_s, stability_capped=capped,
        anchor_x=fld.anchor_x)
    return diag, new, diag.y_final, h


def _finish(problem: ScalarAutonomousProblem, res: SolveResult) -> None:
    worst = 0.0
    for d in res.trace:
        try:
            ex = problem.exact(d.x)
        except (ValueError, ArithmeticError):
            res.max_rel_error = None
            return
        d.true_rel_err = relative_error(d.y_final, ex)
        worst = max(worst, d.true_rel_err)
    res.max_rel_error = worst


def baseline_euler_max_error(problem: ScalarAutonomousProblem,
                             nodes: list[float]) -> float:
    """Max hinge-relative error of plain Euler from ``y0`` on ``nodes``."""
    y = problem.y0
    worst = relative_error(y, problem.exact(nodes[0]))
    for xa, xb in zip(nodes, nodes[1:]):
        y = euler_step(problem.f, y, xb - xa)
        worst = max(worst, relative_error(y, problem.exact(xb)))
    return worst
