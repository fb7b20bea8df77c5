"""Benchmark runs: result tables, error-curve data, reboot study, start values.

Every run is described by a :class:`RunSpec` and produces a
:class:`~stepgec.solver.SolveResult` plus a display-ready :class:`TableRow`.
Traces are written as CSV (one row per node) and summaries as JSON.
"""

from __future__ import annotations

import csv
import json
import logging
import math
from dataclasses import asdict, dataclass, fields
from pathlib import Path
from typing import Iterable, Optional, Union

from .bootstrap import bootstrap
from .lagrange import LagrangeField
from .problems import ScalarAutonomousProblem, builtin_problems, get_problem
from .solver import (SolveResult, SolverConfig, SolverError, StepDiagnostics,
                     baseline_euler_max_error, solve)

__all__ = [
    "EXIT_OK",
    "EXIT_TOLERANCE",
    "EXIT_ABORT",
    "RunSpec",
    "TableRow",
    "Table9Row",
    "resolve_eps_rho",
    "resolve_eps_rb",
    "display_round",
    "run_single",
    "run_table",
    "run_reboot_experiment",
    "run_table9",
    "emit_error_curves",
    "write_trace",
    "read_trace",
    "counters_from_trace",
    "write_summary",
    "write_table",
    "exit_code",
    "REBOOT_EPS_G",
]

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_TOLERANCE = 2
EXIT_ABORT = 3

RhoPolicy = Union[str, float]
RebootPolicy = Union[str, float]

# tolerance used for the [0, 50] reboot study on problem #3
REBOOT_EPS_G = 1e-4
REBOOT_INTERVAL = (0.0, 50.0)


def resolve_eps_rho(eps_g: float, policy: RhoPolicy) -> float:
    """Default local tolerance for a policy.

    ``"ratio100"`` and ``"ratio10"`` divide ``eps_g``; a number is used as
    given.

    >>> resolve_eps_rho(1e-6, "ratio10")
    1e-07
    """
    if isinstance(policy, str):
        key = policy.strip().lower()
        if key == "ratio100":
            return eps_g / 100.0
        if key == "ratio10":
            return eps_g / 10.0
        try:
            return float(key)
        except ValueError:
            raise ValueError(f"unknown eps_rho policy {policy!r}") from None
    value = float(policy)
    if not value > 0:
        raise ValueError("explicit eps_rho must be positive")
    return value


def resolve_eps_rb(eps_g: float, policy: RebootPolicy) -> float:
    """Reboot tolerance for a policy.

    ``"off"`` (or ``"inf"``) disables reboots, ``"auto"`` is ``eps_g/1000``,
    and a number is used as given.
    """
    if isinstance(policy, str):
        key = policy.strip().lower()
        if key in ("off", "inf", "none"):
            return math.inf
        if key == "auto":
            return eps_g / 1000.0
        try:
            return float(key)
        except ValueError:
            raise ValueError(f"unknown eps_rb policy {policy!r}") from None
    return float(policy)


def display_round(value: float) -> float:
    """Round to one decimal in the mantissa, e.g. ``1.3778e-3 -> 1.4e-3``."""
    if not math.isfinite(value) or value == 0.0:
        return value
    return float(f"{value:.1e}")


@dataclass(frozen=True)
class RunSpec:
    """One benchmark run.

    Tables are reproduced without reboots, so ``eps_rb`` defaults to
    ``"off"``; use ``"auto"`` for ``eps_g/1000``.
    """

    problem_id: int
    eps_g: float
    eps_rho_policy: RhoPolicy = "ratio100"
    eps_rb: RebootPolicy = "off"
    interval_override: Optional[tuple[float, float]] = None
    trace_path: Optional[str] = None
    summary_path: Optional[str] = None

    def problem(self) -> ScalarAutonomousProblem:
        p = get_problem(self.problem_id)
        if self.interval_override is not None:
            p = p.with_interval(*self.interval_override)
        return p

    def config(self) -> SolverConfig:
        return SolverConfig(
            eps_g=self.eps_g,
            eps_rho_default=resolve_eps_rho(self.eps_g, self.eps_rho_policy),
            eps_rb=resolve_eps_rb(self.eps_g, self.eps_rb))

    def to_dict(self) -> dict:
        d = asdict(self)
        d["interval_override"] = (list(self.interval_override)
                                  if self.interval_override else None)
        return d


@dataclass
class TableRow:
    problem_id: int
    eps_g: float
    eps_rho: float
    max_delta: Optional[float]
    N: int
    Q: int
    P: int
    S: int
    star: int
    h2: float
    max_delta_E: Optional[float]
    h2_source: str = ""
    reboots: int = 0
    error: Optional[str] = None

    @property
    def h2_display(self) -> float:
        return display_round(self.h2)

    @property
    def ok(self) -> bool:
        """Run finished and met the tolerance."""
        return (self.error is None and self.max_delta is not None
                and self.max_delta <= self.eps_g)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["h2_display"] = self.h2_display
        d["ok"] = self.ok
        return d

    def format(self) -> str:
        if self.error is not None:
            return f"#{self.problem_id}  FAILED: {self.error}"
        return (f"#{self.problem_id}  {self.max_delta:8.1e}  {self.N:6d} {self.Q:6d} "
                f"{self.P:6d} {self.S:6d} {self.star:3d}  {self.h2_display:7.1e}  "
                f"{self.max_delta_E:8.1e}")


TABLE_HEADER = "#   max_delta       N      Q      P      S   *       h2  max_dE"


def _row_from_result(spec: RunSpec, problem: ScalarAutonomousProblem,
                     res: SolveResult) -> TableRow:
    base = baseline_euler_max_error(problem, res.nodes)
    first = res.heuristics[0] if res.heuristics else None
    return TableRow(
        problem_id=spec.problem_id, eps_g=spec.eps_g,
        eps_rho=first.eps_rho if first else math.nan,
        max_delta=res.max_rel_error, N=res.N, Q=res.Q, P=res.P, S=res.S,
        star=res.star, h2=res.h2, max_delta_E=base,
        h2_source=first.h2_source if first else "", reboots=res.reboots)


def run_single(spec: RunSpec) -> tuple[SolveResult, TableRow]:
    """Solve one configuration and tabulate it.

    On a solver abort the partial trace is still written when a trace path
    was given, and the :class:`SolverError` propagates.
    """
    problem = spec.problem()
    try:
        res = solve(problem, spec.config())
    except SolverError as exc:
        if spec.trace_path and exc.partial is not None:
            write_trace(exc.partial, spec.trace_path)
        raise
    row = _row_from_result(spec, problem, res)
    if spec.trace_path:
        write_trace(res, spec.trace_path)
    if spec.summary_path:
        write_summary(spec, res, row, spec.summary_path)
    return res, row


def run_table(eps_g: float, policy: RhoPolicy = "ratio100",
              eps_rb: RebootPolicy = "off") -> list[TableRow]:
    """One row per builtin problem; failures are reported in the row."""
    rows = []
    for k in range(1, len(builtin_problems()) + 1):
        spec = RunSpec(k, eps_g, policy, eps_rb)
        try:
            rows.append(run_single(spec)[1])
        except SolverError as exc:
            log.warning("problem #%d aborted: %s", k, exc)
            rows.append(TableRow(k, eps_g, resolve_eps_rho(eps_g, policy), None,
                                 0, 0, 0, 0, 0, math.nan, None, error=str(exc)))
    return rows


def run_reboot_experiment(eps_rb: float, eps_g: float = REBOOT_EPS_G,
                          policy: RhoPolicy = "ratio100") -> SolveResult:
    """Problem #3 on ``[0, 50]`` with the given reboot tolerance."""
    spec = RunSpec(3, eps_g, policy, eps_rb, interval_override=REBOOT_INTERVAL)
    return solve(spec.problem(), spec.config())


@dataclass(frozen=True)
class Table9Row:
    problem_id: int
    y0: float
    mu1: float
    g_mu: float
    iterations: int


def run_table9(x_mu_offset: float = 1e-3) -> list[Table9Row]:
    """Starting value ``mu_1`` and ``g_mu(x_1, mu_1)`` for each problem."""
    rows = []
    for k, p in enumerate(builtin_problems(), start=1):
        fld = LagrangeField.at_start(p)
        b = bootstrap(fld, p.x0 + x_mu_offset)
        rows.append(Table9Row(k, p.y0, b.mu1, fld.eval_g_mu(b.x1, b.mu1), b.iterations))
    return rows


# ---------------------------------------------------------------- file output

_TRACE_FIELDS = [f.name for f in fields(StepDiagnostics)]
_BOOL_FIELDS = {"quenched", "lec_primary", "lec_secondary", "stability_capped"}


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_trace(res: SolveResult, path) -> None:
    """CSV trace, one row per node, floats written with full precision."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(_TRACE_FIELDS)
        for d in res.trace:
            w.writerow([_cell(getattr(d, name)) for name in _TRACE_FIELDS])


def read_trace(path) -> list[StepDiagnostics]:
    out = []
    with open(path, newline="") as fh:
        for rec in csv.DictReader(fh):
            kw = {}
            for name in _TRACE_FIELDS:
                raw = rec[name]
                if name in _BOOL_FIELDS:
                    kw[name] = raw == "1"
                elif name == "kind":
                    kw[name] = raw
                elif name == "true_rel_err":
                    kw[name] = float(raw) if raw else None
                else:
                    kw[name] = float(raw)
            out.append(StepDiagnostics(**kw))
    return out


def counters_from_trace(trace: Iterable[StepDiagnostics]) -> dict:
    """``N, Q, P, S, star`` recomputed from node flags."""
    c = {"N": 0, "Q": 0, "P": 0, "S": 0, "star": 0}
    for d in trace:
        c["N"] += 1
        c["Q"] += d.quenched
        c["P"] += d.lec_primary
        c["S"] += d.lec_secondary
        c["star"] += d.stability_capped
    return c


def write_summary(spec: RunSpec, res: SolveResult, row: TableRow, path) -> None:
    doc = {"spec": spec.to_dict(), "row": row.to_dict(), **res.summary()}
    Path(path).write_text(json.dumps(doc, indent=2, allow_nan=True) + "\n")


def write_table(rows: list[TableRow], path, **meta) -> None:
    doc = {**meta, "rows": [r.to_dict() for r in rows]}
    Path(path).write_text(json.dumps(doc, indent=2, allow_nan=True) + "\n")


def emit_error_curves(result: SolveResult, path) -> None:
    """Per-node error data for plotting.

    The first line is a metadata comment carrying ``eps_g``; the columns are
    ``x, abs_rel_err_estimate, abs_DeltaYT, true_rel_err, quenched``.
    """
    with open(path, "w", newline="") as fh:
        fh.write(f"# eps_g={result.config.eps_g!r} problem={result.problem_name}\n")
        w = csv.writer(fh)
        w.writerow(["x", "abs_rel_err_estimate", "abs_DeltaYT",
                    "true_rel_err", "quenched"])
        for d in result.trace:
            w.writerow([repr(d.x), repr(abs(d.Delta_y_rel)), repr(abs(d.Delta_yT)),
                        _cell(d.true_rel_err), int(d.quenched)])


def exit_code(rows: Iterable[TableRow]) -> int:
    """0 when every run met its tolerance, 3 on any abort, 2 otherwise."""
    rows = list(rows)
    if any(r.error is not None for r in rows):
        return EXIT_ABORT
    if all(r.ok for r in rows):
        return EXIT_OK
    return EXIT_TOLERANCE
