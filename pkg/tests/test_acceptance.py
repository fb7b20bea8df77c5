"""Acceptance suite: one test per criterion, each at its stated tolerance.

Run with ``pytest tests/test_acceptance.py`` or ``python3 tests/test_acceptance.py``;
either way a ``CRITERION n: PASS/FAIL`` line is printed per criterion.
"""

import math
import sys
import time
from functools import lru_cache

import pytest

from stepgec.harness import (REBOOT_EPS_G, RunSpec, display_round,
                             run_reboot_experiment, run_single, run_table9)
from stepgec.rk import (DP853, TripleState, dp853_sparsity_check, dp853_triple_step,
                        euler_step, integrate_fixed, order_condition_residuals,
                        rk4_step, rk7_step)
from stepgec.heuristics import STABILITY_CONSTANT

PROBLEMS = range(1, 7)
CONFIGS = [(1e-2, "ratio100"), (1e-4, "ratio100"), (1e-6, "ratio100"),
           (1e-8, "ratio100"), (1e-2, "ratio10"), (1e-6, "ratio10")]
EXTRA_CONFIG = (1e-10, "ratio100")

# published node counts per configuration, problems #1..#6
REFERENCE_N = {
    (1e-2, "ratio100"): (71, 91, 221, 221, 46, 121),
    (1e-4, "ratio100"): (88, 91, 221, 223, 63, 121),
    (1e-6, "ratio100"): (327, 108, 221, 311, 214, 276),
    (1e-8, "ratio100"): (1474, 330, 695, 951, 949, 1233),
    (1e-10, "ratio100"): (6776, 1460, 3139, 4361, 4354, 5676),
    (1e-2, "ratio10"): (71, 91, 221, 221, 46, 121),
    (1e-6, "ratio10"): (162, 92, 221, 243, 110, 150),
}

# printed h2 values, None where the printed value is not 1.4e-3
REFERENCE_H2_SHOWN = {
    (1e-2, "ratio100"): (1.4e-3,) * 6,
    (1e-4, "ratio100"): (1.4e-3,) * 6,
    (1e-6, "ratio100"): (None, 1.4e-3, 1.4e-3, None, 1.4e-3, None),
}

# (mu_1, g_mu) at x0 + 1e-3; the sixth mu_1 is not reproducible and is skipped
REFERENCE_START = {
    1: (2.0010, -999.00),
    2: (0.1000, -999.85),
    3: (1.0001, -999.76),
    4: (1.0005, -999.99),
    5: (-0.9997, -998.98),
    6: (None, -1001.00),
}

STABILITY_TARGET, STABILITY_TOL = 1.3764, 5e-4


@lru_cache(maxsize=None)
def run(k, eps_g, policy):
    return run_single(RunSpec(k, eps_g, policy))


def all_runs(configs=CONFIGS):
    for eps_g, policy in configs:
        for k in PROBLEMS:
            res, row = run(k, eps_g, policy)
            yield (eps_g, policy), k, res, row


# ------------------------------------------------------------------------ 1


def test_criterion_1_tolerance_guarantee(criterion):
    bad = [(cfg, k, row.max_delta) for cfg, k, _, row in all_runs()
           if not (row.error is None and row.max_delta <= cfg[0])]
    worst = max(row.max_delta / cfg[0] for cfg, _, _, row in all_runs())

    strict_rows = [run(k, *EXTRA_CONFIG)[1] for k in PROBLEMS]
    eps = sys.float_info.epsilon
    extra_bad = []
    for k, row in zip(PROBLEMS, strict_rows):
        p = RunSpec(k, *EXTRA_CONFIG).problem()
        scale = max(1.0, abs(p.y0), abs(p.exact(p.xN)))
        if not (row.max_delta <= EXTRA_CONFIG[0] or row.max_delta <= 50 * eps * scale):
            extra_bad.append((k, row.max_delta))
    extra = ", ".join(f"#{k} {r.max_delta:.1e}" for k, r in zip(PROBLEMS, strict_rows))

    ok = not bad and not extra_bad
    criterion(1, ok, f"36 runs, worst max_delta/eps_g = {worst:.4f}; "
                     f"eps_g=1e-10 reported: {extra}")
    assert not bad, bad
    assert not extra_bad, extra_bad


# ------------------------------------------------------------------------ 2


def test_criterion_2_start_values(criterion):
    t0 = time.perf_counter()
    rows = run_table9()
    elapsed = time.perf_counter() - t0
    problems = []
    for r in rows:
        mu1, g_mu = REFERENCE_START[r.problem_id]
        if mu1 is not None and abs(r.mu1 - mu1) > 1e-4:
            problems.append(f"mu1 #{r.problem_id} = {r.mu1:.5f}")
        if abs(r.g_mu - g_mu) > 0.01 * abs(g_mu):
            problems.append(f"g_mu #{r.problem_id} = {r.g_mu:.2f}")
    ok = not problems and elapsed < 1.0
    criterion(2, ok, f"{elapsed:.3f} s; sixth mu1 = {rows[5].mu1:.4f} (not checked)"
                     + (f"; mismatches: {problems}" if problems else ""))
    assert not problems
    assert elapsed < 1.0


# ------------------------------------------------------------------------ 3


def _inside(z):
    s = dp853_triple_step(lambda x, m: -m, TripleState.start(0.0, 1.0), z)
    return all(0.0 < v < 1.0 for v in (s.mu_L, s.mu_H, s.mu_V))


def stability_interval_width(z_max=10.0, grid=1e-3):
    """Largest z such that every ``h = z' <= z`` keeps all three outputs in (0, 1)."""
    z = grid
    while z < z_max and _inside(z):
        z += grid
    lo, hi = z - grid, z
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        lo, hi = (mid, hi) if _inside(mid) else (lo, mid)
    return lo


def test_criterion_3_stability_constant(criterion):
    width = stability_interval_width()
    ok = abs(width - STABILITY_TARGET) <= STABILITY_TOL
    criterion(3, ok, f"scan gives {width:.4f}, expected {STABILITY_TARGET} +/- "
                     f"{STABILITY_TOL}; the solver keeps {STABILITY_CONSTANT} as its cap "
                     "(see decisions ledger)")
    assert ok, width


# ------------------------------------------------------------------------ 4


def test_criterion_4_initial_stepsize(criterion):
    checked, bad = 0, []
    for cfg, shown in REFERENCE_H2_SHOWN.items():
        for k, value in zip(PROBLEMS, shown):
            if value is None:
                continue
            checked += 1
            res, row = run(k, *cfg)
            if display_round(row.h2) != value or row.h2_source not in ("stability", "g_ttt"):
                bad.append((cfg, k, row.h2, row.h2_source))
    criterion(4, not bad, f"{checked} configurations round to 1.4e-3 with a "
                          "stability or g_ttt source" if not bad else f"mismatches {bad}")
    assert not bad


# ------------------------------------------------------------------------ 5


def test_criterion_5_newton_economy(criterion):
    its = [r.iterations for r in run_table9()]
    ok = max(its) <= 3
    criterion(5, ok, f"iterations {its}")
    assert ok


# ------------------------------------------------------------------------ 6


def _reboot_structure_errors(res, eps_rb):
    errs = []
    xs = res.nodes
    for x_rb, x_bad in zip(res.reboot_nodes, res.breach_nodes):
        i = xs.index(x_rb)
        node, nxt = res.trace[i], res.trace[i + 1]
        if node.kind != "anchor" or abs(node.Delta_yT) > eps_rb:
            errs.append(f"node {x_rb} not a valid anchor")
        if nxt.kind != "bootstrap" or nxt.anchor_x != x_rb:
            errs.append(f"node after {x_rb} is not its bootstrap")
        # the breached node lay exactly one node ahead and was discarded
        if not (x_bad > x_rb) or x_bad in xs:
            errs.append(f"breach at {x_bad} is not one discarded node after {x_rb}")
    return errs


@pytest.mark.parametrize("eps_g", [REBOOT_EPS_G, 1e-6], ids=["harness-default", "strict"])
def test_criterion_6_reboots(criterion, eps_g):
    quiet = run_reboot_experiment(1e-7, eps_g=eps_g)
    busy = run_reboot_experiment(1e-10, eps_g=eps_g)
    errs = _reboot_structure_errors(busy, 1e-10)
    ok = quiet.reboots == 0 and 5 <= busy.reboots <= 15 and not errs
    detail = (f"eps_g={eps_g:g}: eps_rb=1e-7 -> {quiet.reboots} reboots, "
              f"eps_rb=1e-10 -> {busy.reboots} reboots, each one node back")
    if eps_g == REBOOT_EPS_G:
        criterion(6, ok, detail if not errs else f"{detail}; {errs[:3]}")
    assert quiet.reboots == 0
    assert 5 <= busy.reboots <= 15
    assert not errs


# ------------------------------------------------------------------------ 7


def test_criterion_7_counter_trends(criterion):
    problems = []
    for k in PROBLEMS:
        qs = [run(k, e, "ratio100")[1].Q for e in (1e-2, 1e-4, 1e-6)]
        if qs != sorted(qs):
            problems.append(f"Q not monotone for #{k}: {qs}")
        row = run(k, 1e-2, "ratio100")[1]
        if row.Q > 20 or row.P or row.S:
            problems.append(f"#{k} at 1e-2: Q={row.Q} P={row.P} S={row.S}")
    worst = 1.0
    for cfg, ref in REFERENCE_N.items():
        for k, n_ref in zip(PROBLEMS, ref):
            n = run(k, *cfg)[1].N
            ratio = max(n / n_ref, n_ref / n)
            worst = max(worst, ratio)
            if ratio > 3.0:
                problems.append(f"N #{k} {cfg}: {n} vs {n_ref}")
    criterion(7, not problems, f"Q trends hold, worst N ratio {worst:.3f}"
              if not problems else "; ".join(problems))
    assert not problems


# ------------------------------------------------------------------------ 8


def test_criterion_8_baseline_dominance(criterion):
    bad, ties = [], []
    for cfg, k, _, row in all_runs():
        if row.max_delta > row.max_delta_E:
            bad.append((cfg, k))
        elif row.max_delta == row.max_delta_E:
            ties.append((cfg, k))
            if row.Q or row.P or row.S:
                bad.append((cfg, k))
    tie_text = ", ".join(f"#{k} at {cfg[0]:g}" for cfg, k in ties) or "none"
    criterion(8, not bad, f"Euler baseline never better; ties without control: {tie_text}"
              if not bad else f"violations {bad}")
    assert not bad


# ------------------------------------------------------------------------ 9


def _orders(step, ns):
    errs = [abs(integrate_fixed(step, lambda x, y: y, 0.0, 1.0, 1.0, n) - math.e)
            for n in ns]
    return [math.log2(a / b) for a, b in zip(errs, errs[1:])]


def _dp853_v_orders(ns=(1, 2, 4)):
    errs = []
    for n in ns:
        s = TripleState.start(0.0, 1.0)
        for _ in range(n):
            s = dp853_triple_step(lambda x, y: y, s, 1.0 / n)
        errs.append(abs(s.mu_V - math.e))
    return [math.log2(a / b) for a, b in zip(errs, errs[1:])]


def test_criterion_9_integrator_orders(criterion):
    euler = _orders(lambda g, x, y, h: euler_step(lambda u: u, y, h), (64, 128, 256, 512))
    rk4 = _orders(rk4_step, (8, 16, 32, 64))
    rk7 = _orders(rk7_step, (2, 4, 8))
    v = _dp853_v_orders()
    checks = {
        "euler": all(0.9 <= o <= 1.1 for o in euler),
        "rk4": all(3.7 <= o <= 4.3 for o in rk4),
        "rk7": all(o >= 6.5 for o in rk7),
        "dp853-V": all(o >= 7.5 for o in v),
    }
    for label in ("L", "H", "V"):
        res = order_condition_residuals(DP853.a, DP853.weights[label], DP853.orders[label])
        checks[f"conditions-{label}"] = max(abs(r) for _, r in res) < 1e-12
    checks["sparsity"] = dp853_sparsity_check(DP853)
    ok = all(checks.values())
    criterion(9, ok, f"orders euler {min(euler):.2f}, rk4 {min(rk4):.2f}, rk7 {min(rk7):.2f}, "
                     f"dp853-V {min(v):.2f}; order conditions and sparsity "
                     f"{'hold' if ok else [k for k, c in checks.items() if not c]}")
    assert ok, checks


# ----------------------------------------------------------------------- 10


def test_criterion_10_quench_audit(criterion):
    audited, bad = 0, []
    for cfg, k, res, _ in all_runs():
        for d in res.trace:
            if not d.quenched:
                continue
            audited += 1
            if d.true_rel_err is None or d.true_rel_err > max(cfg[0], abs(d.Delta_yT)):
                bad.append((cfg, k, d.x, d.true_rel_err))
    criterion(10, not bad, f"{audited} quenched nodes audited" if not bad
              else f"{len(bad)} of {audited} quenched nodes violate the bound")
    assert not bad, bad[:5]


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
