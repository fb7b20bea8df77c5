import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stepgec.bootstrap import bootstrap
from stepgec.harness import display_round
from stepgec.heuristics import (STABILITY_CONSTANT, HeuristicReport, stability_cap,
                                suggest_initial_stepsize, suggest_local_tolerance)
from stepgec.lagrange import LagrangeField
from stepgec.problems import builtin_problems, constant_slope_problem, get_problem


def _start(p):
    fld = LagrangeField.at_start(p)
    return fld, bootstrap(fld, p.x0 + 1e-3)


@pytest.mark.parametrize("g_mu, expected", [
    (1000.0, 1.3764e-3),
    (999.00, 1.3764 / 999.0),
    (0.0, math.inf),
])
def test_stability_cap(g_mu, expected):
    assert stability_cap(g_mu) == pytest.approx(expected, rel=1e-15)


def test_stability_cap_displays_as_one_point_four():
    assert stability_cap(999.00) == pytest.approx(1.3778e-3, abs=1e-7)
    assert display_round(stability_cap(999.00)) == 1.4e-3


def test_default_wins_when_pre_pass_is_looser():
    fld, boot = _start(get_problem(1))
    eps_rho, dmm = suggest_local_tolerance(fld, boot, 1e-6, 1e-8)
    assert eps_rho == 1e-8
    assert dmm / get_problem(1).span > 1e-8


def test_first_problem_pre_pass_regression():
    # pinned output of the coarse RK4 pre-pass at eps_g = 1e-6
    fld, boot = _start(get_problem(1))
    eps_rho, dmm = suggest_local_tolerance(fld, boot, 1e-6, 1.0)
    assert dmm == pytest.approx(1.8993466e-4, rel=1e-6)
    assert eps_rho == pytest.approx(dmm / 5.0)


def test_pre_pass_without_usable_nodes_falls_back():
    fld, boot = _start(constant_slope_problem())
    eps_rho, dmm = suggest_local_tolerance(fld, boot, 1e-6, 1e-8)
    assert eps_rho == 1e-8 and math.isnan(dmm)


@settings(max_examples=15, deadline=None)
@given(st.floats(1e-10, 1e-2), st.floats(1.5, 100.0))
def test_local_tolerance_monotone_in_global_tolerance(eps_g, factor):
    fld, boot = _start(get_problem(6))
    lo, _ = suggest_local_tolerance(fld, boot, eps_g, 1.0)
    hi, _ = suggest_local_tolerance(fld, boot, eps_g * factor, 1.0)
    assert lo <= hi


@pytest.mark.parametrize("p", builtin_problems(), ids=lambda p: p.name)
def test_initial_stepsize_never_from_default(p):
    fld, boot = _start(p)
    h2, source = suggest_initial_stepsize(fld, boot)
    assert source in ("stability", "g_ttt")
    assert h2 <= 0.1
    assert h2 <= stability_cap(abs(fld.eval_g_mu(boot.x1, boot.mu1))) * (1 + 1e-15)
    assert display_round(h2) == 1.4e-3


def test_zero_field_uses_default_stepsize():
    fld, boot = _start(constant_slope_problem())
    assert suggest_initial_stepsize(fld, boot, h2_default=0.1) == (0.1, "default")


def test_small_default_binds():
    fld, boot = _start(get_problem(2))
    assert suggest_initial_stepsize(fld, boot, h2_default=1e-4) == (1e-4, "default")


def test_report_serialises():
    r = HeuristicReport(1e-8, 2e-4, 1.4e-3, "stability")
    assert r.to_dict() == {"eps_rho": 1e-8, "delta_mu_m": 2e-4, "h2": 1.4e-3,
                           "h2_source": "stability"}


def test_stability_constant_value():
    assert STABILITY_CONSTANT == 1.3764
