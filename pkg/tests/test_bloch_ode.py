"""Tests for the continuous-time route: the rotating coupling axis, the
precession right-hand side, fixed-step RK4 integration, and the stroboscopic
comparison against the discrete map."""

from __future__ import annotations

import math

import numpy as np
import pytest

from conftest import (
    FIG1_P,
    FIG1_Q,
    FIG1_R0,
    HYPER_R0,
    PARA_R0,
    euclidean_diff,
    fig1_params,
    hyperbolic_params,
    max_abs_diff,
    parabolic_params,
    random_scenario,
)
from su11bloch import (
    BlochParams,
    BlowupError,
    CaseClass,
    MVec3,
    OdeConfig,
    OdeMethod,
    Route,
    StepTooLargeError,
    adjoint_vec,
    exp_element,
    integrate,
    mcross,
    mdot,
    p_of_theta,
    rhs,
    stroboscopic_residual,
    trajectory_point,
    u_of_theta,
)

FINE = OdeConfig(step=1e-3)


# ---------------------------------------------------------------------------
# Configuration


def test_ode_config_defaults() -> None:
    cfg = OdeConfig()
    assert cfg.step == 1e-3
    assert cfg.reproject_every == 0
    assert cfg.method is OdeMethod.RK4


def test_ode_config_validation() -> None:
    with pytest.raises(StepTooLargeError):
        OdeConfig(step=0.2)
    with pytest.raises(ValueError):
        OdeConfig(step=0.0)
    with pytest.raises(ValueError):
        OdeConfig(step=-1e-3)
    with pytest.raises(ValueError):
        OdeConfig(reproject_every=-1)
    with pytest.raises(TypeError):
        OdeConfig(method="rk4")


# ---------------------------------------------------------------------------
# Rotating axis and right-hand side


def test_p_of_theta_at_zero() -> None:
    assert max_abs_diff(p_of_theta(fig1_params(), 0.0), FIG1_P) <= 1e-15


def test_p_of_theta_fixed_when_axes_coincide() -> None:
    params = BlochParams(q=FIG1_Q, p=FIG1_Q, lam=2.0, case=CaseClass.ELLIPTIC)
    for theta in (0.3, 1.0, 4.0):
        assert max_abs_diff(p_of_theta(params, theta), FIG1_Q) <= 1e-13


def test_p_of_theta_matches_matrix_conjugation() -> None:
    params = fig1_params()
    theta = 0.4
    oracle = adjoint_vec(
        exp_element(2.0 * theta, FIG1_Q, CaseClass.ELLIPTIC), FIG1_P
    )
    assert max_abs_diff(p_of_theta(params, theta), oracle) <= 1e-11


def test_p_of_theta_preserves_normalization(rng) -> None:
    for case in CaseClass:
        params, _, _ = random_scenario(rng, case)
        for theta in (0.1, 0.9, 1.7):
            moved = p_of_theta(params, theta)
            assert abs(mdot(moved, moved) - case.eta) <= 1e-11


def test_u_of_theta_composition() -> None:
    params = fig1_params()
    u0 = u_of_theta(params, 0.0)
    assert max_abs_diff(u0, FIG1_Q + 3.0 * FIG1_P) <= 1e-14
    frozen = BlochParams(q=FIG1_Q, p=FIG1_P, lam=0.0, case=CaseClass.ELLIPTIC)
    assert max_abs_diff(u_of_theta(frozen, 1.3), FIG1_Q + 0.0 * FIG1_P) <= 1e-13


def test_rhs_hand_value_at_start() -> None:
    params = fig1_params()
    got = rhs(params, 0.0, FIG1_R0)
    expected = -2.0 * mcross(FIG1_R0, FIG1_Q + 3.0 * FIG1_P)
    assert max_abs_diff(got, expected) <= 1e-14
    # Same value written out longhand from the frozen cross products.
    assert got.x1 == pytest.approx(5.242640687119285, abs=1e-14)
    assert got.x2 == pytest.approx(2.1058285412302482, abs=1e-14)
    assert got.x3 == pytest.approx(3.0, abs=1e-14)


def test_rhs_vanishes_on_equilibrium() -> None:
    frozen = BlochParams(q=FIG1_Q, p=FIG1_P, lam=0.0, case=CaseClass.ELLIPTIC)
    assert rhs(frozen, 0.7, FIG1_Q).as_tuple() == (0.0, 0.0, 0.0)


def test_rhs_orthogonal_to_state(rng) -> None:
    # The generator is a cross product, so the speed is always tangent: its
    # product with the state vanishes identically.
    for _ in range(10_000):
        case = (CaseClass.ELLIPTIC, CaseClass.PARABOLIC, CaseClass.HYPERBOLIC)[
            int(rng.integers(3))
        ]
        params, r0, _ = random_scenario(rng, case)
        theta = float(rng.uniform(0.0, 2.0))
        v = rhs(params, theta, r0)
        assert abs(mdot(v, r0)) <= 1e-12 * max(1.0, r0.enorm() * v.enorm())


def test_rhs_derivative_consistency_with_closed_form() -> None:
    # Central difference of the closed-form trajectory must match the
    # right-hand side evaluated on it.
    params = fig1_params()
    delta = 1e-5
    for theta in (0.2, 0.9, 1.6, 2.8):
        ahead = trajectory_point(params, FIG1_R0, theta + delta)
        behind = trajectory_point(params, FIG1_R0, theta - delta)
        numeric = (ahead - behind) / (2.0 * delta)
        analytic = rhs(params, theta, trajectory_point(params, FIG1_R0, theta))
        assert max_abs_diff(numeric, analytic) <= 1e-7


# ---------------------------------------------------------------------------
# Integration


def test_integrate_constant_solution_is_exact() -> None:
    frozen = BlochParams(q=FIG1_Q, p=FIG1_P, lam=0.0, case=CaseClass.ELLIPTIC)
    traj = integrate(frozen, FIG1_Q, 0.05, OdeConfig(step=1e-3))
    assert traj.route is Route.ODE_INTEGRATED
    for pt in traj.points:
        assert pt == FIG1_Q


def test_integrate_grid_and_endpoint() -> None:
    traj = integrate(fig1_params(), FIG1_R0, 0.0105, OdeConfig(step=1e-3))
    assert traj.thetas[0] == 0.0
    assert traj.thetas[1] == pytest.approx(1e-3, abs=1e-18)
    assert traj.thetas[-1] == 0.0105
    assert max_abs_diff(traj.points[0], FIG1_R0) == 0.0


def test_integrate_matches_closed_form_reference() -> None:
    params = fig1_params()
    traj = integrate(params, FIG1_R0, math.pi, FINE)
    expected = trajectory_point(params, FIG1_R0, math.pi)
    assert euclidean_diff(traj.final_point(), expected) <= 1e-8


def test_integrate_matches_closed_form_other_classes() -> None:
    para = parabolic_params()
    traj = integrate(para, PARA_R0, 1.0, FINE)
    assert euclidean_diff(traj.final_point(), trajectory_point(para, PARA_R0, 1.0)) <= 1e-8

    hyp = hyperbolic_params()
    traj = integrate(hyp, HYPER_R0, 1.0, FINE)
    assert euclidean_diff(traj.final_point(), trajectory_point(hyp, HYPER_R0, 1.0)) <= 1e-8


def test_integrate_fourth_order_convergence() -> None:
    params = fig1_params()
    target = trajectory_point(params, FIG1_R0, 1.0)
    errs = []
    for h in (4e-3, 2e-3):
        traj = integrate(params, FIG1_R0, 1.0, OdeConfig(step=h))
        errs.append(euclidean_diff(traj.final_point(), target))
    ratio = errs[0] / errs[1]
    assert 8.0 <= ratio <= 32.0


def test_integrate_norm_drift_and_reprojection() -> None:
    params = fig1_params()
    raw = integrate(params, FIG1_R0, 2.0, FINE)
    drift_raw = max(abs(mdot(pt, pt) - 1.0) for pt in raw.points)
    assert drift_raw < 1e-10

    snapped = integrate(params, FIG1_R0, 2.0, OdeConfig(step=1e-3, reproject_every=1))
    drift_snapped = max(abs(mdot(pt, pt) - 1.0) for pt in snapped.points)
    assert drift_snapped < 1e-13
    assert drift_snapped <= drift_raw


def test_integrate_validates_arguments() -> None:
    params = fig1_params()
    with pytest.raises(ValueError):
        integrate(params, FIG1_R0, 0.0, FINE)
    with pytest.raises(ValueError):
        integrate(params, FIG1_R0, -1.0, FINE)
    with pytest.raises(TypeError):
        integrate(params, FIG1_R0, 1.0, cfg="fast")


def test_integrate_hyperbolic_span_cap() -> None:
    hyp = hyperbolic_params(lam=1.0)
    with pytest.raises(BlowupError):
        integrate(hyp, HYPER_R0, 20.0, FINE)


def test_integrate_component_blowup_mid_run() -> None:
    # Just under the upfront span cap, but the state still overflows the
    # component limit while stepping.
    hyp = hyperbolic_params(lam=0.4)
    with pytest.raises(BlowupError):
        integrate(hyp, HYPER_R0, 11.5, OdeConfig(step=1e-2))


# ---------------------------------------------------------------------------
# Stroboscopic comparison with the discrete map


def test_stroboscopic_residual_elliptic() -> None:
    params = fig1_params(lam=2.0)
    alpha = math.radians(5.0)
    report = stroboscopic_residual(params, FIG1_R0, alpha, 18, FINE)
    assert report.k_values == tuple(range(1, 19))
    assert report.deviations[0] < 1e-8
    assert report.max_deviation < 1e-6


def test_stroboscopic_residual_parabolic() -> None:
    report = stroboscopic_residual(parabolic_params(), PARA_R0, 0.02, 25, FINE)
    assert report.max_deviation < 1e-6


def test_stroboscopic_residual_hyperbolic() -> None:
    report = stroboscopic_residual(hyperbolic_params(), HYPER_R0, 0.01, 25, FINE)
    assert report.max_deviation < 1e-5


def test_strobo_report_validation() -> None:
    from su11bloch import StroboReport

    with pytest.raises(ValueError):
        StroboReport(k_values=(0, 1), deviations=(0.0,))
