"""Command-line front end: scenario files in, data/plots/verification out.

``simulate`` runs all three computational routes for one scenario and writes
the requested outputs (CSV trajectories, JSON summary, SVG plot) into an
output directory.  ``verify`` runs the cross-route residual suite and prints
the JSON report.  ``list-scenarios`` shows what ships with the package.
Exit codes: 0 success, 1 validation or verification failure, 2 numerical
blow-up.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .bloch_ode import check_hyperbolic_span, integrate, stroboscopic_residual
from .closed_form import (
    elliptic_bounds,
    map_orbit,
    sample_trajectory,
    symmetry_order_check,
)
from .errors import BlowupError, DynamicsError, LowerSheetError
from .map_dynamics import verify_exact_vs_iterated
from .minkowski import CaseClass, mdot
from .report import render_svg, write_json_summary, write_trajectories_csv
from .scenario import Scenario, bundled_scenario_names, find_scenario, load_bundled
from .su11 import AxisAngle, exp_element

__all__ = ["main", "run_simulate", "run_verify", "VERIFY_TOLERANCES"]

#: Residual ceilings for `verify`; stroboscopic is per case class because
#: unbounded hyperbolic orbits accumulate integrator error faster.
VERIFY_TOLERANCES = {
    "exact_vs_iterated": 1e-9,
    "stroboscopic": {
        CaseClass.ELLIPTIC: 1e-6,
        CaseClass.PARABOLIC: 1e-6,
        CaseClass.HYPERBOLIC: 1e-5,
    },
    "symmetry": 1e-10,
    "norm_drift": 1e-8,
}


def _theta_grid(theta_end: float, n: int) -> list[float]:
    return [i * theta_end / (n - 1) for i in range(n)]


def _analyze(sc: Scenario):
    """Run all routes and residual checks; returns (trajectories, bounds, summary, failures)."""
    params, r0 = sc.params, sc.r0
    # Refuse doomed hyperbolic spans before any route runs, so the failure
    # surfaces as the dedicated blowup exit code rather than a late
    # validation error inside one of the routes.
    check_hyperbolic_span(params, sc.theta_end)
    closed = sample_trajectory(params, r0, _theta_grid(sc.theta_end, sc.n_samples))
    orbit = map_orbit(params, r0, sc.alpha, sc.k_max, sc.chi0)
    ode = integrate(params, r0, sc.theta_end, sc.ode)
    trajectories = (closed, ode, orbit)

    q_aa = AxisAngle(sc.alpha, params.q, params.case)
    p_aa = AxisAngle(sc.beta, params.p, params.case)
    r0_el = exp_element(sc.chi0, r0, params.case)
    exact_dev = verify_exact_vs_iterated(q_aa, p_aa, r0_el, sc.k_max).max_deviation
    strobo_dev = stroboscopic_residual(
        params, r0, sc.alpha, sc.k_max, sc.ode, sc.chi0
    ).max_deviation
    symmetry_dev = None
    if params.case is CaseClass.ELLIPTIC and params.lam != 0.0:
        symmetry_dev = symmetry_order_check(params, r0, n_samples=100).max_deviation
    eta = params.case.eta
    drift = max(
        abs(mdot(pt, pt) - eta) for t in trajectories for pt in t.points
    )

    bounds = None
    if params.case is CaseClass.ELLIPTIC:
        try:
            bounds = elliptic_bounds(params, r0)
        except LowerSheetError:
            bounds = None

    checks = [
        ("exact_vs_iterated", exact_dev, VERIFY_TOLERANCES["exact_vs_iterated"]),
        ("stroboscopic", strobo_dev, VERIFY_TOLERANCES["stroboscopic"][params.case]),
        ("symmetry", symmetry_dev, VERIFY_TOLERANCES["symmetry"]),
        ("norm_drift", drift, VERIFY_TOLERANCES["norm_drift"]),
    ]
    failures = [
        (name, value, tol) for name, value, tol in checks if value is not None and value > tol
    ]
    summary = {
        "scenario": sc.name,
        "class": params.case.label,
    }
    if bounds is not None:
        summary["bounds"] = bounds.to_dict()
    summary["residuals"] = {name: value for name, value, _ in checks}
    summary["status"] = "ok" if not failures else "fail"
    return trajectories, bounds, summary, failures


def run_simulate(sc: Scenario, out_dir: Path) -> int:
    out_dir.mkdir(parents=True, exist_ok=True)
    trajectories, bounds, summary, failures = _analyze(sc)
    written = []
    if "csv" in sc.outputs:
        target = out_dir / f"{sc.name}.csv"
        write_trajectories_csv(target, trajectories)
        written.append(target)
    if "json" in sc.outputs:
        target = out_dir / f"{sc.name}.json"
        write_json_summary(target, summary)
        written.append(target)
    if "svg" in sc.outputs:
        target = out_dir / f"{sc.name}.svg"
        render_svg(target, sc, trajectories, bounds)
        written.append(target)
    for target in written:
        print(target)
    print(f"status: {summary['status']}")
    if failures:
        name, value, tol = failures[0]
        print(f"FAIL {name}: {value:.6g} > {tol:.6g}", file=sys.stderr)
        return 1
    return 0


def run_verify(sc: Scenario) -> int:
    _, _, summary, failures = _analyze(sc)
    print(json.dumps(summary, indent=2))
    if failures:
        name, value, tol = failures[0]
        print(f"FAIL {name}: {value:.6g} > {tol:.6g}", file=sys.stderr)
        return 1
    return 0


def _cmd_simulate(args) -> int:
    return run_simulate(find_scenario(args.scenario), Path(args.out))


def _cmd_verify(args) -> int:
    return run_verify(find_scenario(args.scenario))


def _cmd_list(_args) -> int:
    for name in bundled_scenario_names():
        sc = load_bundled(name)
        line = (
            f"{name}: {sc.params.case.label}, lambda = {sc.params.lam:g}, "
            f"alpha = {sc.alpha:.6g} rad, K_max = {sc.k_max}"
        )
        if sc.description:
            line += f" - {sc.description}"
        print(line)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="su11bloch",
        description="Discrete-time group dynamics, closed-form orbits, and the matching precession ODE.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    simulate = sub.add_parser(
        "simulate", help="run all routes for a scenario and write csv/json/svg outputs"
    )
    simulate.add_argument("scenario", help="scenario file path or bundled scenario name")
    simulate.add_argument("--out", default=".", help="output directory (default: current)")
    simulate.set_defaults(func=_cmd_simulate)

    verify = sub.add_parser(
        "verify", help="run the cross-route residual checks and print a JSON report"
    )
    verify.add_argument("scenario", help="scenario file path or bundled scenario name")
    verify.set_defaults(func=_cmd_verify)

    lister = sub.add_parser("list-scenarios", help="list the scenarios shipped in the package")
    lister.set_defaults(func=_cmd_list)
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BlowupError as exc:
        print(f"blow-up: {exc}", file=sys.stderr)
        return 2
    except (DynamicsError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
