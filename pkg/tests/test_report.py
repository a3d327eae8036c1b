"""Tests for the output layer: float formatting, atomic file writes, CSV
round-trips, JSON summaries, and deterministic SVG rendering."""

from __future__ import annotations

import json
import math

import pytest

from conftest import FIG1_R0, fig1_params
from su11bloch import (
    elliptic_bounds,
    integrate,
    load_bundled,
    map_orbit,
    sample_trajectory,
)
from su11bloch.report import (
    atomic_write_text,
    format_float,
    read_trajectories_csv,
    render_svg,
    write_json_summary,
    write_trajectories_csv,
)


@pytest.fixture
def small_trajectories():
    params = fig1_params()
    thetas = tuple(i * 0.05 for i in range(8))
    closed = sample_trajectory(params, FIG1_R0, thetas)
    orbit = map_orbit(params, FIG1_R0, 0.05, 7)
    ode = integrate(params, FIG1_R0, 0.35)
    return closed, orbit, ode


def test_format_float_round_trips_doubles() -> None:
    for x in (1.0 / 3.0, math.pi, 1.2320508075688772, -0.0, 5e-324):
        assert float(format_float(x)) == x


def test_atomic_write_replaces_and_leaves_no_temps(tmp_path) -> None:
    target = tmp_path / "out.txt"
    atomic_write_text(target, "first")
    atomic_write_text(target, "second")
    assert target.read_text() == "second"
    assert [p.name for p in tmp_path.iterdir()] == ["out.txt"]


def test_csv_round_trip_preserves_every_bit(tmp_path, small_trajectories) -> None:
    closed, orbit, ode = small_trajectories
    path = tmp_path / "traj.csv"
    write_trajectories_csv(path, [closed, orbit, ode])

    rows = read_trajectories_csv(path)
    assert len(rows) == len(closed.points) + len(orbit.points) + len(ode.points)
    assert rows[0][4] == "closed-form"

    originals = []
    for traj in (closed, orbit, ode):
        for theta, pt in traj.samples:
            originals.append((theta, pt.x1, pt.x2, pt.x3, traj.route.value))
    for got, want in zip(rows, originals):
        assert got == want  # exact: 17 significant digits round-trip float64


def test_csv_header_validated(tmp_path) -> None:
    bad = tmp_path / "bad.csv"
    bad.write_text("a,b,c\n1,2,3\n")
    with pytest.raises(ValueError):
        read_trajectories_csv(bad)


def test_csv_uses_lf_line_endings(tmp_path, small_trajectories) -> None:
    closed, _, _ = small_trajectories
    path = tmp_path / "traj.csv"
    write_trajectories_csv(path, [closed])
    blob = path.read_bytes()
    assert b"\r" not in blob
    assert blob.endswith(b"\n")


def test_json_summary_layout(tmp_path) -> None:
    path = tmp_path / "summary.json"
    summary = {"scenario": "fig1", "status": "ok"}
    write_json_summary(path, summary)
    text = path.read_text()
    assert text.endswith("\n")
    assert json.loads(text) == summary


def test_render_svg_deterministic(tmp_path, small_trajectories) -> None:
    closed, orbit, ode = small_trajectories
    scenario = load_bundled("fig1")
    bounds = elliptic_bounds(fig1_params(), FIG1_R0)

    first = tmp_path / "one.svg"
    second = tmp_path / "two.svg"
    render_svg(first, scenario, [closed, orbit, ode], bounds)
    render_svg(second, scenario, [closed, orbit, ode], bounds)

    blob = first.read_bytes()
    assert blob.startswith(b"<?xml")
    assert blob == second.read_bytes()


def test_render_svg_without_bounds(tmp_path) -> None:
    scenario = load_bundled("hyperbolic")
    from conftest import HYPER_R0, hyperbolic_params

    params = hyperbolic_params()
    traj = sample_trajectory(params, HYPER_R0, tuple(i * 0.01 for i in range(6)))
    target = tmp_path / "plain.svg"
    render_svg(target, scenario, [traj], None)
    assert target.stat().st_size > 0
