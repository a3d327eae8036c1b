"""Deterministic output writers: CSV trajectories, JSON summaries, SVG plots.

Every writer is atomic (temp file in the target directory, then rename), so
concurrent runs never observe partial output.  Floats are printed with 17
significant digits, which round-trips IEEE doubles exactly; identical inputs
produce byte-identical files.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
import tempfile
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

from matplotlib import rc_context
from matplotlib.figure import Figure

from .closed_form import Route
from .minkowski import CaseClass

__all__ = [
    "format_float",
    "atomic_write_bytes",
    "atomic_write_text",
    "write_trajectories_csv",
    "read_trajectories_csv",
    "write_json_summary",
    "render_svg",
]

#: Printed float precision: 17 significant digits round-trip doubles exactly.
FLOAT_FORMAT = ".17g"


def format_float(x: float) -> str:
    return format(float(x), FLOAT_FORMAT)


def atomic_write_bytes(path, data: bytes) -> None:
    """Write via a sibling temp file plus rename, so readers never see partials."""
    target = Path(path)
    fd, tmp_name = tempfile.mkstemp(dir=target.parent, prefix=f".{target.name}.")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp_name, target)
    except BaseException:
        try:
            os.unlink(tmp_name)
        except OSError:
            pass
        raise


def atomic_write_text(path, text: str) -> None:
    atomic_write_bytes(path, text.encode("utf-8"))


def write_trajectories_csv(path, trajectories) -> None:
    """One CSV with all routes: header theta,x1,x2,x3,route, LF endings."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["theta", "x1", "x2", "x3", "route"])
    for trajectory in trajectories:
        route = trajectory.route.value
        for theta, point in trajectory.samples:
            writer.writerow(
                [
                    format_float(theta),
                    format_float(point.x1),
                    format_float(point.x2),
                    format_float(point.x3),
                    route,
                ]
            )
    atomic_write_text(path, buf.getvalue())


def read_trajectories_csv(path) -> list[tuple[float, float, float, float, str]]:
    """Rows of a trajectory CSV as (theta, x1, x2, x3, route) tuples."""
    rows = []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if header != ["theta", "x1", "x2", "x3", "route"]:
            raise ValueError(f"unexpected CSV header: {header!r}")
        for row in reader:
            if len(row) != 5:
                raise ValueError(f"malformed CSV row: {row!r}")
            rows.append((float(row[0]), float(row[1]), float(row[2]), float(row[3]), row[4]))
    return rows


def write_json_summary(path, summary: dict) -> None:
    atomic_write_text(path, json.dumps(summary, indent=2) + "\n")


_ROUTE_STYLE = {
    Route.CLOSED_FORM: {"color": "#1f77b4", "lw": 1.2, "label": "closed-form"},
    Route.ODE_INTEGRATED: {"color": "#2ca02c", "lw": 0.9, "ls": "--", "label": "ode"},
}


def _axis_aligned(vec) -> bool:
    return abs(vec.x1) < 1e-12 and abs(vec.x2) < 1e-12 and vec.x3 > 0.0


def render_svg(path, scenario, trajectories, bounds=None) -> None:
    """Two-panel SVG: the (x1, x2) projection and x3 against theta.

    Continuous routes are drawn as lines, the discrete orbit as dots.  For
    elliptic scenarios whose q is the vertical axis, the exact bounds of the
    decoupled component appear as circles of radius sqrt(A**2 - 1) in the
    projection panel (the component equals x3 there, so its level sets are
    circles).  Output is deterministic: fixed hash salt, no timestamp.
    """
    fig = Figure(figsize=(11.0, 5.0))
    ax_proj, ax_comp = fig.subplots(1, 2)
    for trajectory in trajectories:
        xs = [pt.x1 for pt in trajectory.points]
        ys = [pt.x2 for pt in trajectory.points]
        zs = [pt.x3 for pt in trajectory.points]
        if trajectory.route is Route.MAP_ITERATED:
            ax_proj.plot(xs, ys, "o", ms=3.5, color="#d62728", label="map", zorder=3)
            ax_comp.plot(trajectory.thetas, zs, "o", ms=3.5, color="#d62728", zorder=3)
        else:
            style = dict(_ROUTE_STYLE[trajectory.route])
            label = style.pop("label")
            ax_proj.plot(xs, ys, label=label, **style)
            ax_comp.plot(trajectory.thetas, zs, **style)
    if (
        bounds is not None
        and scenario.params.case is CaseClass.ELLIPTIC
        and _axis_aligned(scenario.params.q)
    ):
        angles = [2.0 * math.pi * i / 256 for i in range(257)]
        for level, label in ((bounds.a1, "A1"), (bounds.a2, "A2")):
            radius = math.sqrt(max(level * level - 1.0, 0.0))
            ax_proj.plot(
                [radius * math.cos(t) for t in angles],
                [radius * math.sin(t) for t in angles],
                color="#7f7f7f",
                lw=0.8,
                ls=":",
            )
            ax_proj.annotate(label, (radius, 0.0), fontsize=8, color="#7f7f7f")
    ax_proj.set_xlabel("x1")
    ax_proj.set_ylabel("x2")
    ax_proj.set_aspect("equal", adjustable="datalim")
    ax_proj.set_title(f"{scenario.name}: projection")
    ax_proj.legend(loc="best", fontsize=8)
    ax_comp.set_xlabel("theta")
    ax_comp.set_ylabel("x3")
    ax_comp.set_title("vertical component")
    fig.suptitle(
        f"{scenario.params.case.label}, lambda = {scenario.params.lam:g}, "
        f"alpha = {scenario.alpha:g} rad"
    )
    fig.tight_layout()
    buf = io.BytesIO()
    with rc_context({"svg.hashsalt": scenario.name}):
        fig.savefig(buf, format="svg", metadata={"Date": None})
    atomic_write_bytes(path, buf.getvalue())
