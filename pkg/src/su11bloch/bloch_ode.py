"""The continuous precession equation matching the discrete orbit, plus its integrator.

The discrete orbit interpolates the flow of

    dr/dtheta = -2 * mcross(r, u(theta)),
    u(theta)  = q + lam * p(theta),
    p(theta)  = the axis p carried by the rotation of angle 2*theta about q,

an explicitly time-dependent precession equation whose right-hand side is
everywhere mdot-orthogonal to r, so the flow stays on the invariant surface.
A fixed-step classical Runge-Kutta integrator realizes the flow numerically;
:func:`stroboscopic_residual` measures how closely the flow sampled at
theta = K*alpha tracks the discrete orbit vectors, which is the central
continuous-discrete correspondence this package exists to check.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

from .closed_form import BlochParams, Route, Trajectory, _require_class, map_orbit
from .errors import BlowupError, StepTooLargeError
from .minkowski import MVec3, CaseClass, mcross, reproject
from .su11 import adjoint_closed_form

__all__ = [
    "OdeMethod",
    "OdeConfig",
    "StroboReport",
    "MAX_STEP",
    "COMPONENT_LIMIT",
    "HYPERBOLIC_GROWTH_LIMIT",
    "p_of_theta",
    "u_of_theta",
    "rhs",
    "integrate",
    "check_hyperbolic_span",
    "stroboscopic_residual",
]

#: Stability ceiling for the integrator step size.
MAX_STEP = 0.1

#: Largest component magnitude the integrator will carry before raising.
COMPONENT_LIMIT = 1e12

#: Hyperbolic runs are refused up front once their growth factor would pass this.
HYPERBOLIC_GROWTH_LIMIT = 1e10


class OdeMethod(enum.Enum):
    """Available integration schemes (fixed-step classical Runge-Kutta only)."""

    RK4 = "rk4"


@dataclass(frozen=True)
class OdeConfig:
    """Integrator settings: step size, optional re-projection cadence, scheme.

    ``reproject_every = 0`` disables re-projection; any positive value
    projects the state back onto its surface after every that-many steps.
    """

    step: float = 1e-3
    reproject_every: int = 0
    method: OdeMethod = OdeMethod.RK4

    def __post_init__(self) -> None:
        if not isinstance(self.step, (int, float)) or isinstance(self.step, bool):
            raise TypeError(f"step must be a real number, got {self.step!r}")
        if not math.isfinite(self.step) or self.step <= 0.0:
            raise ValueError(f"step must be positive and finite, got {self.step!r}")
        if self.step > MAX_STEP:
            raise StepTooLargeError(
                f"step {self.step!r} exceeds the stability ceiling {MAX_STEP}"
            )
        object.__setattr__(self, "step", float(self.step))
        if (
            not isinstance(self.reproject_every, int)
            or isinstance(self.reproject_every, bool)
            or self.reproject_every < 0
        ):
            raise ValueError(
                f"reproject_every must be a nonnegative int, got {self.reproject_every!r}"
            )
        if not isinstance(self.method, OdeMethod):
            raise TypeError(f"method must be an OdeMethod, got {self.method!r}")


def p_of_theta(params: BlochParams, theta: float) -> MVec3:
    """The drive axis p carried around q: rotation angle 2*theta about q.

    Matrix picture: conjugating the embedded p by the group exponential at
    angle 2*theta about q.  Preserves mdot(p, p).
    """
    return adjoint_closed_form(2.0 * theta, params.q, params.p, params.case)


def u_of_theta(params: BlochParams, theta: float) -> MVec3:
    """Instantaneous precession field u(theta) = q + lam * p(theta)."""
    return params.q + params.lam * p_of_theta(params, theta)


def rhs(params: BlochParams, theta: float, r: MVec3) -> MVec3:
    """Right-hand side -2 * mcross(r, u(theta)); mdot-orthogonal to r."""
    return -2.0 * mcross(r, u_of_theta(params, theta))


def check_hyperbolic_span(params: BlochParams, theta_end: float) -> None:
    """Refuse hyperbolic runs whose growth factor would dwarf double precision.

    Unbounded one-sheet orbits grow like cosh(2*theta*max(1, |lam|)); raising
    up front turns a doomed run into an immediate, clearly-labeled failure.
    No-op for the other classes.
    """
    if params.case is not CaseClass.HYPERBOLIC:
        return
    rate = 2.0 * theta_end * max(1.0, abs(params.lam))
    if rate >= math.acosh(HYPERBOLIC_GROWTH_LIMIT):
        raise BlowupError(
            f"hyperbolic run to theta = {theta_end:.6g} has growth factor "
            f"cosh({rate:.6g}) >= {HYPERBOLIC_GROWTH_LIMIT:.0e}"
        )


def _rk4_step(params: BlochParams, theta: float, r: MVec3, h: float) -> MVec3:
    k1 = rhs(params, theta, r)
    k2 = rhs(params, theta + 0.5 * h, r + (0.5 * h) * k1)
    k3 = rhs(params, theta + 0.5 * h, r + (0.5 * h) * k2)
    k4 = rhs(params, theta + h, r + h * k3)
    return r + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def _integrate_span(
    params: BlochParams,
    r: MVec3,
    theta_start: float,
    theta_end: float,
    cfg: OdeConfig,
    record: list[tuple[float, MVec3]] | None = None,
) -> MVec3:
    """March r from theta_start to theta_end on a fixed grid of cfg.step.

    The final step is shortened to land exactly on theta_end.  When
    ``record`` is given, every step boundary (theta, r) is appended to it.
    """
    span = theta_end - theta_start
    h = cfg.step
    n_full = int(span // h)
    remainder = span - n_full * h
    eps = 1e-12 * max(1.0, abs(theta_end))
    sizes = [h] * n_full
    if remainder > eps:
        sizes.append(remainder)
    elif n_full > 0:
        # Land exactly on theta_end by stretching the last full step by the
        # sub-eps remainder instead of adding a degenerate extra step.
        sizes[-1] += remainder
    steps_done = 0
    theta = theta_start
    for size in sizes:
        r = _rk4_step(params, theta, r, size)
        steps_done += 1
        theta = theta_start + steps_done * h if steps_done <= n_full else theta_end
        if steps_done == len(sizes):
            theta = theta_end
        if max(abs(r.x1), abs(r.x2), abs(r.x3)) > COMPONENT_LIMIT:
            raise BlowupError(
                f"integrator state at theta = {theta:.6g} exceeds {COMPONENT_LIMIT:.0e}"
            )
        if cfg.reproject_every > 0 and steps_done % cfg.reproject_every == 0:
            r = reproject(r, params.case)
        if record is not None:
            record.append((theta, r))
    return r


def integrate(
    params: BlochParams, r0: MVec3, theta_end: float, cfg: OdeConfig | None = None
) -> Trajectory:
    """Fixed-step integration from theta = 0 to theta_end, sampled at every step.

    Raises BlowupError either up front (hyperbolic runs whose growth factor
    is hopeless) or during the run (any component passing COMPONENT_LIMIT);
    the global error against the exact trajectory is fourth order in the
    step size.
    """
    if cfg is None:
        cfg = OdeConfig()
    if not isinstance(cfg, OdeConfig):
        raise TypeError(f"cfg must be an OdeConfig, got {cfg!r}")
    if (
        not isinstance(theta_end, (int, float))
        or isinstance(theta_end, bool)
        or not math.isfinite(theta_end)
        or theta_end <= 0.0
    ):
        raise ValueError(f"theta_end must be positive and finite, got {theta_end!r}")
    _require_class(params, r0)
    theta_end = float(theta_end)
    check_hyperbolic_span(params, theta_end)
    record: list[tuple[float, MVec3]] = [(0.0, r0)]
    _integrate_span(params, r0, 0.0, theta_end, cfg, record)
    return Trajectory(
        params=params,
        r0=r0,
        route=Route.ODE_INTEGRATED,
        thetas=tuple(t for t, _ in record),
        points=tuple(r for _, r in record),
    )


@dataclass(frozen=True)
class StroboReport:
    """Per-K Euclidean distance between the ODE flow and the discrete orbit."""

    k_values: tuple[int, ...]
    deviations: tuple[float, ...]
    max_deviation: float = field(init=False)

    def __post_init__(self) -> None:
        if len(self.k_values) != len(self.deviations):
            raise ValueError("k_values and deviations must have equal length")
        worst = max(self.deviations) if self.deviations else 0.0
        object.__setattr__(self, "max_deviation", worst)


def stroboscopic_residual(
    params: BlochParams,
    r0: MVec3,
    alpha: float,
    k_max: int,
    cfg: OdeConfig | None = None,
    chi0: float = 1.0,
) -> StroboReport:
    """Distance between the ODE flow at theta = K*alpha and the discrete orbit.

    The discrete orbit comes from :func:`map_orbit` (matrix solution plus
    decompose); the flow is advanced span by span on the integrator grid so
    each comparison lands exactly on K*alpha.  One report row per K from 1
    to k_max.
    """
    if cfg is None:
        cfg = OdeConfig()
    if not isinstance(cfg, OdeConfig):
        raise TypeError(f"cfg must be an OdeConfig, got {cfg!r}")
    if not isinstance(k_max, int) or isinstance(k_max, bool) or k_max < 1:
        raise ValueError(f"k_max must be a positive int, got {k_max!r}")
    if (
        not isinstance(alpha, (int, float))
        or isinstance(alpha, bool)
        or not math.isfinite(alpha)
        or alpha <= 0.0
    ):
        raise ValueError(f"alpha must be positive and finite, got {alpha!r}")
    alpha = float(alpha)
    _require_class(params, r0)
    check_hyperbolic_span(params, k_max * alpha)
    orbit = map_orbit(params, r0, alpha, k_max, chi0)
    r = r0
    k_values = []
    deviations = []
    for k in range(1, k_max + 1):
        r = _integrate_span(params, r, (k - 1) * alpha, k * alpha, cfg)
        k_values.append(k)
        deviations.append((r - orbit.points[k]).enorm())
    return StroboReport(k_values=tuple(k_values), deviations=tuple(deviations))
