"""Exact vector trajectories, their invariants, and the discrete orbit bridge.

A scenario is fixed by two classified vectors q and p (both on the surface
of the same case) and a rate ratio ``lam``.  The trajectory through r0 is a
composition of two axis rotations,

    r(theta) = Ad(2*theta about q) applied to t(theta),
    t(theta) = Ad(2*lam*theta about p) applied to r0,

evaluated entirely with the matrix-free adjoint formulas.  The same curve
sampled at theta = K*alpha equals the vector hidden inside the exact
even-index matrix solution; :func:`map_orbit` extracts that discrete orbit
so the two routes can be compared point by point.

The scalar mdot(r(theta), q) decouples: it depends on theta only through
t(theta).  In the elliptic case it is a single harmonic whose exact range
[A1, A2] this module computes, with A1 >= 1 on the upper sheet.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import ClassMismatchError, LowerSheetError, UnnormalizedError
from .map_dynamics import exact_r2k
from .minkowski import CaseClass, MVec3, classify, mcross, mdot
from .su11 import AxisAngle, adjoint_closed_form, decompose, exp_element

__all__ = [
    "Route",
    "BlochParams",
    "Trajectory",
    "EllipticBounds",
    "SymmetryReport",
    "TRAJECTORY_NORM_TOL",
    "intermediate_t",
    "trajectory_point",
    "decoupled_component",
    "elliptic_bounds",
    "elliptic_extremizers",
    "parabolic_line",
    "symmetry_order_check",
    "sample_trajectory",
    "map_orbit",
]

#: Worst manifold defect a stored trajectory sample may carry.
TRAJECTORY_NORM_TOL = 1e-8


class Route(enum.Enum):
    """Which computational route produced a trajectory."""

    CLOSED_FORM = "closed-form"
    MAP_ITERATED = "map"
    ODE_INTEGRATED = "ode"


@dataclass(frozen=True)
class BlochParams:
    """One dynamical scenario: axes q and p on a common surface, plus the rate ratio.

    ``lam`` is the ratio of the two underlying step angles (beta over twice
    alpha); the closed form depends on the angles only through it.
    """

    q: MVec3
    p: MVec3
    lam: float
    case: CaseClass

    def __post_init__(self) -> None:
        if not isinstance(self.case, CaseClass):
            raise TypeError(f"case must be a CaseClass, got {self.case!r}")
        if not isinstance(self.lam, (int, float)) or isinstance(self.lam, bool):
            raise TypeError(f"lam must be a real number, got {self.lam!r}")
        if not math.isfinite(self.lam):
            raise ValueError(f"lam must be finite, got {self.lam!r}")
        object.__setattr__(self, "lam", float(self.lam))
        for name in ("q", "p"):
            vec = getattr(self, name)
            if not isinstance(vec, MVec3):
                raise TypeError(f"{name} must be an MVec3, got {vec!r}")
            try:
                actual = classify(vec)
            except UnnormalizedError as exc:
                raise ClassMismatchError(f"{name} lies on no invariant surface: {exc}") from exc
            if actual is not self.case:
                raise ClassMismatchError(
                    f"{name} classifies as {actual.label}, not the declared {self.case.label}"
                )


def _require_class(params: BlochParams, r0: MVec3) -> None:
    try:
        actual = classify(r0)
    except UnnormalizedError as exc:
        raise ClassMismatchError(f"r0 lies on no invariant surface: {exc}") from exc
    if actual is not params.case:
        raise ClassMismatchError(
            f"r0 classifies as {actual.label}, not the scenario's {params.case.label}"
        )


@dataclass(frozen=True)
class Trajectory:
    """Ordered (theta, point) samples from one computational route.

    Construction re-validates the physical invariants: strictly increasing
    sample times and every point within TRAJECTORY_NORM_TOL of its surface.
    """

    params: BlochParams
    r0: MVec3
    route: Route
    thetas: tuple[float, ...]
    points: tuple[MVec3, ...]

    def __post_init__(self) -> None:
        if not isinstance(self.route, Route):
            raise TypeError(f"route must be a Route, got {self.route!r}")
        thetas = tuple(float(t) for t in self.thetas)
        points = tuple(self.points)
        if len(thetas) != len(points):
            raise ValueError(
                f"{len(thetas)} sample times but {len(points)} points"
            )
        if not thetas:
            raise ValueError("a trajectory needs at least one sample")
        for t in thetas:
            if not math.isfinite(t):
                raise ValueError(f"sample time {t!r} is not finite")
        for i in range(1, len(thetas)):
            if thetas[i] <= thetas[i - 1]:
                raise ValueError(
                    f"sample times must increase strictly: theta[{i}] = {thetas[i]!r} "
                    f"after {thetas[i - 1]!r}"
                )
        eta = self.params.case.eta
        for i, pt in enumerate(points):
            if not isinstance(pt, MVec3):
                raise TypeError(f"point {i} must be an MVec3, got {pt!r}")
            # Hyperbolic points grow without bound, and the rounding floor of
            # the invariant grows with the squared magnitude, so the defect
            # is measured relative to that scale.
            scale = max(1.0, pt.enorm() ** 2)
            defect = abs(mdot(pt, pt) - eta)
            if defect > TRAJECTORY_NORM_TOL * scale:
                raise ValueError(
                    f"point {i} is off the {self.params.case.label} surface by {defect:.3g}"
                )
        object.__setattr__(self, "thetas", thetas)
        object.__setattr__(self, "points", points)

    @property
    def samples(self) -> tuple[tuple[float, MVec3], ...]:
        return tuple(zip(self.thetas, self.points))

    def final_point(self) -> MVec3:
        return self.points[-1]


def intermediate_t(params: BlochParams, r0: MVec3, theta: float) -> MVec3:
    """Inner stage of the trajectory: r0 carried by the rotation about p.

    The rotation angle is 2*lam*theta; the single shared adjoint code path
    keeps this consistent with the matrix routes by construction.
    """
    _require_class(params, r0)
    return adjoint_closed_form(2.0 * params.lam * theta, params.p, r0, params.case)


def trajectory_point(params: BlochParams, r0: MVec3, theta: float) -> MVec3:
    """Exact trajectory sample: the rotation about q applied to intermediate_t."""
    t = intermediate_t(params, r0, theta)
    return adjoint_closed_form(2.0 * theta, params.q, t, params.case)


def decoupled_component(params: BlochParams, r0: MVec3, theta: float) -> float:
    """The scalar mdot(r(theta), q).

    The outer rotation fixes q and preserves mdot, so this equals
    mdot(intermediate_t(theta), q): the component along q decouples from
    the rest of the motion.
    """
    return mdot(trajectory_point(params, r0, theta), params.q)


def _bound_coefficients(params: BlochParams, r0: MVec3) -> tuple[float, float, float]:
    a = mdot(r0, params.q)
    b = mdot(mcross(r0, params.p), params.q)
    c = mdot(params.p, r0) * mdot(params.p, params.q)
    return a, b, c


@dataclass(frozen=True)
class EllipticBounds:
    """Exact range [a1, a2] of the elliptic decoupled component.

    The component is the single harmonic
    c + (a - c)*cos(2*lam*theta) - b*sin(2*lam*theta), so its range is
    c -+ sqrt(b**2 + (a - c)**2) exactly.
    """

    a: float
    b: float
    c: float
    a1: float
    a2: float

    def to_dict(self) -> dict[str, float]:
        return {"a": self.a, "b": self.b, "c": self.c, "A1": self.a1, "A2": self.a2}


def _require_upper_sheets(params: BlochParams, r0: MVec3) -> None:
    # The lower-bound guarantee a1 >= 1 is an upper-sheet statement; both the
    # moving point and the reference axis must start there.
    if r0.x3 < 0:
        raise LowerSheetError(f"r0 has x3 = {r0.x3!r} < 0 (lower sheet)")
    if params.q.x3 < 0:
        raise LowerSheetError(f"q has x3 = {params.q.x3!r} < 0 (lower sheet)")


def elliptic_bounds(params: BlochParams, r0: MVec3) -> EllipticBounds:
    """Exact bounds of the decoupled component for an upper-sheet elliptic scenario.

    Returns the three scalars a = mdot(r0, q), b = mdot(mcross(r0, p), q),
    c = mdot(p, r0)*mdot(p, q) and the range endpoints
    a1 = c - sqrt(b**2 + (a-c)**2), a2 = c + sqrt(b**2 + (a-c)**2);
    a1 >= 1 holds on the upper sheet.  Raises ClassMismatchError off the
    elliptic case and LowerSheetError when r0 or q starts on the lower sheet.
    """
    if params.case is not CaseClass.ELLIPTIC:
        raise ClassMismatchError(
            f"bounds are defined for the elliptic case, not {params.case.label}"
        )
    _require_class(params, r0)
    _require_upper_sheets(params, r0)
    a, b, c = _bound_coefficients(params, r0)
    radius = math.hypot(b, a - c)
    return EllipticBounds(a=a, b=b, c=c, a1=c - radius, a2=c + radius)


def elliptic_extremizers(params: BlochParams, r0: MVec3) -> tuple[float, float]:
    """Sample times (theta_at_min, theta_at_max) where the bounds are attained.

    Solves the harmonic form of the decoupled component exactly.  When the
    component is constant (zero harmonic radius or lam = 0) both extrema sit
    at theta = 0.
    """
    if params.case is not CaseClass.ELLIPTIC:
        raise ClassMismatchError(
            f"bounds are defined for the elliptic case, not {params.case.label}"
        )
    _require_class(params, r0)
    a, b, c = _bound_coefficients(params, r0)
    radius = math.hypot(b, a - c)
    if radius == 0.0 or params.lam == 0.0:
        return (0.0, 0.0)
    psi = math.atan2(b, a - c)
    theta_max = -psi / (2.0 * params.lam)
    theta_min = (math.pi - psi) / (2.0 * params.lam)
    return (theta_min, theta_max)


def parabolic_line(params: BlochParams, r0: MVec3, theta: float) -> float:
    """Affine-in-theta model a - 2*lam*theta*b + c of the parabolic component.

    The coefficients are a = mdot(r0, q), b = mdot(mcross(r0, p), q),
    c = mdot(p, r0)*mdot(p, q).  The model coincides with the computed
    component mdot(intermediate_t(theta), q) exactly when c = 0 (then the
    component really is affine, and b = 0 makes it constant); for c != 0 the
    computed component carries the quadratic term 2*(lam*theta)**2*c and
    starts at a rather than a + c, so this function is the affine model of
    the component, not its exact value.
    """
    if params.case is not CaseClass.PARABOLIC:
        raise ClassMismatchError(
            f"the affine model applies to the parabolic case, not {params.case.label}"
        )
    _require_class(params, r0)
    a, b, c = _bound_coefficients(params, r0)
    return a - 2.0 * params.lam * theta * b + c


@dataclass(frozen=True)
class SymmetryReport:
    """Result of the discrete rotational-symmetry identity check."""

    period: float
    rotation: float
    n_samples: int
    max_deviation: float


def symmetry_order_check(
    params: BlochParams, r0: MVec3, n_samples: int = 100
) -> SymmetryReport:
    """Verify that advancing theta by pi/lam rotates the curve by 2*pi/lam about q.

    The inner stage is periodic in theta with period pi/lam, so the whole
    curve repeats itself rotated; for integer lam the trajectory therefore
    closes into a lam-fold symmetric figure.  Reports the worst component
    deviation between r(theta + pi/lam) and the rotated r(theta) over
    n_samples values of theta spanning one period.
    """
    if params.case is not CaseClass.ELLIPTIC:
        raise ClassMismatchError(
            f"the symmetry identity is elliptic-only, not {params.case.label}"
        )
    if params.lam == 0.0:
        raise ValueError("lam must be nonzero for a finite symmetry period")
    if not isinstance(n_samples, int) or isinstance(n_samples, bool) or n_samples < 1:
        raise ValueError(f"n_samples must be a positive int, got {n_samples!r}")
    _require_class(params, r0)
    period = math.pi / params.lam
    rotation = 2.0 * math.pi / params.lam
    worst = 0.0
    for j in range(n_samples):
        theta = j * period / n_samples
        advanced = trajectory_point(params, r0, theta + period)
        rotated = adjoint_closed_form(
            rotation, params.q, trajectory_point(params, r0, theta), params.case
        )
        diff = advanced - rotated
        worst = max(worst, abs(diff.x1), abs(diff.x2), abs(diff.x3))
    return SymmetryReport(
        period=period, rotation=rotation, n_samples=n_samples, max_deviation=worst
    )


def sample_trajectory(params: BlochParams, r0: MVec3, thetas) -> Trajectory:
    """Closed-form trajectory sampled at the given times."""
    theta_list = [float(t) for t in thetas]
    points = tuple(trajectory_point(params, r0, t) for t in theta_list)
    return Trajectory(
        params=params,
        r0=r0,
        route=Route.CLOSED_FORM,
        thetas=tuple(theta_list),
        points=points,
    )


def _family_coefficient(chi: float, case: CaseClass) -> float:
    if case is CaseClass.ELLIPTIC:
        return math.sin(0.5 * chi)
    if case is CaseClass.PARABOLIC:
        return 0.5 * chi
    return math.sinh(0.5 * chi)


def map_orbit(
    params: BlochParams,
    r0: MVec3,
    alpha: float,
    k_max: int,
    chi0: float = 1.0,
) -> Trajectory:
    """Discrete orbit at theta = K*alpha recovered from the matrix solution.

    Embeds r0 as the group element exp_element(chi0, r0, case), forms the
    exact even-index solution driven by the axis-angle pair
    (alpha about q, 2*lam*alpha about p), and reads each orbit vector back
    through decompose.  The recovered axis is rescaled by the ratio of
    family coefficients at the decomposed and embedded angles, which undoes
    the unit normalization decompose applies (only the parabolic case
    actually changes scale; the other two ratios are 1 up to rounding).
    """
    if not isinstance(k_max, int) or isinstance(k_max, bool) or k_max < 1:
        raise ValueError(f"k_max must be a positive int, got {k_max!r}")
    if not isinstance(alpha, (int, float)) or isinstance(alpha, bool) or not 0.0 < alpha:
        raise ValueError(f"alpha must be a positive real, got {alpha!r}")
    if not math.isfinite(alpha):
        raise ValueError(f"alpha must be finite, got {alpha!r}")
    if not isinstance(chi0, (int, float)) or isinstance(chi0, bool):
        raise TypeError(f"chi0 must be a real number, got {chi0!r}")
    if not math.isfinite(chi0) or not 0.0 < chi0 < 2.0 * math.pi:
        raise ValueError(f"chi0 must lie in (0, 2*pi), got {chi0!r}")
    _require_class(params, r0)
    case = params.case
    q_aa = AxisAngle(float(alpha), params.q, case)
    p_aa = AxisAngle(2.0 * params.lam * float(alpha), params.p, case)
    r0_el = exp_element(float(chi0), r0, case)
    base = _family_coefficient(float(chi0), case)
    thetas = [0.0]
    points = [r0]
    for k in range(1, k_max + 1):
        d = decompose(exact_r2k(q_aa, p_aa, r0_el, k))
        if d.is_identity or d.case is not case or d.sign != 1:
            found = "identity" if d.is_identity else f"{d.case.label}, sign {d.sign}"
            raise ClassMismatchError(
                f"orbit element at K = {k} decomposed as {found}; "
                f"expected a positive {case.label} element"
            )
        ratio = _family_coefficient(d.chi, case) / base
        thetas.append(k * float(alpha))
        points.append(d.axis * ratio)
    return Trajectory(
        params=params,
        r0=r0,
        route=Route.MAP_ITERATED,
        thetas=tuple(thetas),
        points=tuple(points),
    )
