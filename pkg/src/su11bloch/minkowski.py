"""Three-dimensional vectors under the indefinite form of signature (-, -, +).

This module fixes the bilinear form

    mdot(x, y) = -x1*y1 - x2*y2 + x3*y3

and a twisted cross product ``mcross`` adapted to it, classifies vectors by
the sign of ``mdot(x, x)`` into the three invariant surfaces (unit two-sheet
hyperboloid, null cone, unit one-sheet hyperboloid), and projects nearby
points back onto a chosen surface.

All vectors are real triples wrapped in the immutable :class:`MVec3`.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import AmbiguousToleranceError, TooFarError, UnnormalizedError

__all__ = [
    "MVec3",
    "CaseClass",
    "CLASSIFY_TOL",
    "REPROJECT_MAX_DISTANCE",
    "mdot",
    "mcross",
    "classify",
    "reproject",
]

#: Default half-width of the bands |mdot(x, x) - eta| <= tol used by classify().
CLASSIFY_TOL = 1e-9

#: Euclidean distance beyond which reproject() refuses to move a point.
REPROJECT_MAX_DISTANCE = 0.1


@dataclass(frozen=True, slots=True)
class MVec3:
    """An immutable real 3-vector with component-wise arithmetic.

    Only finite components are accepted.  Scalar multiplication works from
    either side; division accepts a scalar divisor.
    """

    x1: float
    x2: float
    x3: float

    def __post_init__(self) -> None:
        for name in ("x1", "x2", "x3"):
            value = getattr(self, name)
            if not isinstance(value, (int, float)) or isinstance(value, bool):
                raise TypeError(f"component {name} must be a real number, got {value!r}")
            if not math.isfinite(value):
                raise ValueError(f"component {name} must be finite, got {value!r}")
            object.__setattr__(self, name, float(value))

    @classmethod
    def from_iterable(cls, values) -> "MVec3":
        """Build a vector from any iterable of exactly three numbers."""
        items = list(values)
        if len(items) != 3:
            raise ValueError(f"expected exactly 3 components, got {len(items)}")
        return cls(*items)

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.x1, self.x2, self.x3)

    def as_array(self) -> np.ndarray:
        return np.array([self.x1, self.x2, self.x3], dtype=float)

    def enorm(self) -> float:
        """Euclidean length, used for distance checks (not the indefinite form)."""
        return math.hypot(self.x1, self.x2, self.x3)

    def __add__(self, other: "MVec3") -> "MVec3":
        if not isinstance(other, MVec3):
            return NotImplemented
        return MVec3(self.x1 + other.x1, self.x2 + other.x2, self.x3 + other.x3)

    def __sub__(self, other: "MVec3") -> "MVec3":
        if not isinstance(other, MVec3):
            return NotImplemented
        return MVec3(self.x1 - other.x1, self.x2 - other.x2, self.x3 - other.x3)

    def __neg__(self) -> "MVec3":
        return MVec3(-self.x1, -self.x2, -self.x3)

    def __mul__(self, scalar) -> "MVec3":
        if isinstance(scalar, bool) or not isinstance(scalar, (int, float)):
            return NotImplemented
        return MVec3(self.x1 * scalar, self.x2 * scalar, self.x3 * scalar)

    __rmul__ = __mul__

    def __truediv__(self, scalar) -> "MVec3":
        if isinstance(scalar, bool) or not isinstance(scalar, (int, float)):
            return NotImplemented
        return MVec3(self.x1 / scalar, self.x2 / scalar, self.x3 / scalar)


class CaseClass(enum.Enum):
    """The three invariant surfaces, keyed by the sign of mdot(x, x)."""

    ELLIPTIC = "elliptic"
    PARABOLIC = "parabolic"
    HYPERBOLIC = "hyperbolic"

    @property
    def eta(self) -> int:
        """Value of mdot(x, x) on the surface: +1, 0, or -1."""
        if self is CaseClass.ELLIPTIC:
            return 1
        if self is CaseClass.PARABOLIC:
            return 0
        return -1

    @property
    def label(self) -> str:
        return self.value


def mdot(x: MVec3, y: MVec3) -> float:
    """Indefinite inner product of signature (-, -, +)."""
    return -x.x1 * y.x1 - x.x2 * y.x2 + x.x3 * y.x3


def mcross(x: MVec3, y: MVec3) -> MVec3:
    """Cross product twisted to match the indefinite form.

    Component-wise:

        (-x2*y3 + x3*y2,  -x3*y1 + x1*y3,  x1*y2 - x2*y1)

    It is antisymmetric, and mdot(mcross(x, y), x) = 0 = mdot(mcross(x, y), y).
    """
    return MVec3(
        -x.x2 * y.x3 + x.x3 * y.x2,
        -x.x3 * y.x1 + x.x1 * y.x3,
        x.x1 * y.x2 - x.x2 * y.x1,
    )


def classify(x: MVec3, tol: float = CLASSIFY_TOL) -> CaseClass:
    """Identify which invariant surface ``x`` lies on, within ``tol``.

    Returns ELLIPTIC when |mdot(x, x) - 1| <= tol, PARABOLIC when
    |mdot(x, x)| <= tol, HYPERBOLIC when |mdot(x, x) + 1| <= tol.

    Raises AmbiguousToleranceError when tol >= 1/2 (the three bands would
    overlap) and UnnormalizedError when ``x`` falls in none of the bands.
    """
    if not math.isfinite(tol) or tol <= 0:
        raise ValueError(f"tolerance must be a positive finite number, got {tol!r}")
    if tol >= 0.5:
        raise AmbiguousToleranceError(
            f"tolerance {tol} makes the classification bands overlap; need tol < 0.5"
        )
    n = mdot(x, x)
    if abs(n - 1.0) <= tol:
        return CaseClass.ELLIPTIC
    if abs(n) <= tol:
        return CaseClass.PARABOLIC
    if abs(n + 1.0) <= tol:
        return CaseClass.HYPERBOLIC
    raise UnnormalizedError(
        f"mdot(x, x) = {n!r} is not within {tol} of any of 1, 0, -1"
    )


def _project_to_cone(x: MVec3) -> MVec3:
    """Euclidean-nearest point on the null cone x1^2 + x2^2 = x3^2.

    With rho = hypot(x1, x2) the nearest cone point keeps the azimuth of
    (x1, x2), has cylindrical radius m = (rho + |x3|)/2, and takes the sign
    of x3 for its third component.  This is the exact minimizer: in the
    (rho, x3) half-plane the cone is the pair of lines x3 = +-rho, and
    orthogonal projection onto the closer line gives m.
    """
    rho = math.hypot(x.x1, x.x2)
    if rho == 0.0 and x.x3 == 0.0:
        raise TooFarError("the apex (0, 0, 0) has no usable projection data")
    sign = 1.0 if x.x3 >= 0.0 else -1.0
    m = (rho + abs(x.x3)) / 2.0
    if rho == 0.0:
        # On the symmetry axis every azimuth is equally near; pick azimuth 0
        # so the result is deterministic.
        return MVec3(m, 0.0, sign * m)
    return MVec3(x.x1 * m / rho, x.x2 * m / rho, sign * m)


def reproject(x: MVec3, target: CaseClass) -> MVec3:
    """Return the point of the target surface nearest to ``x`` (idempotently).

    For the two hyperboloids the projection rescales ``x`` radially so that
    mdot(y, y) equals the target value exactly (up to rounding); the sheet of
    a two-sheet point is preserved.  For the null cone the exact Euclidean
    nearest point is used.  Raises TooFarError when ``x`` is more than
    REPROJECT_MAX_DISTANCE away (Euclidean) from the computed projection, or
    when no rescaling can reach the target surface at all.
    """
    if not isinstance(target, CaseClass):
        raise TypeError(f"target must be a CaseClass, got {target!r}")
    if target is CaseClass.PARABOLIC:
        y = _project_to_cone(x)
    else:
        n = mdot(x, x)
        if target is CaseClass.ELLIPTIC:
            if n <= 0.0:
                raise TooFarError(
                    f"mdot(x, x) = {n!r} <= 0: no radial rescaling reaches the unit two-sheet surface"
                )
            y = x / math.sqrt(n)
        else:
            if n >= 0.0:
                raise TooFarError(
                    f"mdot(x, x) = {n!r} >= 0: no radial rescaling reaches the unit one-sheet surface"
                )
            y = x / math.sqrt(-n)
    if (y - x).enorm() > REPROJECT_MAX_DISTANCE:
        raise TooFarError(
            f"projection moves the point by {(y - x).enorm():.6g}, "
            f"more than the trusted limit {REPROJECT_MAX_DISTANCE}"
        )
    return y
