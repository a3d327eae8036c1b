"""The 2x2 pseudo-unitary group of the indefinite form, and its vector actions.

Group elements are 2x2 complex matrices ``g`` with det(g) = 1 that preserve
the metric J = diag(1, -1) in the sense  g^dagger J g = J.  The linear map
:func:`kappa_dot` embeds a real 3-vector ``x`` as a traceless matrix whose
determinant equals ``-mdot(x, x)``; conjugating that image by a group element
acts on the vector without leaving the embedding, which is how all trajectory
routes in this package move points around.

Three one-parameter families cover the group up to sign:

* elliptic  axis (mdot = +1):  cos(chi/2) I + i sin(chi/2) kappa_dot(s)
* parabolic axis (mdot =  0):  I + i (chi/2) kappa_dot(s)
* hyperbolic axis (mdot = -1): cosh(chi/2) I + i sinh(chi/2) kappa_dot(s)

:func:`exp_element` builds these, :func:`decompose` inverts them, and
:func:`adjoint_closed_form` applies the induced vector rotation without any
matrix arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DynamicsError,
    ExtractionError,
    InvalidAxisError,
    NearBoundaryError,
    UnnormalizedError,
)
from .minkowski import CaseClass, MVec3, classify, mcross, mdot

__all__ = [
    "GroupElement",
    "AxisAngle",
    "Decomposition",
    "DECOMPOSE_TOL",
    "EXTRACTION_TOL",
    "kappa_dot",
    "exp_element",
    "multiply",
    "inverse",
    "power",
    "adjoint_vec",
    "adjoint_closed_form",
    "decompose",
]

#: Default residual tolerance (relative to matrix scale) for reading a vector
#: back out of its matrix image.
EXTRACTION_TOL = 1e-9

#: Default half-trace tolerance separating the parabolic band from the other
#: two families in decompose().
DECOMPOSE_TOL = 1e-9

#: Relative tolerance on the trace of matrices claimed to be (shifted) vector
#: images; conjugation preserves the trace exactly, so violations are tiny.
TRACE_TOL = 1e-11

_METRIC = np.diag([1.0, -1.0]).astype(complex)
_IDENTITY = np.eye(2, dtype=complex)

_FOUR_PI = 4.0 * math.pi


@dataclass(frozen=True, eq=False)
class GroupElement:
    """An immutable 2x2 complex matrix treated as a group member.

    The constructor copies the matrix and freezes it; it checks shape and
    finiteness only.  Whether the matrix actually satisfies the group
    constraints is reported by :meth:`defect`, and :meth:`from_matrix`
    offers a constructing variant that enforces a defect bound.
    """

    m: np.ndarray

    def __post_init__(self) -> None:
        arr = np.array(self.m, dtype=complex, copy=True)
        if arr.shape != (2, 2):
            raise ValueError(f"expected a 2x2 matrix, got shape {arr.shape}")
        if not np.all(np.isfinite(arr.view(float))):
            raise ValueError("matrix entries must be finite")
        arr.setflags(write=False)
        object.__setattr__(self, "m", arr)

    @classmethod
    def identity(cls) -> "GroupElement":
        return cls(_IDENTITY)

    @classmethod
    def from_matrix(cls, m, tol: float = 1e-9) -> "GroupElement":
        """Construct and reject matrices whose group defect exceeds ``tol``."""
        g = cls(m)
        d = g.defect()
        if d > tol:
            raise ValueError(f"matrix violates the group constraints: defect {d:.3g} > {tol}")
        return g

    def defect(self) -> float:
        """max(|det - 1|, worst entry of g^dagger J g - J): 0 for exact members."""
        det = self.m[0, 0] * self.m[1, 1] - self.m[0, 1] * self.m[1, 0]
        metric_err = self.m.conj().T @ _METRIC @ self.m - _METRIC
        return max(abs(det - 1.0), float(np.max(np.abs(metric_err))))

    def __matmul__(self, other: "GroupElement") -> "GroupElement":
        if not isinstance(other, GroupElement):
            return NotImplemented
        return multiply(self, other)


@dataclass(frozen=True)
class AxisAngle:
    """A one-parameter-family label: angle ``chi`` along a classified axis.

    The axis must lie on the surface named by ``case`` (checked with the
    default classification tolerance).  Elliptic angles are canonicalized
    into [0, 4*pi), the true period of the matrix family; other classes
    accept any finite angle.
    """

    chi: float
    axis: MVec3
    case: CaseClass

    def __post_init__(self) -> None:
        if not isinstance(self.axis, MVec3):
            raise TypeError(f"axis must be an MVec3, got {self.axis!r}")
        if not isinstance(self.case, CaseClass):
            raise TypeError(f"case must be a CaseClass, got {self.case!r}")
        if not isinstance(self.chi, (int, float)) or isinstance(self.chi, bool):
            raise TypeError(f"chi must be a real number, got {self.chi!r}")
        if not math.isfinite(self.chi):
            raise ValueError(f"chi must be finite, got {self.chi!r}")
        try:
            actual = classify(self.axis)
        except UnnormalizedError as exc:
            raise InvalidAxisError(f"axis does not lie on any invariant surface: {exc}") from exc
        if actual is not self.case:
            raise InvalidAxisError(
                f"axis classifies as {actual.label}, not the declared {self.case.label}"
            )
        chi = float(self.chi)
        if self.case is CaseClass.ELLIPTIC:
            chi = chi % _FOUR_PI
        object.__setattr__(self, "chi", chi)

    def exp(self) -> "GroupElement":
        return exp_element(self.chi, self.axis, self.case)


def kappa_dot(x: MVec3) -> np.ndarray:
    """Embed a real 3-vector as a traceless 2x2 complex matrix.

    The image is [[x3, -i*x1 - x2], [-i*x1 + x2, -x3]].  Its determinant is
    -mdot(x, x), and its square is mdot(x, x) times the identity, which is
    what makes the three exponential families above close in the group.
    """
    if not isinstance(x, MVec3):
        raise TypeError(f"expected an MVec3, got {x!r}")
    return np.array(
        [
            [complex(x.x3, 0.0), complex(-x.x2, -x.x1)],
            [complex(x.x2, -x.x1), complex(-x.x3, 0.0)],
        ]
    )


def _vector_from_image(m: np.ndarray, tol: float) -> MVec3:
    """Invert kappa_dot, rejecting matrices outside its image subspace.

    The residual is measured against the four linear constraints that cut
    out the image (real trace parts and the two off-diagonal symmetries),
    scaled by the largest matrix entry so the test is meaningful for both
    tiny and large conjugation products.
    """
    a, b = m[0, 0], m[0, 1]
    c, d = m[1, 0], m[1, 1]
    scale = max(1.0, float(np.max(np.abs(m))))
    trace_residual = abs(a + d)
    if trace_residual > TRACE_TOL * scale:
        raise ExtractionError(
            f"matrix is not traceless: |trace| = {trace_residual:.3g} "
            f"exceeds {TRACE_TOL:.3g} * scale {scale:.3g}"
        )
    residual = max(abs((b + c).real), abs((c - b).imag), abs(a.imag))
    if residual > tol * scale:
        raise ExtractionError(
            f"matrix is outside the embedding image: residual {residual:.3g} "
            f"exceeds {tol:.3g} * scale {scale:.3g}"
        )
    return MVec3(-0.5 * (b + c).imag, 0.5 * (c - b).real, a.real)


def exp_element(chi: float, axis: MVec3, case: CaseClass) -> GroupElement:
    """Exponential of ``i*(chi/2)*kappa_dot(axis)`` in closed form.

    The axis must lie on the surface matching ``case`` (InvalidAxisError
    otherwise); the angle may be any finite real, no canonicalization is
    applied here.
    """
    if not isinstance(chi, (int, float)) or isinstance(chi, bool) or not math.isfinite(chi):
        raise ValueError(f"chi must be a finite real number, got {chi!r}")
    try:
        actual = classify(axis)
    except UnnormalizedError as exc:
        raise InvalidAxisError(f"axis does not lie on any invariant surface: {exc}") from exc
    if actual is not case:
        raise InvalidAxisError(
            f"axis classifies as {actual.label}, not the requested {case.label}"
        )
    half = 0.5 * float(chi)
    k = kappa_dot(axis)
    if case is CaseClass.ELLIPTIC:
        return GroupElement(math.cos(half) * _IDENTITY + 1j * math.sin(half) * k)
    if case is CaseClass.PARABOLIC:
        return GroupElement(_IDENTITY + 1j * half * k)
    return GroupElement(math.cosh(half) * _IDENTITY + 1j * math.sinh(half) * k)


def multiply(g: GroupElement, h: GroupElement) -> GroupElement:
    return GroupElement(g.m @ h.m)


def inverse(g: GroupElement) -> GroupElement:
    """Exact 2x2 inverse: the adjugate divided by the computed determinant.

    Dividing by the actual determinant, instead of assuming it is 1, stops
    rounding drift in det(g) from compounding through the long conjugation
    chains the map iteration builds; with the adjugate alone the drift
    feeds back on itself and grows geometrically with the step count.
    """
    a, b = g.m[0, 0], g.m[0, 1]
    c, d = g.m[1, 0], g.m[1, 1]
    det = a * d - b * c
    if det == 0:
        raise ValueError("matrix is singular; not a group element")
    return GroupElement(np.array([[d, -b], [-c, a]]) / det)


def power(g: GroupElement, n: int) -> GroupElement:
    """Integer power by binary exponentiation (negative n inverts first)."""
    if not isinstance(n, int) or isinstance(n, bool):
        raise TypeError(f"exponent must be an int, got {n!r}")
    if n < 0:
        return power(inverse(g), -n)
    result = GroupElement.identity()
    base = g
    while n:
        if n & 1:
            result = multiply(result, base)
        base = multiply(base, base)
        n >>= 1
    return result


def adjoint_vec(g: GroupElement, t: MVec3, tol: float = EXTRACTION_TOL) -> MVec3:
    """Action of ``g`` on a vector through its matrix embedding.

    Computes g * kappa_dot(t) * g^{-1} and reads the vector back off the
    product.  The conjugation stays inside the embedding image for exact
    group elements, so a failed extraction signals a defective ``g``.
    """
    m = g.m @ kappa_dot(t) @ inverse(g).m
    return _vector_from_image(m, tol)


def adjoint_closed_form(gamma: float, s: MVec3, t: MVec3, case: CaseClass) -> MVec3:
    """Vector action of exp_element(gamma, s, case) on ``t``, matrix-free.

    Writing d = mdot(t, s) and c = mcross(t, s):

    * elliptic:   cos(gamma) t - sin(gamma) c + (1 - cos(gamma)) d s
    * parabolic:  t - gamma c + (gamma**2 / 2) d s
    * hyperbolic: cosh(gamma) t - sinh(gamma) c + (cosh(gamma) - 1) d s

    The quadratic parabolic coefficient and the (cosh - 1) weight are both
    forced by agreement with the matrix conjugation route; dropping either
    one moves points off their invariant surface.
    """
    if not isinstance(gamma, (int, float)) or isinstance(gamma, bool) or not math.isfinite(gamma):
        raise ValueError(f"gamma must be a finite real number, got {gamma!r}")
    try:
        actual = classify(s)
    except UnnormalizedError as exc:
        raise InvalidAxisError(f"axis does not lie on any invariant surface: {exc}") from exc
    if actual is not case:
        raise InvalidAxisError(
            f"axis classifies as {actual.label}, not the requested {case.label}"
        )
    gamma = float(gamma)
    d = mdot(t, s)
    c = mcross(t, s)
    if case is CaseClass.ELLIPTIC:
        cg, sg = math.cos(gamma), math.sin(gamma)
        return cg * t - sg * c + ((1.0 - cg) * d) * s
    if case is CaseClass.PARABOLIC:
        return t - gamma * c + (0.5 * gamma * gamma * d) * s
    ch, sh = math.cosh(gamma), math.sinh(gamma)
    return ch * t - sh * c + ((ch - 1.0) * d) * s


@dataclass(frozen=True)
class Decomposition:
    """Result of factoring a group element as sign * exp_element(chi, axis, case).

    ``axis`` and ``case`` are None exactly when the element is sign * identity;
    then chi is 0 and no axis is defined.
    """

    chi: float
    axis: MVec3 | None
    case: CaseClass | None
    sign: int

    @property
    def is_identity(self) -> bool:
        return self.axis is None

    def as_axis_angle(self) -> AxisAngle:
        if self.axis is None or self.case is None:
            raise DynamicsError("a sign * identity element has no axis-angle form")
        return AxisAngle(self.chi, self.axis, self.case)


def decompose(g: GroupElement, tol: float = DECOMPOSE_TOL) -> Decomposition:
    """Recover sign, family, angle, and axis from a group element.

    The half-trace h = tr(g)/2 is real for every element this library
    produces; |h| < 1 selects the elliptic family with chi = 2*arccos(h) in
    (0, 2*pi), |h| > 1 the hyperbolic family with chi = 2*arccosh(|h|) and
    sign(h) as the overall sign.  Inside the band |h - sign| <= tol the
    element is parabolic: w = extraction of (g - sign*I)/i must then be a
    null vector, giving chi = sqrt(2)*|w| (Euclidean) and axis = 2*w/chi,
    normalized so the axis has Euclidean length sqrt(2).

    Raises ExtractionError for matrices with a non-real trace or outside
    the embedding image, and NearBoundaryError when the parabolic-band
    vector is measurably non-null, meaning the element sits too close to
    the family boundary for its class to be trusted at this tolerance.
    """
    if not math.isfinite(tol) or not 0.0 < tol < 0.5:
        raise ValueError(f"tolerance must lie in (0, 0.5), got {tol!r}")
    trace = g.m[0, 0] + g.m[1, 1]
    scale = max(1.0, float(np.max(np.abs(g.m))))
    if abs(trace.imag) > TRACE_TOL * scale:
        raise ExtractionError(
            f"trace has imaginary part {trace.imag:.3g}; element is outside the three families"
        )
    h = 0.5 * trace.real
    if abs(h) < 1.0 - tol:
        chi = 2.0 * math.acos(h)
        coeff = 1j * math.sin(0.5 * chi)
        axis = _vector_from_image((g.m - h * _IDENTITY) / coeff, tol)
        return Decomposition(chi, axis, CaseClass.ELLIPTIC, 1)
    if abs(h) > 1.0 + tol:
        sign = 1 if h > 0 else -1
        chi = 2.0 * math.acosh(abs(h))
        coeff = 1j * sign * math.sinh(0.5 * chi)
        axis = _vector_from_image((g.m - h * _IDENTITY) / coeff, tol)
        return Decomposition(chi, axis, CaseClass.HYPERBOLIC, sign)
    sign = 1 if h > 0 else -1
    # Subtracting h*I (not sign*I) makes the shifted matrix exactly traceless,
    # and the leading sign folds the -identity coset back onto the +I form.
    w = _vector_from_image(sign * (g.m - h * _IDENTITY) / 1j, tol)
    wn = w.enorm()
    if wn <= tol:
        return Decomposition(0.0, None, None, sign)
    if abs(mdot(w, w)) > tol * max(1.0, wn * wn):
        raise NearBoundaryError(
            f"half-trace {h!r} sits in the parabolic band but the extracted vector "
            f"is not null (mdot = {mdot(w, w):.3g}); the family cannot be resolved at tol {tol:.3g}"
        )
    chi = math.sqrt(2.0) * wn
    axis = (2.0 / chi) * w
    return Decomposition(chi, axis, CaseClass.PARABOLIC, sign)
