"""Exception types raised by the dynamics library.

Every error the library raises deliberately derives from :class:`DynamicsError`,
so callers can catch one base class at an API boundary.  Plain ``ValueError``
and ``TypeError`` are reserved for malformed arguments (wrong shapes, wrong
types, non-finite numbers) rather than geometric or numerical conditions.
"""

from __future__ import annotations

__all__ = [
    "DynamicsError",
    "UnnormalizedError",
    "AmbiguousToleranceError",
    "TooFarError",
    "InvalidAxisError",
    "ExtractionError",
    "NearBoundaryError",
    "ClassMismatchError",
    "LowerSheetError",
    "BlowupError",
    "StepTooLargeError",
]


class DynamicsError(Exception):
    """Base class for all geometric and numerical errors in this package."""


class UnnormalizedError(DynamicsError):
    """A vector is not within tolerance of any admissible invariant surface."""


class AmbiguousToleranceError(DynamicsError):
    """A classification tolerance is so large that the surface bands overlap."""


class TooFarError(DynamicsError):
    """A point is too far from the target surface for projection to be trusted."""


class InvalidAxisError(DynamicsError):
    """An axis vector does not lie on the surface its case label demands."""


class ExtractionError(DynamicsError):
    """A matrix is not close enough to the traceless image form to read a vector off it."""


class NearBoundaryError(DynamicsError):
    """A group element sits too close to the parabolic boundary to classify reliably."""


class ClassMismatchError(DynamicsError):
    """An operation received data whose case label disagrees with what it requires."""


class LowerSheetError(DynamicsError):
    """A two-sheet surface point lies on the lower sheet where an upper-sheet formula applies."""


class BlowupError(DynamicsError):
    """A trajectory or integrator state exceeded the numerical safety bounds."""


class StepTooLargeError(DynamicsError):
    """An integrator step size exceeds the stability ceiling."""
