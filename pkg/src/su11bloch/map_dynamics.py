"""The discrete-time group recurrence and its exact even-index solution.

With a constant driving element Q, successive states obey

    R_{N+1} = Q R_N Q R_{N-1} Q^{-1} R_N^{-1} Q^{-1}

and the even-index states have the exact form

    R_{2K} = Q^{2K} P^K R_0 P^{-K} Q^{-2K},
    P = Q^{-1} R_1 Q R_0,

so every R_{2K} is a conjugate of R_0 and the whole orbit lives on one
conjugacy class.  This module implements the recurrence, the P/R_1
bridge, the exact solution, and a cross-check report between the two.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BlowupError
from .su11 import AxisAngle, GroupElement, exp_element, inverse, multiply, power

__all__ = [
    "MapState",
    "DeviationReport",
    "ITERATION_BLOWUP_LIMIT",
    "compute_p",
    "compute_r1",
    "initial_state",
    "step",
    "iterate_elements",
    "exact_r2k",
    "verify_exact_vs_iterated",
]

#: Largest matrix entry magnitude the recurrence will carry before raising.
ITERATION_BLOWUP_LIMIT = 1e12


@dataclass(frozen=True)
class MapState:
    """One step of the recurrence: the previous and current states plus the driver.

    ``n`` is the index of ``r_curr``; :func:`step` advances it by exactly 1.
    """

    r_prev: GroupElement
    r_curr: GroupElement
    q: GroupElement
    n: int

    def __post_init__(self) -> None:
        for name in ("r_prev", "r_curr", "q"):
            if not isinstance(getattr(self, name), GroupElement):
                raise TypeError(f"{name} must be a GroupElement")
        if not isinstance(self.n, int) or isinstance(self.n, bool) or self.n < 0:
            raise ValueError(f"step index must be a nonnegative int, got {self.n!r}")


def _as_element(x: GroupElement | AxisAngle) -> GroupElement:
    if isinstance(x, AxisAngle):
        return x.exp()
    if isinstance(x, GroupElement):
        return x
    raise TypeError(f"expected a GroupElement or AxisAngle, got {x!r}")


def compute_p(q: GroupElement, r0: GroupElement, r1: GroupElement) -> GroupElement:
    """Conjugation seed P = Q^{-1} R_1 Q R_0 built from the first two states."""
    return multiply(multiply(inverse(q), r1), multiply(q, r0))


def compute_r1(q: GroupElement, p: GroupElement, r0: GroupElement) -> GroupElement:
    """First state R_1 = Q P R_0^{-1} Q^{-1} consistent with a chosen P.

    Round-trips with :func:`compute_p`: feeding the result back recovers P.
    """
    return multiply(multiply(q, p), multiply(inverse(r0), inverse(q)))


def initial_state(q: GroupElement, r0: GroupElement, r1: GroupElement) -> MapState:
    """Package (R_0, R_1) as the state from which step() produces R_2."""
    return MapState(r_prev=r0, r_curr=r1, q=q, n=1)


def step(state: MapState) -> MapState:
    """Advance the recurrence by one index.

    Raises BlowupError when the new state's entries exceed
    ITERATION_BLOWUP_LIMIT; unbounded hyperbolic orbits reach that limit
    long before float overflow corrupts the arithmetic.
    """
    q = state.q
    q_inv = inverse(q)
    r_n_inv = inverse(state.r_curr)
    m = multiply(
        multiply(multiply(q, state.r_curr), multiply(q, state.r_prev)),
        multiply(q_inv, multiply(r_n_inv, q_inv)),
    )
    if float(np.max(np.abs(m.m))) > ITERATION_BLOWUP_LIMIT:
        raise BlowupError(
            f"recurrence state at index {state.n + 1} exceeds {ITERATION_BLOWUP_LIMIT:.0e}"
        )
    return MapState(r_prev=state.r_curr, r_curr=m, q=q, n=state.n + 1)


def iterate_elements(
    q: GroupElement, r0: GroupElement, r1: GroupElement, n_max: int
) -> tuple[GroupElement, ...]:
    """All recurrence states R_0 .. R_{n_max} in index order."""
    if not isinstance(n_max, int) or isinstance(n_max, bool) or n_max < 1:
        raise ValueError(f"n_max must be a positive int, got {n_max!r}")
    out = [r0, r1]
    state = initial_state(q, r0, r1)
    while state.n < n_max:
        state = step(state)
        out.append(state.r_curr)
    return tuple(out)


def _scaled_power(x: GroupElement | AxisAngle, n: int) -> GroupElement:
    """x^n, by angle scaling when the axis-angle form is available.

    Scaling the angle keeps integer powers on the exact one-parameter
    subgroup with no error growth in n; matrix elements fall back to
    binary exponentiation.
    """
    if isinstance(x, AxisAngle):
        return exp_element(n * x.chi, x.axis, x.case)
    return power(x, n)


def exact_r2k(
    q: GroupElement | AxisAngle,
    p: GroupElement | AxisAngle,
    r0: GroupElement,
    k: int,
) -> GroupElement:
    """Exact even-index state R_{2K} = Q^{2K} P^K R_0 P^{-K} Q^{-2K}."""
    if not isinstance(k, int) or isinstance(k, bool) or k < 0:
        raise ValueError(f"K must be a nonnegative int, got {k!r}")
    if not isinstance(r0, GroupElement):
        raise TypeError(f"r0 must be a GroupElement, got {r0!r}")
    if k == 0:
        return r0
    q_fwd = _scaled_power(q, 2 * k)
    p_fwd = _scaled_power(p, k)
    q_bwd = _scaled_power(q, -2 * k) if isinstance(q, AxisAngle) else inverse(q_fwd)
    p_bwd = _scaled_power(p, -k) if isinstance(p, AxisAngle) else inverse(p_fwd)
    return multiply(multiply(q_fwd, p_fwd), multiply(r0, multiply(p_bwd, q_bwd)))


@dataclass(frozen=True)
class DeviationReport:
    """Per-K maximum entrywise deviation between iterated and exact R_{2K}."""

    k_values: tuple[int, ...]
    deviations: tuple[float, ...]
    max_deviation: float
    worst_k: int


def verify_exact_vs_iterated(
    q: GroupElement | AxisAngle,
    p: GroupElement | AxisAngle,
    r0: GroupElement,
    k_max: int,
) -> DeviationReport:
    """Cross-validate the recurrence against the exact solution for K = 1..k_max.

    The iteration is seeded with R_1 from :func:`compute_r1`, advanced two
    indices per K, and compared entrywise with :func:`exact_r2k` at every
    even index.
    """
    if not isinstance(k_max, int) or isinstance(k_max, bool) or k_max < 1:
        raise ValueError(f"k_max must be a positive int, got {k_max!r}")
    q_el = _as_element(q)
    p_el = _as_element(p)
    r1 = compute_r1(q_el, p_el, r0)
    state = initial_state(q_el, r0, r1)
    k_values = []
    deviations = []
    for k in range(1, k_max + 1):
        while state.n < 2 * k:
            state = step(state)
        reference = exact_r2k(q, p, r0, k)
        dev = float(np.max(np.abs(state.r_curr.m - reference.m)))
        k_values.append(k)
        deviations.append(dev)
    worst_index = int(np.argmax(deviations))
    return DeviationReport(
        k_values=tuple(k_values),
        deviations=tuple(deviations),
        max_deviation=deviations[worst_index],
        worst_k=k_values[worst_index],
    )
