"""Discrete-time dynamics on the three invariant surfaces of signature (-,-,+).

Three independent computational routes for the same orbit: iterating the
group-valued recurrence, evaluating the exact closed-form trajectory, and
integrating the matching precession ODE.  The library cross-validates the
routes against one another; the CLI packages that into scenario runs.
"""

from .errors import (
    AmbiguousToleranceError,
    BlowupError,
    ClassMismatchError,
    DynamicsError,
    ExtractionError,
    InvalidAxisError,
    LowerSheetError,
    NearBoundaryError,
    StepTooLargeError,
    TooFarError,
    UnnormalizedError,
)
from .minkowski import (
    CLASSIFY_TOL,
    REPROJECT_MAX_DISTANCE,
    CaseClass,
    MVec3,
    classify,
    mcross,
    mdot,
    reproject,
)
from .su11 import (
    DECOMPOSE_TOL,
    EXTRACTION_TOL,
    AxisAngle,
    Decomposition,
    GroupElement,
    adjoint_closed_form,
    adjoint_vec,
    decompose,
    exp_element,
    inverse,
    kappa_dot,
    multiply,
    power,
)
from .map_dynamics import (
    DeviationReport,
    MapState,
    compute_p,
    compute_r1,
    exact_r2k,
    initial_state,
    iterate_elements,
    step,
    verify_exact_vs_iterated,
)
from .closed_form import (
    TRAJECTORY_NORM_TOL,
    BlochParams,
    EllipticBounds,
    Route,
    SymmetryReport,
    Trajectory,
    decoupled_component,
    elliptic_bounds,
    elliptic_extremizers,
    intermediate_t,
    map_orbit,
    parabolic_line,
    sample_trajectory,
    symmetry_order_check,
    trajectory_point,
)
from .bloch_ode import (
    COMPONENT_LIMIT,
    HYPERBOLIC_GROWTH_LIMIT,
    MAX_STEP,
    OdeConfig,
    OdeMethod,
    StroboReport,
    check_hyperbolic_span,
    integrate,
    p_of_theta,
    rhs,
    stroboscopic_residual,
    u_of_theta,
)
from .scenario import (
    Scenario,
    bundled_scenario_names,
    find_scenario,
    load_bundled,
    load_scenario,
)

__version__ = "0.1.0"

__all__ = [
    "AmbiguousToleranceError",
    "BlowupError",
    "ClassMismatchError",
    "DynamicsError",
    "ExtractionError",
    "InvalidAxisError",
    "LowerSheetError",
    "NearBoundaryError",
    "StepTooLargeError",
    "TooFarError",
    "UnnormalizedError",
    "CLASSIFY_TOL",
    "REPROJECT_MAX_DISTANCE",
    "CaseClass",
    "MVec3",
    "classify",
    "mcross",
    "mdot",
    "reproject",
    "DECOMPOSE_TOL",
    "EXTRACTION_TOL",
    "AxisAngle",
    "Decomposition",
    "GroupElement",
    "adjoint_closed_form",
    "adjoint_vec",
    "decompose",
    "exp_element",
    "inverse",
    "kappa_dot",
    "multiply",
    "power",
    "DeviationReport",
    "MapState",
    "compute_p",
    "compute_r1",
    "exact_r2k",
    "initial_state",
    "iterate_elements",
    "step",
    "verify_exact_vs_iterated",
    "TRAJECTORY_NORM_TOL",
    "BlochParams",
    "EllipticBounds",
    "Route",
    "SymmetryReport",
    "Trajectory",
    "decoupled_component",
    "elliptic_bounds",
    "elliptic_extremizers",
    "intermediate_t",
    "map_orbit",
    "parabolic_line",
    "sample_trajectory",
    "symmetry_order_check",
    "trajectory_point",
    "COMPONENT_LIMIT",
    "HYPERBOLIC_GROWTH_LIMIT",
    "MAX_STEP",
    "OdeConfig",
    "OdeMethod",
    "StroboReport",
    "check_hyperbolic_span",
    "integrate",
    "p_of_theta",
    "rhs",
    "stroboscopic_residual",
    "u_of_theta",
    "Scenario",
    "bundled_scenario_names",
    "find_scenario",
    "load_bundled",
    "load_scenario",
    "__version__",
]
