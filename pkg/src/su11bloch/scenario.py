"""Scenario files: one TOML document describing one dynamical run.

A scenario names the case class, the three vectors, the rate ratio (either
directly as ``lambda`` or through ``beta``), the sampling step ``alpha``
with an explicit angle unit, and output/integrator settings.  Angles
default to radians; files may say ``angle_unit = "deg"`` instead — units
are never guessed.  Vector components are plain decimals (no expression
parsing), e.g. 1.4142135623730951 for the square root of 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

from .bloch_ode import OdeConfig, OdeMethod
from .closed_form import BlochParams, _require_class
from .minkowski import CaseClass, MVec3

__all__ = [
    "Scenario",
    "LAMBDA_CONSISTENCY_TOL",
    "load_scenario",
    "load_bundled",
    "bundled_scenario_names",
    "find_scenario",
]

#: Permitted mismatch between a given lambda and beta/(2*alpha).
LAMBDA_CONSISTENCY_TOL = 1e-9

_TOP_KEYS = {
    "name",
    "description",
    "class",
    "q",
    "p",
    "r0",
    "lambda",
    "beta",
    "alpha",
    "angle_unit",
    "K_max",
    "chi0",
    "n_samples",
    "outputs",
    "ode",
}
_ODE_KEYS = {"step", "reproject_every", "method"}
_OUTPUTS = ("csv", "json", "svg")


@dataclass(frozen=True)
class Scenario:
    """A fully validated run description; angles are in radians here."""

    name: str
    description: str
    params: BlochParams
    r0: MVec3
    alpha: float
    beta: float
    k_max: int
    chi0: float
    n_samples: int
    ode: OdeConfig
    outputs: tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.name:
            raise ValueError("scenario name must be nonempty")
        if not math.isfinite(self.alpha) or self.alpha <= 0.0:
            raise ValueError(f"alpha must be positive and finite, got {self.alpha!r}")
        if abs(self.beta - 2.0 * self.params.lam * self.alpha) > LAMBDA_CONSISTENCY_TOL * max(
            1.0, abs(self.beta)
        ):
            raise ValueError(
                "scenario violates the invariant lambda = beta / (2 * alpha): "
                f"beta = {self.beta!r} vs 2 * lambda * alpha = {2.0 * self.params.lam * self.alpha!r}"
            )
        if not isinstance(self.k_max, int) or isinstance(self.k_max, bool) or self.k_max < 1:
            raise ValueError(f"K_max must be a positive integer, got {self.k_max!r}")
        if not math.isfinite(self.chi0) or not 0.0 < self.chi0 < 2.0 * math.pi:
            raise ValueError(f"chi0 must lie in (0, 2*pi), got {self.chi0!r}")
        if (
            not isinstance(self.n_samples, int)
            or isinstance(self.n_samples, bool)
            or self.n_samples < 2
        ):
            raise ValueError(f"n_samples must be an integer >= 2, got {self.n_samples!r}")
        for item in self.outputs:
            if item not in _OUTPUTS:
                raise ValueError(
                    f"unknown output kind {item!r}; valid kinds: {', '.join(_OUTPUTS)}"
                )
        _require_class(self.params, self.r0)

    @property
    def theta_end(self) -> float:
        return self.k_max * self.alpha


def _require_keys(data: dict, required: tuple[str, ...], where: str) -> None:
    missing = [key for key in required if key not in data]
    if missing:
        raise ValueError(f"{where} is missing required keys: {', '.join(missing)}")


def _as_real(value, key: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValueError(f"key {key!r} must be a number, got {value!r}")
    if not math.isfinite(float(value)):
        raise ValueError(f"key {key!r} must be finite, got {value!r}")
    return float(value)


def _as_int(value, key: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ValueError(f"key {key!r} must be an integer, got {value!r}")
    return value


def _as_vector(value, key: str) -> MVec3:
    if not isinstance(value, list) or len(value) != 3:
        raise ValueError(f"key {key!r} must be a list of exactly 3 numbers, got {value!r}")
    return MVec3.from_iterable(_as_real(component, key) for component in value)


def _parse(data: dict, default_name: str) -> Scenario:
    if not isinstance(data, dict):
        raise ValueError("scenario document must be a table of keys")
    unknown = sorted(set(data) - _TOP_KEYS)
    if unknown:
        raise ValueError(f"unknown scenario keys: {', '.join(unknown)}")
    _require_keys(data, ("class", "q", "p", "r0", "alpha", "K_max"), "scenario")

    case_label = data["class"]
    labels = {c.label: c for c in CaseClass}
    if case_label not in labels:
        raise ValueError(
            f"class must be one of {sorted(labels)}, got {case_label!r}"
        )
    case = labels[case_label]

    unit = data.get("angle_unit", "rad")
    if unit not in ("rad", "deg"):
        raise ValueError(f"angle_unit must be 'rad' or 'deg', got {unit!r}")
    to_rad = math.radians if unit == "deg" else float

    alpha = to_rad(_as_real(data["alpha"], "alpha"))
    if alpha <= 0.0:
        raise ValueError(f"alpha must be positive, got {alpha!r}")

    has_lambda = "lambda" in data
    has_beta = "beta" in data
    if not has_lambda and not has_beta:
        raise ValueError("scenario must provide 'lambda' or 'beta' (or both)")
    if has_beta:
        beta = to_rad(_as_real(data["beta"], "beta"))
        lam = _as_real(data["lambda"], "lambda") if has_lambda else beta / (2.0 * alpha)
    else:
        lam = _as_real(data["lambda"], "lambda")
        beta = 2.0 * lam * alpha

    ode_data = data.get("ode", {})
    if not isinstance(ode_data, dict):
        raise ValueError("the [ode] section must be a table")
    unknown_ode = sorted(set(ode_data) - _ODE_KEYS)
    if unknown_ode:
        raise ValueError(f"unknown [ode] keys: {', '.join(unknown_ode)}")
    method_label = ode_data.get("method", OdeMethod.RK4.value)
    methods = {m.value: m for m in OdeMethod}
    if method_label not in methods:
        raise ValueError(f"ode.method must be one of {sorted(methods)}, got {method_label!r}")
    ode = OdeConfig(
        step=_as_real(ode_data.get("step", 1e-3), "ode.step"),
        reproject_every=_as_int(ode_data.get("reproject_every", 0), "ode.reproject_every"),
        method=methods[method_label],
    )

    outputs = data.get("outputs", list(_OUTPUTS))
    if not isinstance(outputs, list) or not all(isinstance(o, str) for o in outputs):
        raise ValueError(f"outputs must be a list of strings, got {outputs!r}")

    name = data.get("name", default_name)
    description = data.get("description", "")
    if not isinstance(name, str) or not isinstance(description, str):
        raise ValueError("name and description must be strings")

    params = BlochParams(
        q=_as_vector(data["q"], "q"),
        p=_as_vector(data["p"], "p"),
        lam=lam,
        case=case,
    )
    return Scenario(
        name=name,
        description=description,
        params=params,
        r0=_as_vector(data["r0"], "r0"),
        alpha=alpha,
        beta=beta,
        k_max=_as_int(data["K_max"], "K_max"),
        chi0=_as_real(data.get("chi0", 1.0), "chi0"),
        n_samples=_as_int(data.get("n_samples", 1024), "n_samples"),
        ode=ode,
        outputs=tuple(outputs),
    )


def load_scenario(path) -> Scenario:
    """Parse and validate a scenario TOML file from the filesystem."""
    p = Path(path)
    with p.open("rb") as fh:
        data = tomllib.load(fh)
    return _parse(data, p.stem)


def bundled_scenario_names() -> tuple[str, ...]:
    """Names of the scenarios shipped inside the package, sorted."""
    root = resources.files(__package__) / "scenarios"
    names = [
        entry.name.removesuffix(".toml")
        for entry in root.iterdir()
        if entry.name.endswith(".toml")
    ]
    return tuple(sorted(names))


def load_bundled(name: str) -> Scenario:
    """Load one of the scenarios shipped inside the package by name."""
    candidate = resources.files(__package__) / "scenarios" / f"{name}.toml"
    if not candidate.is_file():
        raise ValueError(
            f"no bundled scenario named {name!r}; available: "
            f"{', '.join(bundled_scenario_names())}"
        )
    data = tomllib.loads(candidate.read_text(encoding="utf-8"))
    return _parse(data, name)


def find_scenario(spec: str) -> Scenario:
    """Resolve a CLI argument: an existing file path first, a bundled name second."""
    path = Path(spec)
    if path.is_file():
        return load_scenario(path)
    stem = spec.removesuffix(".toml")
    if stem in bundled_scenario_names():
        return load_bundled(stem)
    raise ValueError(
        f"{spec!r} is neither a scenario file nor a bundled scenario name; "
        f"bundled: {', '.join(bundled_scenario_names())}"
    )
