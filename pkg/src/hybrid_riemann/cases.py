"""Built-in Riemann problems and the JSON configuration format.

A configuration document is a JSON object.  Either name a built-in ``case``
and override some of its keys, or spell out every key::

    {
      "case": "sod",
      "scheme": {"kind": "hllx-omega", "omega": 0.5},
      "grid": {"n_cells": 400}
    }

The full key set is documented in ``data/case_schema.json``.  Unknown keys
anywhere in the document are rejected.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

from .solvers import SCHEME_NAMES, FluxScheme, Kind, Path
from .timeloop import CaseConfig, ConfigError, Grid1D

_R13_LEFT = (3.0, 0.0, 0.1, 0.0, 3.0, 3.0, 3.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0)
_R13_RIGHT = (1.0, 0.0, 0.0, 0.1, 3.0, 3.0, 3.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0)

BUILTIN = {
    "sod": dict(
        model="euler",
        model_params={"gamma": 1.4},
        left=(1.0, 0.0, 1.0),
        right=(0.125, 0.0, 0.1),
        grid=Grid1D(-2.0, 2.0, 200),
        cfl=0.95,
        t_end=0.8,
    ),
    "mhd-shocktube": dict(
        model="mhd",
        model_params={"gamma": 5.0 / 3.0, "bx": 1.5},
        left=(1.0, 0.0, 0.0, 0.0, 1.0, 0.5, 0.6),
        right=(1.0, 0.0, 0.0, 0.0, 1.0, 1.6, 0.2),
        grid=Grid1D(-4.0, 4.0, 200),
        cfl=0.95,
        t_end=1.0,
    ),
    "r13-riemann": dict(
        model="r13",
        model_params={},
        left=_R13_LEFT,
        right=_R13_RIGHT,
        grid=Grid1D(-2.0, 2.4, 200),
        cfl=0.8,
        t_end=0.9,
    ),
    "advection-sign": dict(
        model="advection",
        model_params={"a": 1.0},
        left=(-1.0,),
        right=(1.0,),
        grid=Grid1D(-1.0, 1.0, 200),
        cfl=0.5,
        t_end=0.25,
    ),
}

CASE_NAMES = tuple(BUILTIN)

_TOP_KEYS = {
    "case", "name", "model", "model_params", "left", "right", "x0",
    "grid", "cfl", "t_end", "scheme", "snapshot_times", "output",
}
_GRID_KEYS = {"x_left", "x_right", "n_cells"}
_SCHEME_KEYS = {"kind", "omega", "path"}
_OUTPUT_KEYS = {"format", "path", "variables", "include_reference", "include_diagnostics", "reference"}
_MODEL_PARAMS = {
    "advection": {"a"},
    "burgers": set(),
    "euler": {"gamma"},
    "mhd": {"gamma", "bx"},
    "r13": {"closure", "kappa", "validate"},
}


@dataclass(frozen=True)
class OutputSpec:
    format: str = "csv"
    path: str = "-"
    variables: tuple = ()
    include_reference: bool = False
    include_diagnostics: bool = False
    # "exact" or "fine:N"
    reference: str = "exact"

    def __post_init__(self):
        if self.format not in ("csv", "json"):
            raise ConfigError(f"output.format: must be 'csv' or 'json', got {self.format!r}")
        object.__setattr__(self, "variables", tuple(self.variables))


def builtin_case(name, scheme: FluxScheme | None = None, **overrides) -> CaseConfig:
    try:
        base = dict(BUILTIN[name])
    except KeyError:
        raise ConfigError(f"case: unknown built-in {name!r}; choose from {list(CASE_NAMES)}") from None
    base["model_params"] = dict(base["model_params"])
    base.update(overrides)
    return CaseConfig(scheme=scheme or FluxScheme(Kind.HLL), name=name, **base)


def _reject_unknown(obj, allowed, where):
    if not isinstance(obj, dict):
        raise ConfigError(f"{where}: must be an object")
    extra = sorted(set(obj) - allowed)
    if extra:
        raise ConfigError(f"{where}: unknown key {extra[0]!r}; allowed keys are {sorted(allowed)}")


def _number(value, key, *, positive=False, integer=False):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{key}: must be a number")
    if integer and (not isinstance(value, int) and not float(value).is_integer()):
        raise ConfigError(f"{key}: must be an integer")
    if positive and not value > 0:
        raise ConfigError(f"{key}: must be positive")
    return int(value) if integer else float(value)


def _state(value, key):
    if not isinstance(value, list) or not value:
        raise ConfigError(f"{key}: must be a non-empty list of numbers")
    return tuple(_number(v, f"{key}[{i}]") for i, v in enumerate(value))


def _scheme(obj) -> FluxScheme:
    if isinstance(obj, str):
        obj = {"kind": obj}
    _reject_unknown(obj, _SCHEME_KEYS, "scheme")
    kind = obj.get("kind")
    if kind not in SCHEME_NAMES:
        raise ConfigError(f"scheme.kind: must be one of {list(SCHEME_NAMES)}, got {kind!r}")
    path = obj.get("path")
    if path is not None and path not in [p.value for p in Path]:
        raise ConfigError(f"scheme.path: must be 'composite' or 'matrix', got {path!r}")
    omega = obj.get("omega")
    if omega is not None:
        omega = _number(omega, "scheme.omega")
    try:
        return FluxScheme(Kind(kind), omega, Path(path) if path else None)
    except ValueError as exc:
        raise ConfigError(f"scheme: {exc}") from None


def _output(obj) -> OutputSpec:
    _reject_unknown(obj, _OUTPUT_KEYS, "output")
    for key in ("include_reference", "include_diagnostics"):
        if key in obj and not isinstance(obj[key], bool):
            raise ConfigError(f"output.{key}: must be true or false")
    if "variables" in obj and not (
        isinstance(obj["variables"], list) and all(isinstance(v, str) for v in obj["variables"])
    ):
        raise ConfigError("output.variables: must be a list of variable names")
    return OutputSpec(**obj)


def from_dict(doc) -> tuple[CaseConfig, OutputSpec | None]:
    """Validate a decoded configuration document."""
    _reject_unknown(doc, _TOP_KEYS, "config")
    if "case" in doc:
        name = doc["case"]
        if name not in BUILTIN:
            raise ConfigError(f"case: unknown built-in {name!r}; choose from {list(CASE_NAMES)}")
        base = dict(BUILTIN[name])
        base["model_params"] = dict(base["model_params"])
        base["name"] = name
        base["scheme"] = FluxScheme(Kind.HLL)
    else:
        missing = [k for k in ("model", "left", "right", "grid", "cfl", "t_end", "scheme") if k not in doc]
        if missing:
            raise ConfigError(f"{missing[0]}: required when no built-in case is named")
        base = {}

    if "model" in doc:
        if doc["model"] not in _MODEL_PARAMS:
            raise ConfigError(f"model: must be one of {sorted(_MODEL_PARAMS)}, got {doc['model']!r}")
        if "case" in doc and doc["model"] != base["model"]:
            base["model_params"] = {}
        base["model"] = doc["model"]
    if "model_params" in doc:
        _reject_unknown(doc["model_params"], _MODEL_PARAMS[base["model"]], "model_params")
        base["model_params"] = {**base.get("model_params", {}), **doc["model_params"]}
    for key in ("left", "right"):
        if key in doc:
            base[key] = _state(doc[key], key)
    if "grid" in doc:
        g = doc["grid"]
        _reject_unknown(g, _GRID_KEYS, "grid")
        old = base.get("grid")
        if old is None and set(g) != _GRID_KEYS:
            raise ConfigError(f"grid: requires keys {sorted(_GRID_KEYS)}")
        vals = {
            "x_left": _number(g["x_left"], "grid.x_left") if "x_left" in g else old.x_left,
            "x_right": _number(g["x_right"], "grid.x_right") if "x_right" in g else old.x_right,
            "n_cells": _number(g["n_cells"], "grid.n_cells", positive=True, integer=True)
            if "n_cells" in g
            else old.n_cells,
        }
        base["grid"] = Grid1D(**vals)
    if "cfl" in doc:
        base["cfl"] = _number(doc["cfl"], "cfl")
    if "t_end" in doc:
        base["t_end"] = _number(doc["t_end"], "t_end")
    if "x0" in doc:
        base["x0"] = _number(doc["x0"], "x0")
    if "scheme" in doc:
        base["scheme"] = _scheme(doc["scheme"])
    if "snapshot_times" in doc:
        if not isinstance(doc["snapshot_times"], list):
            raise ConfigError("snapshot_times: must be a list of numbers")
        base["snapshot_times"] = tuple(_number(t, "snapshot_times") for t in doc["snapshot_times"])
    if "name" in doc:
        if not isinstance(doc["name"], str):
            raise ConfigError("name: must be a string")
        base["name"] = doc["name"]

    case = CaseConfig(**base)
    try:
        case.make_model()  # checks state lengths and model parameters
    except ConfigError:
        raise
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"model_params: {exc}") from None
    output = _output(doc["output"]) if "output" in doc else None
    return case, output


def parse_config(text) -> CaseConfig:
    """Parse a JSON configuration document into a validated :class:`CaseConfig`."""
    return parse_document(text)[0]


def parse_document(text):
    """Like :func:`parse_config` but also returns the optional ``output`` section."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config: invalid JSON ({exc})") from None
    return from_dict(doc)


def to_dict(case: CaseConfig, output: OutputSpec | None = None) -> dict:
    """Full (no built-in shorthand) configuration document for ``case``."""
    scheme = {"kind": case.scheme.kind.value}
    if case.scheme.omega is not None:
        scheme["omega"] = case.scheme.omega
    if case.scheme.path is not None:
        scheme["path"] = case.scheme.path.value
    doc = {
        "name": case.name,
        "model": case.model,
        "model_params": dict(case.model_params),
        "left": list(case.left),
        "right": list(case.right),
        "x0": case.x0,
        "grid": {"x_left": case.grid.x_left, "x_right": case.grid.x_right, "n_cells": case.grid.n_cells},
        "cfl": case.cfl,
        "t_end": case.t_end,
        "scheme": scheme,
        "snapshot_times": list(case.snapshot_times),
    }
    if output is not None:
        doc["output"] = {
            "format": output.format,
            "path": output.path,
            "variables": list(output.variables),
            "include_reference": output.include_reference,
            "include_diagnostics": output.include_diagnostics,
            "reference": output.reference,
        }
    return doc


def to_json(case: CaseConfig, output: OutputSpec | None = None) -> str:
    return json.dumps(to_dict(case, output), indent=2) + "\n"


def schema() -> dict:
    """The shipped JSON schema of configuration documents."""
    text = resources.files("hybrid_riemann").joinpath("data/case_schema.json").read_text()
    return json.loads(text)
