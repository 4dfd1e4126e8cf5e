"""Hybrid HLL / Lax-Wendroff Riemann solvers for one-dimensional conservation laws."""

from . import analysis, dissipation, reference
from .cases import CASE_NAMES, OutputSpec, builtin_case, parse_config, to_json
from .core import (
    DegenerateBracketError,
    FluxEvaluationError,
    MeshRatio,
    Model,
    WaveBracket,
    jacfree_apply,
)
from .models import R13, Burgers, Euler, IdealMHD, LinearAdvection, LinearSystem, make_model
from .solvers import FluxScheme, Kind, Path, flux
from .timeloop import CaseConfig, ConfigError, Grid1D, RunError, RunResult, run

__version__ = "0.1.0"

__all__ = [
    "CASE_NAMES",
    "Burgers",
    "CaseConfig",
    "ConfigError",
    "DegenerateBracketError",
    "Euler",
    "FluxEvaluationError",
    "FluxScheme",
    "Grid1D",
    "IdealMHD",
    "Kind",
    "LinearAdvection",
    "LinearSystem",
    "MeshRatio",
    "Model",
    "OutputSpec",
    "Path",
    "R13",
    "RunError",
    "RunResult",
    "WaveBracket",
    "analysis",
    "builtin_case",
    "dissipation",
    "flux",
    "jacfree_apply",
    "make_model",
    "parse_config",
    "reference",
    "run",
    "to_json",
]
