"""Shared numerics for the finite-volume solvers.

States are numpy arrays whose first axis holds the conserved components.
A single state has shape ``(n_vars,)``; a batch of interface states has
shape ``(n_vars, m)``.  Every routine here broadcasts over the trailing axes.
"""

from __future__ import annotations

import abc
from dataclasses import dataclass, field

import numpy as np

MACHINE_EPS = np.finfo(float).eps
SQRT_EPS = np.sqrt(MACHINE_EPS)


class FluxEvaluationError(ValueError):
    """A flux could not be evaluated, typically on an inadmissible state."""

    def __init__(self, message, state=None):
        super().__init__(message)
        self.state = None if state is None else np.array(state, copy=True)


class DegenerateBracketError(ValueError):
    """The wave bracket has (numerically) coincident extreme speeds."""


# threshold on nu_max - nu_min below which HLL-type formulas are undefined
DEGENERATE_WIDTH = 1e-12


class Model(abc.ABC):
    """A one-dimensional hyperbolic system ``u_t + f(u)_x = 0``.

    Subclasses provide the flux, the conversions between conserved and
    primitive variables and a bound on the characteristic speeds.
    """

    n_vars: int
    variable_names: tuple[str, ...]
    conserved_names: tuple[str, ...]
    #: ``True`` when the flux is a linear map of the state
    linear: bool = False

    def __init__(self):
        self.diagnostics: dict[str, int] = {}

    def _record(self, key, count=1):
        self.diagnostics[key] = self.diagnostics.get(key, 0) + int(count)

    @abc.abstractmethod
    def flux(self, u):
        """Physical flux of conserved state(s) ``u``."""

    @abc.abstractmethod
    def wave_speeds(self, u):
        """Return ``(lambda_min, lambda_max)`` bounds for the state(s) ``u``."""

    def wave_speed_estimate(self, u_left, u_right):
        """Slowest/fastest speed bounds for the Riemann problem ``(u_left, u_right)``."""
        lmin_l, lmax_l = self.wave_speeds(u_left)
        lmin_r, lmax_r = self.wave_speeds(u_right)
        return np.minimum(lmin_l, lmin_r), np.maximum(lmax_l, lmax_r)

    def to_primitive(self, u):
        return np.array(u, dtype=float, copy=True)

    def from_primitive(self, w):
        return np.array(w, dtype=float, copy=True)

    def check_admissible(self, u):
        """Raise :class:`FluxEvaluationError` when ``u`` is not admissible."""
        _require_finite(u)


def _require_finite(u):
    u = np.asarray(u)
    if not np.all(np.isfinite(u)):
        raise FluxEvaluationError("non-finite state", _first_bad_column(u, ~np.isfinite(u)))


def _first_bad_column(u, bad_mask):
    """Extract the first offending state from a batch for error reporting."""
    u = np.asarray(u)
    if u.ndim == 1:
        return u
    bad = np.asarray(bad_mask)
    if bad.ndim == u.ndim:
        bad = np.any(bad, axis=0)
    flat = u.reshape(u.shape[0], -1)
    idx = np.flatnonzero(bad.reshape(-1))
    return flat[:, idx[0]] if idx.size else flat[:, 0]


def inadmissible(u, bad_mask, message):
    """Build a :class:`FluxEvaluationError` for the first state flagged in ``bad_mask``."""
    return FluxEvaluationError(message, _first_bad_column(u, bad_mask))


@dataclass(frozen=True)
class MeshRatio:
    """Cell width and time step of one explicit update."""

    dx: float
    dt: float
    ratio: float = field(init=False)

    def __post_init__(self):
        if not (self.dx > 0 and self.dt > 0):
            raise ValueError(f"dx and dt must be positive, got dx={self.dx}, dt={self.dt}")
        object.__setattr__(self, "ratio", self.dt / self.dx)


@dataclass(frozen=True)
class WaveBracket:
    """Extreme wave speeds of an interface and their Courant numbers.

    Fields may be floats or arrays (one entry per interface).
    """

    lambda_min: object
    lambda_max: object
    nu_min: object
    nu_max: object

    @classmethod
    def from_speeds(cls, lambda_min, lambda_max, mesh: MeshRatio):
        return cls(lambda_min, lambda_max, courant(lambda_min, mesh), courant(lambda_max, mesh))

    @classmethod
    def from_courant(cls, nu_min, nu_max):
        """Bracket given directly in Courant numbers (unit mesh ratio)."""
        return cls(nu_min, nu_max, nu_min, nu_max)


def courant(lam, mesh: MeshRatio):
    """Courant number ``lam * dt / dx``."""
    return lam * mesh.ratio


def spectral_radius(lmin, lmax):
    return np.maximum(np.abs(lmin), np.abs(lmax))


def assemble_flux(f_left, f_right, dissipation_term):
    """Numerical flux ``(f_l + f_r)/2 - D (u_r - u_l)/2``.

    ``dissipation_term`` is the product ``D (u_r - u_l)``, not ``D`` itself.
    """
    f_left = np.asarray(f_left, dtype=float)
    f_right = np.asarray(f_right, dtype=float)
    dissipation_term = np.asarray(dissipation_term, dtype=float)
    if not (f_left.shape == f_right.shape == dissipation_term.shape):
        raise ValueError(
            f"shape mismatch: {f_left.shape}, {f_right.shape}, {dissipation_term.shape}"
        )
    return 0.5 * (f_left + f_right) - 0.5 * dissipation_term


def default_eps(model: Model, u_bar, delta_u):
    """Finite-difference step for Jacobian-free products.

    Balances truncation against roundoff.  Linear fluxes have no truncation
    error, so there the step is taken as large as the state itself.
    """
    u_bar = np.asarray(u_bar, dtype=float)
    delta_u = np.asarray(delta_u, dtype=float)
    ubar_norm = np.max(np.abs(u_bar), axis=0)
    du_norm = np.maximum(np.max(np.abs(delta_u), axis=0), MACHINE_EPS)
    scale = 1.0 if model.linear else SQRT_EPS
    return scale * (1.0 + ubar_norm) / du_norm


def jacfree_apply(model: Model, u_bar, delta_u, power=1, eps=None):
    """Approximate ``A(u_bar)**power @ delta_u`` by nested flux differences.

    Each level applies ``v -> (f(u_bar + eps v) - f(u_bar)) / eps`` with the
    same ``eps``; ``power`` is 1, 2 or 4.
    """
    if power not in (1, 2, 4):
        raise ValueError(f"power must be 1, 2 or 4, got {power}")
    u_bar = np.asarray(u_bar, dtype=float)
    delta_u = np.asarray(delta_u, dtype=float)
    if u_bar.shape != delta_u.shape:
        raise ValueError(f"shape mismatch: {u_bar.shape} vs {delta_u.shape}")
    if eps is None:
        eps = default_eps(model, u_bar, delta_u)
    eps = np.asarray(eps, dtype=float)
    if np.any(eps <= 0):
        raise ValueError("eps must be positive")

    zero = np.max(np.abs(delta_u), axis=0) == 0.0
    if np.all(zero):
        return np.zeros_like(delta_u)

    f0 = model.flux(u_bar)
    v = delta_u
    for _ in range(power):
        v = (model.flux(u_bar + eps * v) - f0) / eps
        if not np.all(np.isfinite(v)):
            raise inadmissible(u_bar + eps * v, ~np.isfinite(v), "non-finite Jacobian-free product")
    return np.where(zero, 0.0, v)
