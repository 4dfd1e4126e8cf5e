"""Numerical flux functions ``f(u_left, u_right)``.

Every flux is evaluated for a batch of interfaces at once: ``u_left`` and
``u_right`` have shape ``(n_vars, m)`` (or ``(n_vars,)`` for one interface).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from . import dissipation as dis
from .core import DEGENERATE_WIDTH, MeshRatio, Model, assemble_flux, jacfree_apply


class Kind(enum.Enum):
    LF = "lf"
    RUSANOV = "rusanov"
    HLL = "hll"
    LW2STEP = "lw"
    FORCE = "force"
    MUSTA1 = "musta1"
    UPWIND_LINEAR = "upwind"
    HLLX = "hllx"
    HLL_OMEGA = "hll-omega"
    HLLX_OMEGA = "hllx-omega"


class Path(enum.Enum):
    COMPOSITE = "composite"
    MATRIX = "matrix"


_NEEDS_OMEGA = {Kind.HLL_OMEGA, Kind.HLLX_OMEGA}
_HAS_PATH = {Kind.HLLX, Kind.HLLX_OMEGA}

SCHEME_NAMES = tuple(k.value for k in Kind)


@dataclass(frozen=True)
class FluxScheme:
    kind: Kind
    omega: float | None = None
    path: Path | None = None

    def __post_init__(self):
        kind = Kind(self.kind)
        object.__setattr__(self, "kind", kind)
        if kind in _NEEDS_OMEGA:
            if self.omega is None:
                raise ValueError(f"scheme {kind.value} requires omega in [0,1]")
            omega = float(self.omega)
            if not 0.0 <= omega <= 1.0:
                raise ValueError(f"omega in [0,1] required, got {omega}")
            object.__setattr__(self, "omega", omega)
        elif self.omega is not None:
            raise ValueError(f"scheme {kind.value} takes no omega")
        if kind in _HAS_PATH:
            object.__setattr__(self, "path", Path(self.path or Path.COMPOSITE))
        elif self.path is not None:
            raise ValueError(f"scheme {kind.value} has a single realization; path not allowed")

    @classmethod
    def from_name(cls, name, omega=None, path=None):
        """Build a scheme from its CLI name, ignoring parameters it does not use."""
        kind = Kind(name)
        return cls(
            kind,
            omega if kind in _NEEDS_OMEGA else None,
            (Path(path) if path is not None else None) if kind in _HAS_PATH else None,
        )

    @property
    def name(self):
        return self.kind.value

    def label(self):
        parts = [self.kind.value]
        if self.omega is not None:
            parts.append(f"omega={self.omega:g}")
        if self.path is not None:
            parts.append(self.path.value)
        return " ".join(parts)


def flux_pair_mean(model: Model, u_left, u_right):
    return 0.5 * (model.flux(u_left) + model.flux(u_right))


def scheme_dissipation(scheme: FluxScheme, nu, bracket):
    """Scalar dissipation function ``d(nu)`` realized by ``scheme``."""
    k = scheme.kind
    if k is Kind.LF:
        return dis.d_classic("LF", nu)
    if k is Kind.RUSANOV:
        return dis.d_classic("LLF", nu, bracket)
    if k is Kind.HLL:
        return dis.d_classic("HLL", nu, bracket)
    if k is Kind.LW2STEP:
        return dis.d_classic("LW", nu)
    if k is Kind.FORCE:
        return dis.d_classic("FORCE", nu)
    if k is Kind.MUSTA1:
        return dis.d_classic("MUSTA1", nu)
    if k is Kind.UPWIND_LINEAR:
        return dis.d_classic("UP", nu)
    if k is Kind.HLLX:
        return dis.d_hllx(nu, bracket)
    if k is Kind.HLL_OMEGA:
        return dis.d_hllomega(nu, bracket, scheme.omega)
    return dis.d_hllxomega(nu, bracket, scheme.omega)


class _Interface:
    """Quantities shared by the flux formulas at a batch of interfaces."""

    def __init__(self, model, u_left, u_right, mesh):
        self.model = model
        self.ul = np.asarray(u_left, dtype=float)
        self.ur = np.asarray(u_right, dtype=float)
        if self.ul.shape != self.ur.shape or self.ul.shape[0] != model.n_vars:
            raise ValueError(f"state shapes {self.ul.shape}, {self.ur.shape} do not fit the model")
        self.mesh = mesh
        self.r = mesh.ratio
        self.fl = model.flux(self.ul)
        self.fr = model.flux(self.ur)
        self.fbar = 0.5 * (self.fl + self.fr)
        self.du = self.ur - self.ul
        self.df = self.fr - self.fl
        self.ubar = 0.5 * (self.ul + self.ur)

    def lax_friedrichs(self):
        return assemble_flux(self.fl, self.fr, self.du / self.r)

    def lax_wendroff(self):
        return self.model.flux(self.ubar - 0.5 * self.r * self.df)

    def affine(self, c0, c1):
        """Flux of the dissipation ``d(nu) = c0 + c1 nu``; uses ``A du = f_r - f_l``."""
        return assemble_flux(self.fl, self.fr, c0 * self.du / self.r + c1 * self.df)

    def jacobian_quadratic(self, lmin, lmax):
        """``(A - lmin I)(A - lmax I) du`` with Jacobian-free products at the midpoint."""
        a1 = jacfree_apply(self.model, self.ubar, self.du, power=1)
        a2 = jacfree_apply(self.model, self.ubar, self.du, power=2)
        return a2 - (lmin + lmax) * a1 + lmin * lmax * self.du

    def degenerate(self, lam, omega):
        """Limit of the HLL-type fluxes when both extreme speeds coincide at ``lam``."""
        coef = (1.0 - omega) * np.sign(lam) + omega * self.r * lam
        return assemble_flux(self.fl, self.fr, coef * self.df)


def flux(scheme: FluxScheme, model: Model, u_left, u_right, mesh: MeshRatio, speeds=None):
    """Numerical flux of ``scheme`` at the interfaces ``(u_left, u_right)``.

    ``speeds`` optionally supplies precomputed ``(lambda_min, lambda_max)``
    from ``model.wave_speed_estimate``.
    """
    it = _Interface(model, u_left, u_right, mesh)
    kind = scheme.kind

    if kind is Kind.LF:
        return it.lax_friedrichs()
    if kind is Kind.LW2STEP:
        return it.lax_wendroff()
    if kind is Kind.FORCE:
        return 0.5 * (it.lax_friedrichs() + it.lax_wendroff())
    if kind is Kind.MUSTA1:
        a2 = jacfree_apply(model, it.ubar, it.du, power=2)
        a4 = jacfree_apply(model, it.ubar, it.du, power=4)
        r = it.r
        return assemble_flux(it.fl, it.fr, 0.25 * it.du / r + r * a2 - 0.25 * r**3 * a4)
    if kind is Kind.UPWIND_LINEAR:
        if not (model.linear and hasattr(model, "abs_jacobian_apply")):
            raise TypeError("the upwind flux is only available for linear models")
        return assemble_flux(it.fl, it.fr, model.abs_jacobian_apply(it.du))

    if speeds is None:
        speeds = model.wave_speed_estimate(it.ul, it.ur)
    lmin, lmax = (np.asarray(s, dtype=float) for s in speeds)
    if kind is Kind.RUSANOV:
        return assemble_flux(it.fl, it.fr, np.maximum(np.abs(lmin), np.abs(lmax)) * it.du)

    return _hll_family(scheme, it, lmin, lmax)


def _hll_family(scheme, it, lmin, lmax):
    kind = scheme.kind
    # a one-sided bracket is widened to reach 0, so HLL returns the upwind flux
    lmin, lmax = np.minimum(lmin, 0.0), np.maximum(lmax, 0.0)
    omega = scheme.omega if scheme.omega is not None else 0.0
    nu_min, nu_max = lmin * it.r, lmax * it.r
    degen = (nu_max - nu_min) < DEGENERATE_WIDTH
    if np.any(degen):
        it.model._record("degenerate_bracket", np.count_nonzero(degen))
        if np.all(degen):
            return it.degenerate(0.5 * (lmin + lmax), omega)
        # placeholder bracket keeps the coefficient formulas finite; masked below
        nu_min = np.where(degen, -1.0, nu_min)
        nu_max = np.where(degen, 1.0, nu_max)
    bracket = (nu_min, nu_max)
    lmin_s, lmax_s = nu_min / it.r, nu_max / it.r

    if kind in (Kind.HLL, Kind.HLLX):
        c0, c1 = dis.hll_line(bracket)
    else:
        c0, c1 = dis.hllomega_coeffs(bracket, omega)
    base = it.affine(c0, c1)

    if kind in (Kind.HLL, Kind.HLL_OMEGA):
        out = base
    else:
        if kind is Kind.HLLX:
            c = dis.hllx_coeffs(bracket)
            w0, w1, w2, curv = c.alpha0, c.alpha1, c.alpha2, c.alpha
        else:
            c = dis.beta_coeffs(bracket, omega)
            w0, w1, w2, curv = c.beta0, c.beta1, c.beta2, c.beta
        if scheme.path is Path.COMPOSITE:
            fb = it.fbar
            out = fb + w0 * (it.lax_friedrichs() - fb) + w1 * (base - fb) + w2 * (it.lax_wendroff() - fb)
        else:
            out = base - 0.5 * curv * it.r * it.jacobian_quadratic(lmin_s, lmax_s)

    if np.any(degen):
        out = np.where(degen, it.degenerate(0.5 * (lmin + lmax), omega), out)
    return out
