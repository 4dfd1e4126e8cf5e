"""Modified-equation analysis of the upwind / Lax-Wendroff blend for linear advection.

The blended scheme ``d = (1 - omega) |nu| + omega nu^2`` has the modified equation

    u_t + a u_x = (1 - omega) D_UP u_xx + D_LW u_xxx

whose Riemann solution, in the frame moving with ``a``, depends only on a
rescaled coordinate ``xi_hat`` and one parameter ``d_hat``::

    u~(xi_hat, d_hat) = (2/pi) int_0^inf exp(-d_hat k^2) sin(k xi_hat + k^3) / k dk
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .io import write_table

# Gauss-Legendre rule applied on every panel
_GL_X, _GL_W = np.polynomial.legendre.leggauss(10)
# each panel spans at most this much phase
_PANEL_PHASE = 0.5 * math.pi
# exp(-d_hat K^2) below this is dropped
_TAIL_CUTOFF = 1e-12
_K_LIMIT = 128.0
# panels evaluated per block, bounds memory at large K
_PANEL_BLOCK = 65536


class QuadratureError(ArithmeticError):
    def __init__(self, message, achieved):
        super().__init__(message)
        self.achieved = achieved


class DegenerateDispersionError(ValueError):
    """``D_LW = 0``: the modified equation is purely diffusive."""


@dataclass(frozen=True)
class ModifiedEqCoeffs:
    d_up: float
    d_lw: float
    a: float
    dx: float
    nu: float


@dataclass(frozen=True)
class NondimParams:
    k0: float
    xi0: float
    d_hat: float
    # -1 when D_LW > 0 flips the orientation of xi_hat
    orientation: float = 1.0

    def xi_hat(self, xi):
        return self.orientation * np.asarray(xi, dtype=float) * self.k0

    def profile(self, xi):
        """Dimensional solution at ``xi = x - a t``: ``orientation * u~(xi_hat)``."""
        return self.orientation * utilde(self.xi_hat(xi), self.d_hat)


def modified_eq_coeffs(a, dx, nu) -> ModifiedEqCoeffs:
    if abs(nu) > 1:
        raise ValueError(f"|nu| <= 1 required, got {nu}")
    d_up = 0.5 * a * dx * (1.0 - nu)
    d_lw = a * dx**2 * (nu**2 - 1.0) / 6.0
    return ModifiedEqCoeffs(d_up, d_lw, a, dx, nu)


def blended_coeffs(a, dx, nu, omega) -> ModifiedEqCoeffs:
    """Coefficients of the modified equation of the blended three-point scheme itself.

    Diffusion is ``(1 - omega) D_UP`` as in :func:`modified_eq_coeffs`, but the
    dispersion is ``(a dx^2 / 6)(3 d - 2 nu^2 - 1)`` with ``d = d_omega(nu)``,
    which reduces to ``omega D_LW`` at ``nu = 1/2``.  ``d_up`` is returned
    without the ``(1 - omega)`` factor so the result can be passed to :func:`dhat`.
    """
    base = modified_eq_coeffs(a, dx, nu)
    d = (1.0 - omega) * abs(nu) + omega * nu**2
    d_lw = a * dx**2 * (3.0 * d - 2.0 * nu**2 - 1.0) / 6.0
    return ModifiedEqCoeffs(base.d_up, d_lw, a, dx, nu)


def dhat(d_up, d_lw, t, omega) -> NondimParams:
    """Scales ``k0 = (|D_LW| t)^(-1/3)`` and ``d_hat = (t / D_LW^2)^(1/3) D_UP (1 - omega)``."""
    if not t > 0:
        raise ValueError("t must be positive")
    if d_lw == 0:
        raise DegenerateDispersionError("D_LW = 0: pure diffusion, no dispersive scaling")
    k0 = (abs(d_lw) * t) ** (-1.0 / 3.0)
    d_hat = (t / d_lw**2) ** (1.0 / 3.0) * d_up * (1.0 - omega)
    # D_LW > 0 turns sin(k xi - D_LW t k^3) into the reflected profile
    orientation = 1.0 if d_lw < 0 else -1.0
    return NondimParams(k0, 1.0 / k0, d_hat, orientation)


def _panel_edges(xi, k_max):
    """Panel edges on [0, k_max], uniform in ``s = (|xi|+1) k + k^3``."""
    c = abs(xi) + 1.0
    s_max = c * k_max + k_max**3
    n = max(4, math.ceil(s_max / _PANEL_PHASE))
    s = np.linspace(0.0, s_max, n + 1)
    # real root of k^3 + c k - s = 0 (Cardano, one real root since c > 0)
    disc = np.sqrt(0.25 * s**2 + c**3 / 27.0)
    k = np.cbrt(0.5 * s + disc) + np.cbrt(0.5 * s - disc)
    k[0], k[-1] = 0.0, k_max
    return k


def _integrand(k, xi, d_hat):
    safe = np.where(k == 0.0, 1.0, k)
    val = np.exp(-d_hat * k**2) * np.sin(k * xi + k**3) / safe
    return np.where(k == 0.0, xi, val)


def _truncated(xi, d_hat, k_max):
    edges = _panel_edges(xi, k_max)
    core = 0.0
    lo, hi = edges[:-1, None], edges[1:, None]
    for i in range(0, lo.shape[0], _PANEL_BLOCK):
        a, b = lo[i : i + _PANEL_BLOCK], hi[i : i + _PANEL_BLOCK]
        nodes = 0.5 * (a + b) + 0.5 * (b - a) * _GL_X
        core += np.sum(0.5 * (b - a) * _GL_W * _integrand(nodes, xi, d_hat))
    # leading integration-by-parts term of the remaining tail
    dphi = xi + 3.0 * k_max**2
    tail = math.exp(-d_hat * k_max**2) * math.cos(k_max * xi + k_max**3) / (k_max * dphi)
    return core + tail


def _utilde_one(xi, d_hat, tol):
    k_start = max(8.0, 2.0 * math.sqrt(abs(xi) / 3.0) + 2.0)
    if d_hat > 0:
        k_decay = math.sqrt(-math.log(_TAIL_CUTOFF) / d_hat)
        if k_decay <= k_start:
            return 2.0 / math.pi * _truncated(xi, d_hat, k_decay)
    else:
        k_decay = math.inf
    k = k_start
    prev = _truncated(xi, d_hat, k)
    diff = math.inf
    while True:
        k_next = min(2.0 * k, k_decay)
        if k_next > _K_LIMIT:
            raise QuadratureError(
                f"u~({xi}, {d_hat}) did not converge below K={_K_LIMIT}", achieved=abs(diff)
            )
        cur = _truncated(xi, d_hat, k_next)
        diff = abs(cur - prev)
        if diff <= tol or k_next == k_decay:
            return 2.0 / math.pi * cur
        k, prev = k_next, cur


def utilde(xi_hat, d_hat, tol=1e-9):
    """Non-dimensional Riemann solution ``u~(xi_hat, d_hat)``; ``xi_hat`` may be an array."""
    if d_hat < 0:
        raise ValueError("d_hat >= 0 required")
    xi = np.asarray(xi_hat, dtype=float)
    out = np.array([_utilde_one(float(v), float(d_hat), tol) for v in xi.ravel()])
    return out.reshape(xi.shape) if xi.ndim else float(out[0])


def overshoot_series(result, variable="u", side="upper"):
    """Per-step maximum of ``variable`` recorded by the time loop.

    ``side="lower"`` returns ``-min`` instead, the maximum of the mirrored
    problem ``u -> -u`` (identical for linear schemes).
    """
    if side == "upper":
        return np.asarray(result.diagnostics[f"max_{variable}"], dtype=float)
    if side == "lower":
        return -np.asarray(result.diagnostics[f"min_{variable}"], dtype=float)
    raise ValueError(f"side must be 'upper' or 'lower', got {side!r}")


def rescale_run(result, omega, variable=0, dispersion="displayed"):
    """Map an advection run onto ``(xi_hat, u)`` with the scales of its own ``(a, dx, nu, t)``.

    ``dispersion="displayed"`` uses ``D_LW`` as the dispersion coefficient for
    every ``omega``; ``"blended"`` uses that of the blended scheme
    (:func:`blended_coeffs`).  Returns ``(xi_hat, u, params)``.
    """
    a = result.model.a
    dt = np.asarray(result.diagnostics["dt"])
    nu = float(a * np.mean(dt) / result.dx)
    if dispersion == "displayed":
        co = modified_eq_coeffs(a, result.dx, nu)
    elif dispersion == "blended":
        co = blended_coeffs(a, result.dx, nu, omega)
    else:
        raise ValueError(f"dispersion must be 'displayed' or 'blended', got {dispersion!r}")
    params = dhat(co.d_up, co.d_lw, result.t, omega)
    xi = result.x - result.config.x0 - a * result.t
    return params.xi_hat(xi), params.orientation * result.final[variable], params


def write_utilde_table(path, xi_hat, d_hats):
    xi_hat = np.asarray(xi_hat, dtype=float)
    cols = [xi_hat] + [utilde(xi_hat, d) for d in d_hats]
    header = ["xi_hat"] + [f"d_hat={d:g}" for d in d_hats]
    write_table(path, header, np.column_stack(cols))


def write_overshoot_table(path, series: dict):
    """``series`` maps a label to a per-step max array; all arrays share a length."""
    labels = list(series)
    n = len(next(iter(series.values())))
    cols = [np.arange(1, n + 1)] + [np.asarray(series[k]) for k in labels]
    write_table(path, ["step"] + labels, np.column_stack(cols))
