"""Scalar dissipation functions ``d(nu)`` and their coefficient algebra.

A numerical flux ``f = (f_l + f_r)/2 - D (u_r - u_l)/2`` whose dissipation
matrix is a function of the Jacobian corresponds, eigenvalue by eigenvalue,
to a scalar function ``d(nu)`` of the Courant number.  The functions below
take ``nu`` and a bracket ``(nu_min, nu_max)`` and broadcast over arrays.

The bracket may be a :class:`~hybrid_riemann.core.WaveBracket` or a plain
``(nu_min, nu_max)`` pair.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import DEGENERATE_WIDTH, DegenerateBracketError
from .io import write_table  # noqa: F401  (re-exported)

CLASSIC_KINDS = ("LF", "LLF", "HLL", "LW", "UP", "FORCE", "MUSTA1")


def _nus(bracket):
    if hasattr(bracket, "nu_min"):
        return np.asarray(bracket.nu_min, dtype=float), np.asarray(bracket.nu_max, dtype=float)
    lo, hi = bracket
    return np.asarray(lo, dtype=float), np.asarray(hi, dtype=float)


def _checked_nus(bracket):
    nmin, nmax = _nus(bracket)
    if np.any(nmax - nmin < DEGENERATE_WIDTH):
        raise DegenerateBracketError(
            f"degenerate wave bracket: nu_max - nu_min < {DEGENERATE_WIDTH}"
        )
    return nmin, nmax


def _omega(omega):
    omega = float(omega)
    if not 0.0 <= omega <= 1.0:
        raise ValueError(f"omega in [0,1] required, got {omega}")
    return omega


def _scalar(x):
    x = np.asarray(x)
    return float(x) if x.ndim == 0 else x


@dataclass(frozen=True)
class HllxCoeffs:
    alpha0: object
    alpha1: object
    alpha2: object
    alpha: object


@dataclass(frozen=True)
class HllxOmegaCoeffs:
    beta: object
    beta0: object
    beta1: object
    beta2: object
    b0: object
    b1: object


def hll_line(bracket):
    """Intercept and slope of the HLL dissipation ``d(nu) = c0 + c1 nu``."""
    nmin, nmax = _checked_nus(bracket)
    width = nmax - nmin
    c0 = (np.abs(nmin) * nmax - np.abs(nmax) * nmin) / width
    c1 = (np.abs(nmax) - np.abs(nmin)) / width
    return _scalar(c0), _scalar(c1)


def d_classic(kind, nu, bracket=None):
    """Dissipation function of a classical or hybrid solver.

    ``kind`` is one of ``LF, LLF, HLL, LW, UP, FORCE, MUSTA1``.  Only ``LLF``
    and ``HLL`` need the bracket.
    """
    nu = np.asarray(nu, dtype=float)
    kind = kind.upper()
    if kind == "LF":
        out = np.ones_like(nu)
    elif kind == "LLF":
        nmin, nmax = _nus(bracket)
        out = np.maximum(np.abs(nmin), np.abs(nmax)) + 0.0 * nu
    elif kind == "UP":
        out = np.abs(nu)
    elif kind == "LW":
        out = nu**2
    elif kind == "FORCE":
        out = 0.5 * (nu**2 + 1.0)
    elif kind == "MUSTA1":
        out = 0.25 + nu**2 - 0.25 * nu**4
    elif kind == "HLL":
        c0, c1 = hll_line(bracket)
        out = c0 + c1 * nu
    else:
        raise ValueError(f"unknown dissipation kind {kind!r}")
    return _scalar(out)


def alpha_coeff(bracket):
    """Curvature coefficient of the HLLX parabola."""
    nmin, nmax = _checked_nus(bracket)
    width = nmax - nmin
    return _scalar((width - np.abs(np.abs(nmax) - np.abs(nmin))) / width**2)


def hllx_coeffs(bracket) -> HllxCoeffs:
    """Weights of LF, HLL and LW in the HLLX dissipation."""
    nmin, nmax = _checked_nus(bracket)
    alpha = np.asarray(alpha_coeff(bracket))
    return HllxCoeffs(
        alpha0=_scalar(alpha * np.abs(nmin * nmax)),
        alpha1=_scalar(1.0 - alpha * (np.abs(nmax) + np.abs(nmin))),
        alpha2=_scalar(alpha),
        alpha=_scalar(alpha),
    )


def d_hllx(nu, bracket):
    nmin, nmax = _checked_nus(bracket)
    nu = np.asarray(nu, dtype=float)
    return _scalar(d_classic("HLL", nu, bracket) + alpha_coeff(bracket) * (nu - nmin) * (nu - nmax))


def d_hllx_weighted(nu, bracket):
    """HLLX dissipation written as the weighted sum of LF, HLL and LW."""
    c = hllx_coeffs(bracket)
    return _scalar(
        c.alpha0 * d_classic("LF", nu)
        + c.alpha1 * d_classic("HLL", nu, bracket)
        + c.alpha2 * d_classic("LW", nu)
    )


def d_omega(nu, omega):
    """Blend ``omega nu^2 + (1 - omega) |nu|`` of Lax-Wendroff and upwind."""
    omega = _omega(omega)
    nu = np.asarray(nu, dtype=float)
    return _scalar(omega * nu**2 + (1.0 - omega) * np.abs(nu))


def hllomega_coeffs(bracket, omega):
    """Intercept ``b0`` and slope ``b1`` of the line through ``d_omega`` at the bracket ends."""
    omega = _omega(omega)
    nmin, nmax = _checked_nus(bracket)
    width = nmax - nmin
    b0 = (
        nmax * (omega * nmin**2 + (1 - omega) * np.abs(nmin))
        - nmin * (omega * nmax**2 + (1 - omega) * np.abs(nmax))
    ) / width
    b1 = ((1 - omega) * (np.abs(nmax) - np.abs(nmin)) + omega * (nmax**2 - nmin**2)) / width
    return _scalar(b0), _scalar(b1)


def d_hllomega(nu, bracket, omega):
    b0, b1 = hllomega_coeffs(bracket, omega)
    return _scalar(b0 + b1 * np.asarray(nu, dtype=float))


def beta_coeffs(bracket, omega) -> HllxOmegaCoeffs:
    """All coefficients of the HLLX-omega dissipation."""
    omega = _omega(omega)
    nmin, nmax = _checked_nus(bracket)
    alpha = np.asarray(alpha_coeff(bracket))
    b0, b1 = hllomega_coeffs(bracket, omega)
    beta = omega + (1 - omega) * alpha
    s = np.abs(nmin) + np.abs(nmax)
    if np.any(s <= 0):
        raise DegenerateBracketError("|nu_min| + |nu_max| vanishes")
    beta0 = beta * (1 - omega) * np.abs(nmin * nmax) / ((1 - omega) + omega * s)
    beta1 = 1.0 - beta / ((1 - omega) / s + omega)
    return HllxOmegaCoeffs(
        beta=_scalar(beta),
        beta0=_scalar(beta0),
        beta1=_scalar(beta1),
        beta2=_scalar(beta),
        b0=b0,
        b1=b1,
    )


def d_hllxomega(nu, bracket, omega):
    nmin, nmax = _checked_nus(bracket)
    nu = np.asarray(nu, dtype=float)
    beta = beta_coeffs(bracket, omega).beta
    return _scalar(d_hllomega(nu, bracket, omega) + beta * (nu - nmin) * (nu - nmax))


def d_hllxomega_weighted(nu, bracket, omega):
    """HLLX-omega dissipation as the weighted sum of LF, HLL-omega and LW."""
    c = beta_coeffs(bracket, omega)
    return _scalar(
        c.beta0 * d_classic("LF", nu)
        + c.beta1 * d_hllomega(nu, bracket, omega)
        + c.beta2 * d_classic("LW", nu)
    )


def anchor_nu(bracket):
    """The extreme Courant number of larger magnitude (ties go to ``nu_max``)."""
    nmin, nmax = _nus(bracket)
    return _scalar(np.where(np.abs(nmax) >= np.abs(nmin), nmax, nmin))


@dataclass(frozen=True)
class RegionReport:
    monotone: bool
    l2_stable: bool
    max_violation: float


def region_check(d_fn, bracket, samples=101, tol=1e-12) -> RegionReport:
    """Sample ``d_fn`` over the bracket and test ``d >= |nu|`` and ``d >= nu^2``."""
    if samples < 2:
        raise ValueError("samples must be >= 2")
    nmin, nmax = (float(x) for x in _nus(bracket))
    nu = np.linspace(nmin, nmax, samples)
    d = np.asarray(d_fn(nu), dtype=float) * np.ones_like(nu)
    monotone = bool(np.all(d >= np.abs(nu) - tol))
    l2 = bool(np.all(d >= nu**2 - tol))
    violation = float(np.max(np.maximum(np.abs(nu) - d, 0.0)))
    if violation <= tol:
        violation = 0.0
    return RegionReport(monotone, l2, violation)


def nonmonotone_threshold(d_fn, samples=20001, tol=1e-12):
    """Smallest ``|nu|`` in ``[0, 1]`` at which ``d_fn`` drops below ``|nu|``.

    Returns ``None`` when ``d_fn`` stays monotone on the whole interval.
    """
    nu = np.linspace(0.0, 1.0, samples)
    bad = np.asarray(d_fn(nu)) < nu - tol
    if not np.any(bad):
        return None
    return float(nu[np.argmax(bad)])


def dissipation_table(bracket, omega=0.3, samples=201):
    """Sample every dissipation function over ``bracket``.

    Returns ``(header, rows)`` suitable for :func:`write_table`.
    """
    nmin, nmax = (float(x) for x in _nus(bracket))
    nu = np.linspace(nmin, nmax, samples)
    columns = {
        "nu": nu,
        "abs": np.abs(nu),
        **{k.lower(): np.asarray(d_classic(k, nu, bracket)) * np.ones_like(nu) for k in CLASSIC_KINDS if k != "UP"},
        "hllx": d_hllx(nu, bracket),
        "d_omega": d_omega(nu, omega),
        "hll_omega": d_hllomega(nu, bracket, omega),
        "hllx_omega": d_hllxomega(nu, bracket, omega),
    }
    header = list(columns)
    rows = np.column_stack([columns[h] for h in header])
    return header, rows
