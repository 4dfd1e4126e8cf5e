"""Reference solutions and error norms.

The exact Riemann solver for the Euler equations follows the classical
star-pressure construction (two nonlinear waves around a contact).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .solvers import FluxScheme, Kind
from .timeloop import CaseConfig, Grid1D, block_average, run

NEWTON_TOL = 1e-12
NEWTON_MAX_ITER = 100


class VacuumError(ValueError):
    pass


@dataclass(frozen=True)
class ExactSodSolution:
    """Self-similar solution of an Euler Riemann problem, primitive ``(rho, v, p)``."""

    gamma: float
    left: tuple
    right: tuple
    p_star: float
    u_star: float
    rho_star_left: float
    rho_star_right: float
    # (head, tail) of a rarefaction, or (shock, shock) for a shock
    left_wave: tuple
    right_wave: tuple

    @property
    def contact_speed(self):
        return self.u_star

    def sample(self, xi):
        """Primitive state at ``xi = (x - x0) / t``; returns shape ``(3,) + xi.shape``."""
        xi = np.asarray(xi, dtype=float)
        g = self.gamma
        rl, ul, pl = self.left
        rr, ur, pr = self.right
        cl, cr = np.sqrt(g * pl / rl), np.sqrt(g * pr / rr)
        rho = np.empty_like(xi)
        u = np.empty_like(xi)
        p = np.empty_like(xi)

        left_side = xi <= self.u_star
        # left of the contact
        head, tail = self.left_wave
        if self.p_star > pl:  # shock
            pre = xi < head
            rho[left_side] = np.where(pre, rl, self.rho_star_left)[left_side]
            u[left_side] = np.where(pre, ul, self.u_star)[left_side]
            p[left_side] = np.where(pre, pl, self.p_star)[left_side]
        else:
            fan_u = 2.0 / (g + 1) * (cl + 0.5 * (g - 1) * ul + xi)
            fan_c = 2.0 / (g + 1) * (cl + 0.5 * (g - 1) * (ul - xi))
            fan_rho = rl * (fan_c / cl) ** (2.0 / (g - 1))
            fan_p = pl * (fan_c / cl) ** (2.0 * g / (g - 1))
            r = np.where(xi < head, rl, np.where(xi < tail, fan_rho, self.rho_star_left))
            v = np.where(xi < head, ul, np.where(xi < tail, fan_u, self.u_star))
            q = np.where(xi < head, pl, np.where(xi < tail, fan_p, self.p_star))
            rho[left_side], u[left_side], p[left_side] = r[left_side], v[left_side], q[left_side]

        right_side = ~left_side
        head, tail = self.right_wave
        if self.p_star > pr:
            post = xi > head
            rho[right_side] = np.where(post, rr, self.rho_star_right)[right_side]
            u[right_side] = np.where(post, ur, self.u_star)[right_side]
            p[right_side] = np.where(post, pr, self.p_star)[right_side]
        else:
            fan_u = 2.0 / (g + 1) * (-cr + 0.5 * (g - 1) * ur + xi)
            fan_c = 2.0 / (g + 1) * (cr - 0.5 * (g - 1) * (ur - xi))
            fan_rho = rr * (fan_c / cr) ** (2.0 / (g - 1))
            fan_p = pr * (fan_c / cr) ** (2.0 * g / (g - 1))
            r = np.where(xi > head, rr, np.where(xi > tail, fan_rho, self.rho_star_right))
            v = np.where(xi > head, ur, np.where(xi > tail, fan_u, self.u_star))
            q = np.where(xi > head, pr, np.where(xi > tail, fan_p, self.p_star))
            rho[right_side], u[right_side], p[right_side] = r[right_side], v[right_side], q[right_side]
        return np.stack([rho, u, p])


def _wave_function(p, rho, pk, ck, g):
    """Velocity jump across one nonlinear wave and its derivative in ``p``."""
    if p > pk:
        a = 2.0 / ((g + 1) * rho)
        b = (g - 1) / (g + 1) * pk
        root = np.sqrt(a / (p + b))
        return (p - pk) * root, root * (1.0 - 0.5 * (p - pk) / (p + b))
    ratio = p / pk
    f = 2.0 * ck / (g - 1) * (ratio ** ((g - 1) / (2 * g)) - 1.0)
    df = 1.0 / (rho * ck) * ratio ** (-(g + 1) / (2 * g))
    return f, df


def star_pressure(gamma, left, right):
    """Solve for ``(p*, u*)`` by safeguarded Newton iteration.

    Falls back to bisection when Newton fails to converge.
    """
    g = float(gamma)
    rl, ul, pl = (float(v) for v in left)
    rr, ur, pr = (float(v) for v in right)
    cl, cr = np.sqrt(g * pl / rl), np.sqrt(g * pr / rr)
    if 2.0 * (cl + cr) / (g - 1) <= ur - ul:
        raise VacuumError("initial data generate vacuum")

    def residual(p):
        fl, dfl = _wave_function(p, rl, pl, cl, g)
        fr, dfr = _wave_function(p, rr, pr, cr, g)
        return fl + fr + (ur - ul), dfl + dfr

    # two-rarefaction guess, always positive
    z = (g - 1) / (2 * g)
    p = ((cl + cr - 0.5 * (g - 1) * (ur - ul)) / (cl / pl**z + cr / pr**z)) ** (1 / z)
    p = max(p, 1e-14)
    lo, hi = 0.0, max(pl, pr, p)
    while residual(hi)[0] < 0:
        hi *= 2.0
    converged = False
    for _ in range(NEWTON_MAX_ITER):
        f, df = residual(p)
        if abs(f) <= NEWTON_TOL:
            converged = True
            break
        if f < 0:
            lo = max(lo, p)
        else:
            hi = min(hi, p)
        p_new = p - f / df
        if not lo < p_new < hi:
            p_new = 0.5 * (lo + hi)
        p = p_new
    if not converged:
        lo, hi = 0.0, max(hi, p)
        for _ in range(400):
            p = 0.5 * (lo + hi)
            f = residual(p)[0]
            if abs(f) <= NEWTON_TOL or hi - lo < 1e-15 * hi:
                break
            lo, hi = (p, hi) if f < 0 else (lo, p)
    fl = _wave_function(p, rl, pl, cl, g)[0]
    fr = _wave_function(p, rr, pr, cr, g)[0]
    u = 0.5 * (ul + ur) + 0.5 * (fr - fl)
    return p, u


def solve_riemann(gamma, left, right) -> ExactSodSolution:
    g = float(gamma)
    if g <= 1:
        raise ValueError("gamma must exceed 1")
    left = tuple(float(v) for v in left)
    right = tuple(float(v) for v in right)
    rl, ul, pl = left
    rr, ur, pr = right
    if min(rl, pl, rr, pr) <= 0:
        raise ValueError("density and pressure must be positive")
    cl, cr = np.sqrt(g * pl / rl), np.sqrt(g * pr / rr)
    ps, us = star_pressure(g, left, right)
    gm = (g - 1) / (g + 1)

    if ps > pl:
        rho_l = rl * (ps / pl + gm) / (gm * ps / pl + 1)
        s = ul - cl * np.sqrt((g + 1) / (2 * g) * ps / pl + (g - 1) / (2 * g))
        left_wave = (s, s)
    else:
        rho_l = rl * (ps / pl) ** (1 / g)
        cs = cl * (ps / pl) ** ((g - 1) / (2 * g))
        left_wave = (ul - cl, us - cs)
    if ps > pr:
        rho_r = rr * (ps / pr + gm) / (gm * ps / pr + 1)
        s = ur + cr * np.sqrt((g + 1) / (2 * g) * ps / pr + (g - 1) / (2 * g))
        right_wave = (s, s)
    else:
        rho_r = rr * (ps / pr) ** (1 / g)
        cs = cr * (ps / pr) ** ((g - 1) / (2 * g))
        right_wave = (ur + cr, us + cs)
    return ExactSodSolution(g, left, right, ps, us, rho_l, rho_r, left_wave, right_wave)


def sod_exact(gamma, left, right, x_over_t):
    """Exact primitive state ``(rho, v, p)`` at the similarity coordinate ``x/t``."""
    return solve_riemann(gamma, left, right).sample(x_over_t)


def sod_cell_averages(gamma, left, right, edges, t, x0=0.0, nodes=16):
    """Cell averages of the conserved variables.

    Each cell is split at the wave fronts so Gauss quadrature only sees
    smooth pieces.
    """
    sol = solve_riemann(gamma, left, right)
    edges = np.asarray(edges, dtype=float)
    fronts = x0 + t * np.array([*sol.left_wave, sol.u_star, *sol.right_wave])
    a, b = edges[:-1, None], edges[1:, None]
    cuts = np.sort(np.concatenate([a, np.clip(fronts[None, :], a, b), b], axis=1), axis=1)
    lo, hi = cuts[:, :-1, None], cuts[:, 1:, None]
    xg, wg = np.polynomial.legendre.leggauss(nodes)
    x = 0.5 * (lo + hi) + 0.5 * (hi - lo) * xg
    rho, v, p = sol.sample((x - x0) / t)
    cons = np.stack([rho, rho * v, p / (gamma - 1) + 0.5 * rho * v**2])
    total = np.sum(cons * (0.5 * (hi - lo) * wg), axis=(-1, -2))
    return total / (b - a)[:, 0]


def fine_reference(case: CaseConfig, n_ref, scheme: FluxScheme | None = None):
    """Run ``case`` on ``n_ref`` cells (HLL by default) and block-average onto the case grid.

    Returns ``(fine_result, coarse_averages)``.
    """
    if n_ref % case.grid.n_cells:
        raise ValueError(f"n_ref={n_ref} is not a multiple of n_cells={case.grid.n_cells}")
    scheme = scheme or FluxScheme(Kind.HLL)
    grid = Grid1D(case.grid.x_left, case.grid.x_right, n_ref)
    fine_case = case.replace(grid=grid, scheme=scheme, snapshot_times=())
    result = run(fine_case)
    return result, block_average(result.final, n_ref // case.grid.n_cells)


def error_norm(solution, reference, dx, p=1):
    """Discrete ``L^p`` distance ``(sum |u - r|^p dx)^(1/p)`` along the last axis."""
    solution = np.asarray(solution, dtype=float)
    reference = np.asarray(reference, dtype=float)
    if solution.shape != reference.shape:
        raise ValueError(f"grid mismatch: {solution.shape} vs {reference.shape}")
    if p not in (1, 2):
        raise ValueError("p must be 1 or 2")
    return (np.sum(np.abs(solution - reference) ** p * dx, axis=-1)) ** (1.0 / p)
