"""Homogeneous hyperbolic part of the 13-moment equations in one dimension.

Conserved ordering (13 entries)::

    rho, rho*v1, rho*v2, rho*v3,
    P11, P22, P33, P12, P13, P23      with P_ij = p_ij + rho v_i v_j
    Q1, Q2, Q3                        with Q_i = q_i + E v_i + p_ik v_k

and ``E = (rho v_k v_k + p_kk) / 2``.  The primitive ordering is
``rho, v1..v3, p11, p22, p33, p12, p13, p23, q1..q3``.

The fourth moment in the energy-flux flux uses the Grad closure
``R_ij = 5 p^2/rho delta_ij + 7 (p/rho) (p_ij - p delta_ij)`` by default.
``closure="isotropic"`` keeps only the ``5 p^2/rho delta_ij`` part; that
variant is not hyperbolic (complex characteristic speeds already at
equilibrium) and exists for comparison only.
"""

from __future__ import annotations

import numpy as np

from ..core import Model, _require_finite, inadmissible, jacfree_apply

# (i, j) index pairs of the six independent pressure-tensor entries
PAIRS = ((0, 0), (1, 1), (2, 2), (0, 1), (0, 2), (1, 2))

#: bound on |lambda - v1| / sqrt(p/rho); see demos/calibrate_r13_kappa.py
KAPPA_GRAD = 2.422
#: same for the isotropic closure (real parts only, the system is not hyperbolic)
KAPPA_ISOTROPIC = 1.667

POWER_ITERATIONS = 50
POWER_RTOL = 1e-4


def _tensor(six):
    """Symmetric 3x3 tensor (leading axes) from the six stored entries."""
    t = np.empty((3, 3) + six.shape[1:])
    for k, (i, j) in enumerate(PAIRS):
        t[i, j] = six[k]
        t[j, i] = six[k]
    return t


def _six(t):
    return np.stack([t[i, j] for i, j in PAIRS])


class R13(Model):
    n_vars = 13
    variable_names = (
        "rho", "v1", "v2", "v3",
        "p11", "p22", "p33", "p12", "p13", "p23",
        "q1", "q2", "q3",
    )
    conserved_names = (
        "rho", "m1", "m2", "m3",
        "P11", "P22", "P33", "P12", "P13", "P23",
        "Q1", "Q2", "Q3",
    )

    def __init__(self, closure="grad", kappa=None, validate=True):
        super().__init__()
        if closure not in ("grad", "isotropic"):
            raise ValueError(f"unknown closure {closure!r}")
        self.closure = closure
        if kappa is None:
            kappa = KAPPA_GRAD if closure == "grad" else KAPPA_ISOTROPIC
        self.kappa = float(kappa)
        self.validate = validate

    def _split(self, u):
        rho = u[0]
        v = u[1:4] / rho
        big_p = _tensor(u[4:10])
        p = big_p - rho * v[:, None] * v[None, :]
        energy = 0.5 * (big_p[0, 0] + big_p[1, 1] + big_p[2, 2])
        q = u[10:13] - energy * v - np.einsum("ik...,k...->i...", p, v)
        return rho, v, p, q, energy

    def check_admissible(self, u):
        u = np.asarray(u, dtype=float)
        _require_finite(u)
        rho, v, p, _, _ = self._split(u)
        bad = rho <= 0
        if np.any(bad):
            raise inadmissible(u, bad, "non-positive density")
        # leading principal minors of the pressure tensor
        m1 = p[0, 0]
        m2 = p[0, 0] * p[1, 1] - p[0, 1] ** 2
        m3 = (
            p[0, 0] * (p[1, 1] * p[2, 2] - p[1, 2] ** 2)
            - p[0, 1] * (p[0, 1] * p[2, 2] - p[1, 2] * p[0, 2])
            + p[0, 2] * (p[0, 1] * p[1, 2] - p[1, 1] * p[0, 2])
        )
        bad = (m1 <= 0) | (m2 <= 0) | (m3 <= 0)
        if np.any(bad):
            raise inadmissible(u, bad, "pressure tensor not positive definite")

    def flux(self, u):
        u = np.asarray(u, dtype=float)
        self.check_admissible(u)
        rho, v, p, q, energy = self._split(u)
        v1, q1 = v[0], q[0]
        pm = (p[0, 0] + p[1, 1] + p[2, 2]) / 3.0
        eye = np.eye(3)

        out = np.empty_like(u)
        out[0] = rho * v1
        out[1:4] = rho * v1 * v + p[0]
        for k, (i, j) in enumerate(PAIRS):
            out[4 + k] = (
                rho * v1 * v[i] * v[j]
                + p[i, j] * v1 + p[j, 0] * v[i] + p[0, i] * v[j]
                + 0.4 * (eye[i, j] * q1 + eye[j, 0] * q[i] + eye[0, i] * q[j])
            )
        v2 = v[0] ** 2 + v[1] ** 2 + v[2] ** 2
        qv = q[0] * v[0] + q[1] * v[1] + q[2] * v[2]
        pv = np.einsum("ki...,k...->i...", p, v)
        for i in range(3):
            fourth = 5.0 * pm**2 / rho * eye[i, 0]
            if self.closure == "grad":
                fourth = fourth + 7.0 * pm / rho * (p[i, 0] - pm * eye[i, 0])
            out[10 + i] = (
                energy * v[i] * v1
                + pv[i] * v1 + pv[0] * v[i]
                + 0.4 * qv * eye[i, 0]
                + 1.4 * (q[i] * v1 + q1 * v[i])
                + 0.5 * (p[i, 0] * v2 + fourth)
            )
        return out

    def thermal_speed(self, u):
        rho, _, p, _, _ = self._split(np.asarray(u, dtype=float))
        return np.sqrt((p[0, 0] + p[1, 1] + p[2, 2]) / (3.0 * rho))

    def wave_speeds(self, u):
        u = np.asarray(u, dtype=float)
        self.check_admissible(u)
        v1 = u[1] / u[0]
        c = self.kappa * self.thermal_speed(u)
        return v1 - c, v1 + c

    def wave_speed_estimate(self, u_left, u_right):
        lmin, lmax = super().wave_speed_estimate(u_left, u_right)
        if not self.validate:
            return lmin, lmax
        u_bar = 0.5 * (np.asarray(u_left, dtype=float) + np.asarray(u_right, dtype=float))
        radius, converged = power_iteration_radius(self, u_bar)
        if not np.all(converged):
            self._record("power_iteration_unconverged", np.size(converged) - np.count_nonzero(converged))
            radius = np.where(converged, radius, 1.1 * radius)
        bound = np.maximum(np.abs(lmin), np.abs(lmax))
        short = radius > bound
        if np.any(short):
            self._record("speed_bound_enlarged", np.count_nonzero(short))
            lmin = np.where(short, np.minimum(lmin, -radius), lmin)
            lmax = np.where(short, np.maximum(lmax, radius), lmax)
        return lmin, lmax

    def to_primitive(self, u):
        u = np.asarray(u, dtype=float)
        rho, v, p, q, _ = self._split(u)
        return np.concatenate([rho[None], v, _six(p), q])

    def from_primitive(self, w):
        w = np.asarray(w, dtype=float)
        rho, v, p, q = w[0], w[1:4], _tensor(w[4:10]), w[10:13]
        big_p = p + rho * v[:, None] * v[None, :]
        energy = 0.5 * (big_p[0, 0] + big_p[1, 1] + big_p[2, 2])
        big_q = q + energy * v + np.einsum("ik...,k...->i...", p, v)
        return np.concatenate([rho[None], rho * v, _six(big_p), big_q])


def power_iteration_radius(model, u_bar, iterations=POWER_ITERATIONS, rtol=POWER_RTOL):
    """Spectral radius of the flux Jacobian at ``u_bar`` by power iteration on ``A^2``.

    Iterating on the square sidesteps the ``+-lambda`` pair of a symmetric
    spectrum.  Returns ``(radius, converged)``, broadcast over trailing axes.
    """
    u_bar = np.asarray(u_bar, dtype=float)
    rng = np.random.default_rng(12345)
    start = rng.standard_normal(u_bar.shape[0])
    v = np.broadcast_to(start.reshape((-1,) + (1,) * (u_bar.ndim - 1)), u_bar.shape).copy()
    scale = np.maximum(np.abs(u_bar), 1.0)
    v *= scale
    v /= np.linalg.norm(v, axis=0)
    estimate = np.zeros(u_bar.shape[1:])
    converged = np.zeros(u_bar.shape[1:], dtype=bool)
    for _ in range(iterations):
        w = jacfree_apply(model, u_bar, v, power=2)
        norm = np.linalg.norm(w, axis=0)
        new = np.sqrt(norm)
        converged = np.abs(new - estimate) <= rtol * np.maximum(new, 1e-300)
        estimate = new
        if np.all(converged):
            break
        v = w / np.where(norm > 0, norm, 1.0)
    return estimate, converged
