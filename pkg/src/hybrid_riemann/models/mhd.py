"""One-dimensional ideal magnetohydrodynamics with constant normal field.

Conserved ordering ``(rho, rho*vx, rho*vy, rho*vz, By, Bz, E)`` where ``E``
excludes the normal magnetic energy.  Primitive ordering
``(rho, vx, vy, vz, p, By, Bz)``.
"""

from __future__ import annotations

import numpy as np

from ..core import Model, _require_finite, inadmissible


class IdealMHD(Model):
    n_vars = 7
    variable_names = ("rho", "vx", "vy", "vz", "p", "By", "Bz")
    conserved_names = ("rho", "mx", "my", "mz", "By", "Bz", "E")

    def __init__(self, gamma=5.0 / 3.0, bx=1.5):
        super().__init__()
        if gamma <= 1.0:
            raise ValueError(f"gamma must exceed 1, got {gamma}")
        self.gamma = float(gamma)
        self.bx = float(bx)

    def pressure(self, u):
        rho = u[0]
        kinetic = 0.5 * (u[1] ** 2 + u[2] ** 2 + u[3] ** 2) / rho
        magnetic = 0.5 * (u[4] ** 2 + u[5] ** 2)
        return (self.gamma - 1.0) * (u[6] - kinetic - magnetic)

    def check_admissible(self, u):
        u = np.asarray(u, dtype=float)
        _require_finite(u)
        bad = u[0] <= 0
        if np.any(bad):
            raise inadmissible(u, bad, "non-positive density")
        bad = self.pressure(u) <= 0
        if np.any(bad):
            raise inadmissible(u, bad, "non-positive pressure")

    def flux(self, u):
        u = np.asarray(u, dtype=float)
        self.check_admissible(u)
        rho = u[0]
        vx, vy, vz = u[1] / rho, u[2] / rho, u[3] / rho
        by, bz, energy = u[4], u[5], u[6]
        p = self.pressure(u)
        bt2 = by**2 + bz**2
        bx = self.bx
        return np.stack(
            [
                u[1],
                u[1] * vx + p + 0.5 * bt2,
                u[1] * vy - bx * by,
                u[1] * vz - bx * bz,
                vx * by - bx * vy,
                vx * bz - bx * vz,
                (energy + p + 0.5 * bt2) * vx - bx * (by * vy + bz * vz),
            ]
        )

    def fast_speed(self, u):
        u = np.asarray(u, dtype=float)
        rho = u[0]
        a2 = self.gamma * self.pressure(u) / rho
        b2 = (self.bx**2 + u[4] ** 2 + u[5] ** 2) / rho
        disc = (a2 + b2) ** 2 - 4.0 * a2 * self.bx**2 / rho
        if np.any(disc < -1e-14 * (a2 + b2) ** 2):
            raise inadmissible(u, disc < 0, "negative fast-speed discriminant")
        return np.sqrt(0.5 * (a2 + b2 + np.sqrt(np.maximum(disc, 0.0))))

    def wave_speeds(self, u):
        u = np.asarray(u, dtype=float)
        self.check_admissible(u)
        vx = u[1] / u[0]
        cf = self.fast_speed(u)
        return vx - cf, vx + cf

    def to_primitive(self, u):
        u = np.asarray(u, dtype=float)
        rho = u[0]
        return np.stack([rho, u[1] / rho, u[2] / rho, u[3] / rho, self.pressure(u), u[4], u[5]])

    def from_primitive(self, w):
        w = np.asarray(w, dtype=float)
        rho, vx, vy, vz, p, by, bz = (w[i] for i in range(7))
        energy = p / (self.gamma - 1.0) + 0.5 * rho * (vx**2 + vy**2 + vz**2) + 0.5 * (by**2 + bz**2)
        return np.stack([rho, rho * vx, rho * vy, rho * vz, by, bz, energy])
