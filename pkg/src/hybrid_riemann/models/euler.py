"""One-dimensional Euler equations of an ideal gas.

Conserved ordering ``(rho, rho*v, E)``; primitive ordering ``(rho, v, p)``.
"""

from __future__ import annotations

import numpy as np

from ..core import Model, _require_finite, inadmissible


class Euler(Model):
    n_vars = 3
    variable_names = ("rho", "v", "p")
    conserved_names = ("rho", "mom", "E")

    def __init__(self, gamma=1.4):
        super().__init__()
        if gamma <= 1.0:
            raise ValueError(f"gamma must exceed 1, got {gamma}")
        self.gamma = float(gamma)

    def pressure(self, u):
        rho, mom, energy = u[0], u[1], u[2]
        return (self.gamma - 1.0) * (energy - 0.5 * mom**2 / rho)

    def check_admissible(self, u, allow_zero_pressure=False):
        u = np.asarray(u, dtype=float)
        _require_finite(u)
        bad = u[0] <= 0
        if np.any(bad):
            raise inadmissible(u, bad, "non-positive density")
        p = self.pressure(u)
        bad = p < 0 if allow_zero_pressure else p <= 0
        if np.any(bad):
            raise inadmissible(u, bad, "non-positive pressure")

    def flux(self, u):
        u = np.asarray(u, dtype=float)
        self.check_admissible(u, allow_zero_pressure=True)
        rho, mom, energy = u[0], u[1], u[2]
        v = mom / rho
        p = self.pressure(u)
        return np.stack([mom, mom * v + p, v * (energy + p)])

    def sound_speed(self, u):
        return np.sqrt(self.gamma * self.pressure(u) / u[0])

    def wave_speeds(self, u):
        u = np.asarray(u, dtype=float)
        self.check_admissible(u)
        v = u[1] / u[0]
        c = self.sound_speed(u)
        return v - c, v + c

    def to_primitive(self, u):
        u = np.asarray(u, dtype=float)
        return np.stack([u[0], u[1] / u[0], self.pressure(u)])

    def from_primitive(self, w):
        w = np.asarray(w, dtype=float)
        rho, v, p = w[0], w[1], w[2]
        return np.stack([rho, rho * v, p / (self.gamma - 1.0) + 0.5 * rho * v**2])
