"""Scalar and constant-coefficient linear models."""

from __future__ import annotations

import numpy as np

from ..core import Model, _require_finite


class LinearAdvection(Model):
    """``u_t + a u_x = 0``."""

    n_vars = 1
    variable_names = ("u",)
    conserved_names = ("u",)
    linear = True

    def __init__(self, a=1.0):
        super().__init__()
        self.a = float(a)

    def flux(self, u):
        u = np.asarray(u, dtype=float)
        _require_finite(u)
        return self.a * u

    def wave_speeds(self, u):
        u = np.asarray(u, dtype=float)
        speed = np.full(u.shape[1:], self.a)
        return speed, speed.copy()

    def abs_jacobian_apply(self, v):
        return abs(self.a) * np.asarray(v, dtype=float)


class LinearSystem(Model):
    """``u_t + A u_x = 0`` for a constant diagonalizable matrix ``A`` with real spectrum."""

    linear = True

    def __init__(self, matrix):
        super().__init__()
        self.matrix = np.array(matrix, dtype=float)
        n = self.matrix.shape[0]
        if self.matrix.shape != (n, n):
            raise ValueError("matrix must be square")
        eigvals, eigvecs = np.linalg.eig(self.matrix)
        if np.max(np.abs(eigvals.imag)) > 1e-12:
            raise ValueError("matrix must have a real spectrum")
        self.eigvals = eigvals.real
        self._abs = (eigvecs * np.abs(eigvals)) @ np.linalg.inv(eigvecs)
        self._abs = self._abs.real
        self.n_vars = n
        self.variable_names = tuple(f"u{i}" for i in range(n))
        self.conserved_names = self.variable_names

    def flux(self, u):
        u = np.asarray(u, dtype=float)
        _require_finite(u)
        return np.tensordot(self.matrix, u, axes=(1, 0))

    def wave_speeds(self, u):
        shape = np.asarray(u).shape[1:]
        return np.full(shape, self.eigvals.min()), np.full(shape, self.eigvals.max())

    def abs_jacobian_apply(self, v):
        return np.tensordot(self._abs, np.asarray(v, dtype=float), axes=(1, 0))


class Burgers(Model):
    """Inviscid Burgers equation, ``f(u) = u^2 / 2``; used for testing."""

    n_vars = 1
    variable_names = ("u",)
    conserved_names = ("u",)

    def flux(self, u):
        u = np.asarray(u, dtype=float)
        _require_finite(u)
        return 0.5 * u**2

    def wave_speeds(self, u):
        u = np.asarray(u, dtype=float)[0]
        return u.copy(), u.copy()
