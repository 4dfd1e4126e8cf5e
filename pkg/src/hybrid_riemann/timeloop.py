"""First-order finite-volume evolution with explicit Euler time stepping."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import FluxEvaluationError, MeshRatio, Model, spectral_radius
from .models import make_model
from .solvers import FluxScheme, flux

N_GHOST = 2


class ConfigError(ValueError):
    pass


class RunError(RuntimeError):
    """A time step failed; carries the step number, time and cell index."""

    def __init__(self, message, step=None, time=None, cell=None):
        super().__init__(message)
        self.step = step
        self.time = time
        self.cell = cell


@dataclass(frozen=True)
class Grid1D:
    x_left: float
    x_right: float
    n_cells: int

    def __post_init__(self):
        if self.n_cells < 2:
            raise ConfigError("n_cells must be >= 2")
        if not self.x_right > self.x_left:
            raise ConfigError("x_right must exceed x_left")

    @property
    def dx(self):
        return (self.x_right - self.x_left) / self.n_cells

    @property
    def centers(self):
        return self.x_left + (np.arange(self.n_cells) + 0.5) * self.dx

    @property
    def edges(self):
        return self.x_left + np.arange(self.n_cells + 1) * self.dx


@dataclass(frozen=True)
class CaseConfig:
    """A Riemann problem together with its discretization and flux scheme.

    ``left`` and ``right`` are primitive states of the model.
    """

    model: str
    left: tuple
    right: tuple
    grid: Grid1D
    cfl: float
    t_end: float
    scheme: FluxScheme
    x0: float = 0.0
    model_params: dict = field(default_factory=dict)
    snapshot_times: tuple = ()
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "left", tuple(float(v) for v in self.left))
        object.__setattr__(self, "right", tuple(float(v) for v in self.right))
        object.__setattr__(self, "snapshot_times", tuple(sorted(float(t) for t in self.snapshot_times)))
        object.__setattr__(self, "model_params", dict(self.model_params))
        if not 0.0 < self.cfl <= 1.0:
            raise ConfigError(f"cfl must lie in (0,1], got {self.cfl}")
        if not self.t_end > 0.0:
            raise ConfigError(f"t_end must be positive, got {self.t_end}")
        if not self.grid.x_left <= self.x0 <= self.grid.x_right:
            raise ConfigError(f"x0={self.x0} lies outside [{self.grid.x_left}, {self.grid.x_right}]")
        if any(t <= 0 or t > self.t_end for t in self.snapshot_times):
            raise ConfigError("snapshot times must lie in (0, t_end]")

    def make_model(self) -> Model:
        model = make_model(self.model, **self.model_params)
        for side, state in (("left", self.left), ("right", self.right)):
            if len(state) != model.n_vars:
                raise ConfigError(f"{side} state needs {model.n_vars} entries, got {len(state)}")
        return model

    def replace(self, **changes):
        from dataclasses import replace

        return replace(self, **changes)


@dataclass
class RunResult:
    """Outcome of :func:`run`.

    ``diagnostics`` holds one entry per time step: arrays ``t``, ``dt``,
    ``max_speed``, ``max_nu`` and, for each primitive variable ``name``,
    ``max_<name>`` and ``min_<name>`` after the step.
    """

    config: CaseConfig
    model: Model
    x: np.ndarray
    initial: np.ndarray
    final: np.ndarray
    t: float
    snapshots: dict
    diagnostics: dict
    boundary_flux: np.ndarray
    n_steps: int

    @property
    def dx(self):
        return self.config.grid.dx

    def primitive(self, which="final"):
        data = self.final if which == "final" else self.snapshots[which]
        return self.model.to_primitive(data)

    def conservation_residual(self):
        """Per-component ``|sum(u_end) dx - sum(u_0) dx + boundary flux integral|``."""
        dx = self.dx
        return np.abs(self.final.sum(axis=1) * dx - self.initial.sum(axis=1) * dx + self.boundary_flux)

    def conservation_scale(self):
        return np.abs(self.initial).sum(axis=1) * self.dx

    def conservation_error(self):
        """Residual relative to ``max(int |u_i(0)| dx, 1)`` per component."""
        return self.conservation_residual() / np.maximum(self.conservation_scale(), 1.0)


def project_initial(case: CaseConfig, model: Model | None = None):
    """Exact cell averages of the piecewise-constant Riemann data."""
    model = model or case.make_model()
    grid = case.grid
    ul = model.from_primitive(np.array(case.left))
    ur = model.from_primitive(np.array(case.right))
    edges = grid.edges
    # fraction of each cell lying left of x0
    frac = np.clip((case.x0 - edges[:-1]) / grid.dx, 0.0, 1.0)
    frac = np.where(np.isclose(frac, 1.0, rtol=0, atol=1e-12), 1.0, frac)
    frac = np.where(np.isclose(frac, 0.0, rtol=0, atol=1e-12), 0.0, frac)
    out = frac[None, :] * ul[:, None] + (1.0 - frac)[None, :] * ur[:, None]
    # exact copies where a cell is entirely on one side
    out[:, frac == 1.0] = ul[:, None]
    out[:, frac == 0.0] = ur[:, None]
    return out


def apply_bc(states):
    """Pad with two zero-gradient ghost cells on each side."""
    states = np.asarray(states, dtype=float)
    if states.shape[-1] < 2:
        raise ValueError("need at least two cells")
    return np.concatenate(
        [np.repeat(states[:, :1], N_GHOST, axis=1), states, np.repeat(states[:, -1:], N_GHOST, axis=1)],
        axis=1,
    )


def _interface_states(states):
    ext = apply_bc(states)
    n = states.shape[1]
    # interfaces x_{-1/2} .. x_{n-1/2}
    return ext[:, N_GHOST - 1 : N_GHOST + n], ext[:, N_GHOST : N_GHOST + n + 1]


def cfl_dt(states, model: Model, cfl_nu_bar, dx, t_remaining, speeds=None):
    """Largest stable step ``cfl * dx / max speed``, clipped to ``t_remaining``."""
    if speeds is None:
        speeds = model.wave_speed_estimate(*_interface_states(states))
    smax = float(np.max(spectral_radius(*speeds)))
    if smax <= 0.0:
        return t_remaining
    return min(cfl_nu_bar * dx / smax, t_remaining)


def _interface_fluxes(states, scheme, model, mesh, speeds=None):
    ul, ur = _interface_states(states)
    return flux(scheme, model, ul, ur, mesh, speeds=speeds)


def step(states, scheme: FluxScheme, model: Model, mesh: MeshRatio, speeds=None):
    """One explicit Euler update of all cell averages."""
    fluxes = _interface_fluxes(states, scheme, model, mesh, speeds)
    return states - mesh.ratio * (fluxes[:, 1:] - fluxes[:, :-1])


def run(case: CaseConfig, model: Model | None = None, max_steps=1_000_000) -> RunResult:
    """Evolve ``case`` to ``t_end`` and collect snapshots and per-step diagnostics."""
    model = model or case.make_model()
    grid = case.grid
    dx = grid.dx
    u = project_initial(case, model)
    initial = u.copy()
    boundary = np.zeros(model.n_vars)
    pending = list(case.snapshot_times)
    snapshots = {}
    names = model.variable_names
    diag = {"t": [], "dt": [], "max_speed": [], "max_nu": []}
    for name in names:
        diag[f"max_{name}"] = []
        diag[f"min_{name}"] = []

    t = 0.0
    n = 0
    t_end = case.t_end
    while t < t_end:
        if n >= max_steps:
            raise RunError(f"exceeded {max_steps} steps", step=n, time=t)
        ul, ur = _interface_states(u)
        try:
            speeds = model.wave_speed_estimate(ul, ur)
        except FluxEvaluationError as exc:
            raise _locate(exc, u, n, t) from exc
        smax = float(np.max(spectral_radius(*speeds)))
        target = pending[0] if pending else t_end
        remaining = target - t
        dt = cfl_dt(u, model, case.cfl, dx, remaining, speeds=speeds)
        # absorb a final sliver left over from floating-point accumulation
        if remaining - dt <= 1e-12 * max(t_end, 1.0):
            dt = remaining
            t_next = target
        else:
            t_next = t + dt
        mesh = MeshRatio(dx, dt)
        try:
            fluxes = flux(case.scheme, model, ul, ur, mesh, speeds=speeds)
        except FluxEvaluationError as exc:
            raise _locate(exc, u, n, t) from exc
        u = u - mesh.ratio * (fluxes[:, 1:] - fluxes[:, :-1])
        boundary += dt * (fluxes[:, -1] - fluxes[:, 0])
        if not np.all(np.isfinite(u)):
            bad = int(np.flatnonzero(~np.all(np.isfinite(u), axis=0))[0])
            raise RunError(f"non-finite state in cell {bad} after step {n + 1}", step=n + 1, time=t_next, cell=bad)
        t = t_next
        n += 1
        if pending and t >= pending[0]:
            snapshots[pending.pop(0)] = u.copy()

        w = model.to_primitive(u)
        diag["t"].append(t)
        diag["dt"].append(dt)
        diag["max_speed"].append(smax)
        diag["max_nu"].append(smax * dt / dx)
        for i, name in enumerate(names):
            diag[f"max_{name}"].append(float(np.max(w[i])))
            diag[f"min_{name}"].append(float(np.min(w[i])))

    return RunResult(
        config=case,
        model=model,
        x=grid.centers,
        initial=initial,
        final=u,
        t=t,
        snapshots=snapshots,
        diagnostics={k: np.asarray(v) for k, v in diag.items()},
        boundary_flux=boundary,
        n_steps=n,
    )


def _locate(exc, u, n, t):
    cell = None
    if exc.state is not None:
        ext = apply_bc(u)
        match = np.flatnonzero(np.all(ext == exc.state[:, None], axis=0))
        if match.size:
            cell = int(np.clip(match[0] - N_GHOST, 0, u.shape[1] - 1))
    where = f" near cell {cell}" if cell is not None else ""
    return RunError(f"step {n + 1} at t={t:.6g}{where}: {exc}", step=n + 1, time=t, cell=cell)


def block_average(states, factor):
    """Restrict fine-grid cell averages onto a grid ``factor`` times coarser."""
    states = np.asarray(states, dtype=float)
    n = states.shape[-1]
    if n % factor:
        raise ValueError(f"{n} cells are not divisible by {factor}")
    return states.reshape(states.shape[:-1] + (n // factor, factor)).mean(axis=-1)


def total_variation(values):
    return float(np.sum(np.abs(np.diff(values))))


def max_courant(states, model, mesh):
    """Post-hoc largest ``|nu|`` over all interfaces."""
    speeds = model.wave_speed_estimate(*_interface_states(states))
    return float(np.max(spectral_radius(*speeds))) * mesh.ratio

