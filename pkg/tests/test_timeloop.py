import numpy as np
import pytest

from hybrid_riemann.cases import builtin_case
from hybrid_riemann.core import MeshRatio
from hybrid_riemann.models import Burgers, Euler, LinearAdvection
from hybrid_riemann.reference import sod_cell_averages
from hybrid_riemann.solvers import FluxScheme, Kind
from hybrid_riemann.timeloop import (
    CaseConfig,
    ConfigError,
    Grid1D,
    RunError,
    apply_bc,
    block_average,
    cfl_dt,
    project_initial,
    run,
    step,
    total_variation,
)


def sod(n=200, scheme=None, **kw):
    return builtin_case("sod", scheme or FluxScheme(Kind.HLL), grid=Grid1D(-2.0, 2.0, n), **kw)


def test_grid():
    g = Grid1D(-1.0, 1.0, 4)
    assert g.dx == 0.5
    np.testing.assert_allclose(g.centers, [-0.75, -0.25, 0.25, 0.75])
    np.testing.assert_allclose(g.edges, [-1, -0.5, 0, 0.5, 1])
    with pytest.raises(ConfigError):
        Grid1D(1.0, -1.0, 4)


def test_case_validation():
    with pytest.raises(ConfigError, match="cfl"):
        sod(cfl=1.5)
    with pytest.raises(ConfigError, match="t_end"):
        sod(t_end=0.0)
    with pytest.raises(ConfigError, match="x0"):
        sod(x0=3.0)
    with pytest.raises(ConfigError, match="left state"):
        sod(left=(1.0, 0.0)).make_model()


def test_project_initial_interface_discontinuity():
    u = project_initial(sod())
    e = Euler()
    assert np.all(u[:, :100] == e.from_primitive(np.array([1.0, 0.0, 1.0]))[:, None])
    assert np.all(u[:, 100:] == e.from_primitive(np.array([0.125, 0.0, 0.1]))[:, None])


def test_project_initial_mixed_cell():
    case = sod(n=5, x0=0.0)  # x0 is the center of cell 2
    e = Euler()
    ul = e.from_primitive(np.array([1.0, 0.0, 1.0]))
    ur = e.from_primitive(np.array([0.125, 0.0, 0.1]))
    np.testing.assert_allclose(project_initial(case)[:, 2], 0.5 * (ul + ur), rtol=1e-15)


def test_project_initial_uniform():
    case = sod(right=(1.0, 0.0, 1.0))
    u = project_initial(case)
    assert np.all(u == u[:, :1])


def test_cfl_dt():
    adv = LinearAdvection(1.0)
    u = np.zeros((1, 200))
    assert cfl_dt(u, adv, 0.5, 0.01, 1.0) == pytest.approx(0.005)
    assert cfl_dt(u, adv, 0.5, 0.01, 0.001) == 0.001
    assert cfl_dt(np.zeros((1, 10)), Burgers(), 0.5, 0.1, 0.3) == 0.3


def test_step_constant_field():
    e = Euler()
    u = np.repeat(e.from_primitive(np.array([0.7, 0.4, 1.3]))[:, None], 30, axis=1)
    for scheme in (FluxScheme(Kind.HLLX_OMEGA, 0.5), FluxScheme(Kind.MUSTA1), FluxScheme(Kind.LW2STEP)):
        np.testing.assert_allclose(step(u, scheme, e, MeshRatio(0.1, 0.02)), u, atol=1e-14, rtol=0)


def test_step_unit_cfl_upwind_is_exact_shift():
    adv = LinearAdvection(1.0)
    rng = np.random.default_rng(0)
    u = rng.normal(size=(1, 40))
    out = step(u, FluxScheme(Kind.UPWIND_LINEAR), adv, MeshRatio(0.05, 0.05))
    np.testing.assert_allclose(out[0, 1:], u[0, :-1], atol=1e-15)


def test_apply_bc():
    u = np.arange(6.0).reshape(2, 3)
    ext = apply_bc(u)
    assert ext.shape == (2, 7)
    np.testing.assert_array_equal(ext[:, :2], [[0, 0], [3, 3]])
    np.testing.assert_array_equal(ext[:, -2:], [[2, 2], [5, 5]])
    const = np.full((1, 5), 2.5)
    assert np.all(apply_bc(const) == 2.5)


def test_boundary_does_not_matter_before_waves_arrive():
    narrow = run(sod(n=200, t_end=0.3))
    wide = run(builtin_case("sod", FluxScheme(Kind.HLL), grid=Grid1D(-4.0, 4.0, 400), t_end=0.3))
    # the step sizes depend on the same states, so the runs are identical
    np.testing.assert_allclose(wide.final[:, 100:300], narrow.final, atol=1e-14)


def _crossing(x, rho, lo, hi):
    """x where the monotone profile rho first crosses the mean of lo and hi, searched right to left."""
    level = 0.5 * (lo + hi)
    above = rho > level
    i = np.flatnonzero(above[:-1] & ~above[1:])[-1]
    return x[i] + (rho[i] - level) / (rho[i] - rho[i + 1]) * (x[i + 1] - x[i])


def test_sod_wave_positions():
    case = sod()
    res = run(case)
    exact = sod_cell_averages(1.4, case.left, case.right, case.grid.edges, res.t)[0]
    rho = res.final[0]
    x = res.x
    dx = case.grid.dx
    # left plateau 1, star states ~0.426 and ~0.266, right 0.125
    pieces = [(0.2656, 0.125), (0.4263, 0.2656), (1.0, 0.4263)]
    positions = []
    for hi_, lo_ in pieces:
        mask_exact = _crossing(x, exact, lo_, hi_)
        positions.append(mask_exact)
        assert abs(_crossing(x, rho, lo_, hi_) - mask_exact) < 3 * dx
    assert positions[2] < positions[1] < positions[0]


def test_sod_conservation_and_diagnostics():
    res = run(sod(snapshot_times=(0.4,)))
    assert res.t == 0.8
    assert np.max(res.conservation_error()) < 1e-13
    assert set(res.snapshots) == {0.4}
    d = res.diagnostics
    assert len(d["t"]) == res.n_steps
    assert d["t"][-1] == 0.8
    assert np.all(d["max_nu"] <= 0.95 + 1e-12)
    assert {"max_rho", "min_p", "max_speed", "dt"} <= set(d)


def test_advection_monotone_and_lw_overshoot():
    up = run(builtin_case("advection-sign", FluxScheme(Kind.UPWIND_LINEAR)))
    assert up.n_steps == 50
    assert np.all(np.abs(up.diagnostics["max_u"] - 1.0) <= 1e-12)
    lw = run(builtin_case("advection-sign", FluxScheme(Kind.HLLX_OMEGA, 1.0)))
    # the dispersive tail of LW trails the jump on the lower plateau
    assert -lw.diagnostics["min_u"][-1] > 1.05


def test_run_error_carries_location():
    case = builtin_case("r13-riemann", FluxScheme(Kind.HLL))
    with pytest.raises(RunError) as info:
        run(case)
    err = info.value
    assert err.step is not None and err.time is not None and err.cell is not None
    assert 0 < err.time < case.t_end


def test_max_steps():
    with pytest.raises(RunError, match="exceeded"):
        run(sod(), max_steps=3)


def test_block_average_and_tv():
    u = np.arange(8.0)[None, :]
    np.testing.assert_array_equal(block_average(u, 4), [[1.5, 5.5]])
    np.testing.assert_array_equal(block_average(np.full((2, 9), 3.0), 3), np.full((2, 3), 3.0))
    with pytest.raises(ValueError):
        block_average(u, 3)
    assert total_variation([0, 2, 1, 1, -1]) == 5.0


def test_case_replace():
    a = sod()
    b = a.replace(cfl=0.5)
    assert b.cfl == 0.5 and a.cfl == 0.95
    assert isinstance(b, CaseConfig)
