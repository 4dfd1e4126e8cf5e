"""Sod shock tube: error and contact resolution across the HLL family.

Runs the built-in case (200 cells on [-2, 2], CFL 0.95, t = 0.8) with
HLL, HLLX and HLLX-omega, and compares the density with exact cell averages.
The contact is the slow linearly degenerate wave, so its steepness is the
sharpest measure of numerical dissipation.

    python demos/sod_shock_tube.py --gamma 1.4
"""

import argparse

import numpy as np

from hybrid_riemann.cases import builtin_case
from hybrid_riemann.reference import error_norm, sod_cell_averages, solve_riemann
from hybrid_riemann.solvers import FluxScheme, Kind
from hybrid_riemann.timeloop import Grid1D, run

SCHEMES = {
    "HLL": FluxScheme(Kind.HLL),
    "HLLX": FluxScheme(Kind.HLLX),
    "HLLX-omega 0.3": FluxScheme(Kind.HLLX_OMEGA, 0.3),
    "HLLX-omega 0.5": FluxScheme(Kind.HLLX_OMEGA, 0.5),
}


def main():
    p = argparse.ArgumentParser()
    p.add_argument("--gamma", type=float, default=1.4)
    args = p.parse_args()
    g = args.gamma
    sol = solve_riemann(g, (1.0, 0.0, 1.0), (0.125, 0.0, 0.1))
    print(f"p* = {sol.p_star:.6f}, u* = {sol.u_star:.6f}")

    print(f"{'scheme':>15} {'L1(N=100)':>11} {'L1(N=200)':>11} {'ratio':>6} {'contact jump':>13}")
    for name, scheme in SCHEMES.items():
        errs = []
        for n in (100, 200):
            case = builtin_case("sod", scheme, grid=Grid1D(-2, 2, n), model_params={"gamma": g})
            res = run(case)
            exact = sod_cell_averages(g, case.left, case.right, case.grid.edges, res.t)
            errs.append(error_norm(res.final[0], exact[0], case.grid.dx))
        contact = sol.u_star * res.t
        half = 0.5 * min(contact - sol.left_wave[1] * res.t, sol.right_wave[0] * res.t - contact)
        rho = res.final[0, np.abs(res.x - contact) < half]
        steep = np.max(np.abs(np.diff(rho)))
        print(f"{name:>15} {errs[0]:11.5f} {errs[1]:11.5f} {errs[0] / errs[1]:6.3f} {steep:13.5f}")


if __name__ == "__main__":
    main()
