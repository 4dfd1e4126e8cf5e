"""Compare finite-volume runs with the modified-equation Riemann solution.

To third order the blended scheme solves

    u_t + a u_x = (1-omega) D_UP u_xx + D_LW u_xxx

whose step-data solution, after rescaling x - a t by k0 = (|D_LW| t)^(-1/3),
depends only on d_hat = (t / D_LW^2)^(1/3) D_UP (1 - omega).  Two choices of
dispersion are shown: D_LW itself, and the dispersion of the blended scheme,
which is omega D_LW at nu = 1/2.

    python demos/modified_equation.py
"""

import numpy as np

from hybrid_riemann import analysis as an
from hybrid_riemann.cases import builtin_case
from hybrid_riemann.solvers import FluxScheme, Kind
from hybrid_riemann.timeloop import run


def main():
    c = an.modified_eq_coeffs(1.0, 0.01, 0.5)
    print(f"D_UP = {c.d_up}, D_LW = {c.d_lw}")
    base = an.dhat(c.d_up, c.d_lw, 0.25, 0.0)
    print(f"k0 = {base.k0:.3f}, xi0 = {base.xi0:.5f}, d_hat(omega) = {base.d_hat:.4f} (1 - omega)")

    print("\nu~(xi_hat, d_hat) on a few points")
    xi = np.array([-6.0, -3.0, -1.0, 0.0, 1.0, 3.0])
    print("d_hat  " + "".join(f"{x:>10g}" for x in xi))
    for d in (0.0, 0.5, 2.0, 10.0):
        print(f"{d:5g}  " + "".join(f"{v:10.5f}" for v in an.utilde(xi, d)))

    print("\nmax |u_FV - u~| after rescaling")
    for omega in (0.0, 0.3, 0.7):
        result = run(builtin_case("advection-sign", FluxScheme(Kind.HLLX_OMEGA, omega)))
        row = []
        # at omega = 0 the blended dispersion vanishes at nu = 1/2
        for mode in ("displayed", "blended") if omega > 0 else ("displayed",):
            xi_hat, u, params = an.rescale_run(result, omega, dispersion=mode)
            row.append(f"{mode}: {np.max(np.abs(u - an.utilde(xi_hat, params.d_hat))):.4f} (d_hat {params.d_hat:.3f})")
        print(f"omega={omega:g}  " + "   ".join(row))


if __name__ == "__main__":
    main()
