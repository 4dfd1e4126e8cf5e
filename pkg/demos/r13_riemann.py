"""The 13-moment Riemann problem and why it breaks down.

The built-in case has a 3:1 density ratio and transverse velocities.  The
script first checks the closure: at equilibrium the Grad closure gives real
characteristic speeds, while the isotropic fourth moment gives complex ones.
Then it runs the case with several fluxes and reports where each one stops.
Every run develops heat fluxes far outside the region where the 13-moment
system is hyperbolic and ends with an indefinite pressure tensor.

    python demos/r13_riemann.py
"""

import numpy as np

from hybrid_riemann.cases import builtin_case
from hybrid_riemann.core import jacfree_apply
from hybrid_riemann.models import R13
from hybrid_riemann.solvers import FluxScheme, Kind
from hybrid_riemann.timeloop import RunError, run


def speeds(model, u):
    jac = np.column_stack([jacfree_apply(model, u, e, eps=1e-6) for e in np.eye(13)])
    return np.linalg.eigvals(jac)


def main():
    rest = np.zeros(13)
    rest[0], rest[4:7] = 1.0, 1.0
    for closure in ("grad", "isotropic"):
        m = R13(closure)
        lam = speeds(m, m.from_primitive(rest))
        print(f"{closure:>9} closure at rest: max |Im lambda| = {np.max(np.abs(lam.imag)):.3f}, "
              f"speeds {np.array2string(np.unique(np.round(lam.real, 4)), precision=4)}")

    case = builtin_case("r13-riemann")
    for label, scheme in (
        ("LF", FluxScheme(Kind.LF)),
        ("Rusanov", FluxScheme(Kind.RUSANOV)),
        ("HLL", FluxScheme(Kind.HLL)),
        ("HLLX", FluxScheme(Kind.HLLX)),
        ("HLLX-omega 0.5", FluxScheme(Kind.HLLX_OMEGA, 0.5)),
    ):
        try:
            res = run(case.replace(scheme=scheme))
            print(f"{label:>15}: reached t = {res.t}")
        except RunError as exc:
            print(f"{label:>15}: stopped at step {exc.step}, t = {exc.time:.4f}: {exc}")

    # how far out of the hyperbolic region the heat flux goes before the abort
    short = case.replace(scheme=FluxScheme(Kind.HLL), t_end=0.2)
    res = run(short)
    w = res.primitive()
    theta = (w[4] + w[5] + w[6]) / (3 * w[0])
    ratio = np.abs(w[10]) / (w[0] * theta**1.5)
    print(f"HLL at t = 0.2: max |q1| / (rho theta^1.5) = {np.max(ratio):.2f}")


if __name__ == "__main__":
    main()
