"""Every numerical flux in this package is characterized by a scalar
dissipation function d(nu) of the Courant number.  A scheme is monotone where
d(nu) >= |nu| and L2-stable where nu^2 <= d(nu) <= 1.

This script samples all of them over one wave-speed bracket, checks the two
regions, and writes the table as CSV (stdout by default).

    python demos/dissipation_functions.py --nu-min -0.4 --nu-max 0.8 --omega 0.5
"""

import argparse
import sys

from hybrid_riemann import dissipation as dis


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--nu-min", type=float, default=-0.5)
    p.add_argument("--nu-max", type=float, default=0.8)
    p.add_argument("--omega", type=float, default=0.5)
    p.add_argument("--samples", type=int, default=11)
    p.add_argument("--out", default="-")
    args = p.parse_args()
    bracket = (args.nu_min, args.nu_max)

    print(f"alpha (HLLX curvature) = {dis.alpha_coeff(bracket):.6f}", file=sys.stderr)
    print(f"beta  (HLLX-omega curvature) = {dis.beta_coeffs(bracket, args.omega).beta:.6f}", file=sys.stderr)
    candidates = {
        "LF": lambda nu: dis.d_classic("LF", nu),
        "HLL": lambda nu: dis.d_classic("HLL", nu, bracket),
        "LW": lambda nu: dis.d_classic("LW", nu),
        "MUSTA1": lambda nu: dis.d_classic("MUSTA1", nu),
        "HLLX": lambda nu: dis.d_hllx(nu, bracket),
        f"HLLX-omega({args.omega:g})": lambda nu: dis.d_hllxomega(nu, bracket, args.omega),
    }
    for name, fn in candidates.items():
        r = dis.region_check(fn, bracket, 401)
        print(
            f"{name:>18}: monotone={r.monotone!s:5} l2_stable={r.l2_stable!s:5} "
            f"max_violation={r.max_violation:.4f}",
            file=sys.stderr,
        )
    t = dis.nonmonotone_threshold(candidates["MUSTA1"])
    print(f"MUSTA1 loses monotonicity above |nu| = {t:.4f}", file=sys.stderr)

    header, rows = dis.dissipation_table(bracket, args.omega, args.samples)
    dis.write_table(args.out, header, rows)


if __name__ == "__main__":
    main()
