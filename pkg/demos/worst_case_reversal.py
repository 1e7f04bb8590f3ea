"""Worst-case (sup over theta*) risk reversal for nested triangles.

Fix c = 0.75 and move the third vertex vx = (x, 1) along the top edge of
the triangle conv{v1, v2, (0, 1)}.  Larger x gives a strictly smaller set,
yet the diverging-noise worst-case risk is not monotone in x: it dips to an
interior minimum near x = 0.43 and then climbs again, so suitable pairs of
nested sets have reversed worst-case risks.  A Monte Carlo scan over a grid
of candidate theta* certifies the same reversal at finite noise levels.

Run:  python3 demos/worst_case_reversal.py [--samples N]
"""

import argparse

import numpy as np

from riskrev import (
    ExampleGeometry,
    detect_finite_sigma_reversal,
    envelope_curve,
    limiting_risk,
    vertex_probabilities_2d,
    worst_case_limiting_risk,
)

C = 0.75
X_SMALL = 1.3   # strictly smaller triangle (vx far to the right)
X_LARGE = 0.5   # strictly larger triangle


def limiting_table():
    print(f"diverging-noise risks per vertex, c = {C}:")
    for x in (X_LARGE, X_SMALL):
        poly = ExampleGeometry(c=C, x=x).theta_x_polytope()
        dist = vertex_probabilities_2d(poly)
        risks = [limiting_risk(poly, v, dist) for v in poly.vertices]
        sup, idx = worst_case_limiting_risk(poly, dist)
        names = ["v1", "v2", "vx"]
        cells = ", ".join(f"{n}: {r:.6f}" for n, r in zip(names, risks))
        print(f"  x = {x:4.2f}  ->  {cells}   sup = {sup:.6f} at {names[idx]}")
    print()


def envelope_minimum():
    grid = np.linspace(0.0, 1.0 / C - 1e-9, 2001)
    points = envelope_curve(C, grid)
    env = np.array([p.envelope for p in points])
    k = int(np.argmin(env))
    print("worst-case limiting risk along the family x -> conv{v1, v2, (x, 1)}:")
    print(f"  at x = 0       envelope = {env[0]:.6f}")
    print(f"  minimum        envelope = {env[k]:.6f} at x = {grid[k]:.4f}")
    print(f"  at x = 1/c     envelope = {env[-1]:.6f}")
    print("  the dip means shrinking the set first helps, then hurts, the worst case")
    print()


def finite_sigma(samples: int):
    sigmas = [1.0, 2.0, 5.0, 10.0, 20.0]
    scan = detect_finite_sigma_reversal(
        ExampleGeometry(c=C, x=X_SMALL),
        ExampleGeometry(c=C, x=X_LARGE),
        sigmas,
        n=samples,
    )
    print(f"Monte Carlo sup-risk scan at n = {samples} (common random numbers):")
    print(f"  {'sigma':>6}  {'sup small set':>14}  {'sup large set':>14}")
    for row in scan.rows:
        print(f"  {row.sigma:6.1f}  {row.sup_small:14.6f}  {row.sup_large:14.6f}")
    if scan.reversal_sigma is None:
        print("  no certified reversal on this grid (try more samples)")
    else:
        print(f"  certified reversal at sigma = {scan.reversal_sigma:g}: the smaller set")
        print("  has strictly larger worst-case risk by more than four standard errors")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--samples", type=int, default=200_000)
    args = ap.parse_args()
    limiting_table()
    envelope_minimum()
    finite_sigma(args.samples)


if __name__ == "__main__":
    main()
