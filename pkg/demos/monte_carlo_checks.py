"""Monte Carlo machinery: exact-formula agreement, cone dimensions, determinism.

Three short exhibits:

  1. simulated risks bracket the closed-form segment and triangle risks
     within standard-error bars across noise levels;
  2. the statistical dimension E||Pi_C(Z)||^2 of polyhedral cones matches
     its known values (ray 1/2, quadrant 1, halfplane 3/2, plane 2), and
     the small-noise risk of a polytope equals sigma^2 times the tangent
     cone's dimension;
  3. estimates are bitwise reproducible for a fixed seed regardless of the
     worker thread count (set RISKREV_THREADS to change parallelism).

Run:  python3 demos/monte_carlo_checks.py [--samples N]
"""

import argparse
import os

import numpy as np

from riskrev import (
    ExampleGeometry,
    MCConfig,
    RiskQuery,
    mc_risk,
    risk_segment_exact,
    risk_triangle_exact,
    statistical_dimension_2d,
    statistical_dimension_mc,
    tangent_cone_2d,
)


def exact_vs_mc(samples: int):
    g = ExampleGeometry(c=1.0)
    q = lambda s: RiskQuery(theta_star=(0.0, 0.0), sigma=s)
    print(f"exact risk vs Monte Carlo at theta* = v1, c = 1, n = {samples}:")
    print(f"  {'sigma':>6}  {'set':>8}  {'exact':>10}  {'estimate':>10}  {'z-score':>8}")
    for sigma in (0.5, 2.0, 10.0):
        for name, poly, exact in (
            ("segment", g.segment(), risk_segment_exact(g, 0.0, sigma)),
            ("triangle", g.triangle(), risk_triangle_exact(g, sigma).total),
        ):
            est = mc_risk(poly, q(sigma), MCConfig(n=samples))
            z = (est.mean - exact) / est.stderr
            print(f"  {sigma:6.1f}  {name:>8}  {exact:10.5f}  {est.mean:10.5f}  {z:+8.2f}")
    print()


def cone_dimensions(samples: int):
    r = 1.0 / np.sqrt(2.0)
    cones = [
        ("ray", [[1.0, 0.0]], 0.5),
        ("quadrant", [[1.0, 0.0], [0.0, 1.0]], 1.0),
        ("halfplane", [[1.0, 0.0], [-1.0, 0.0], [0.0, 1.0]], 1.5),
        ("plane", [[1.0, 0.0], [-1.0, 0.0], [0.0, 1.0], [0.0, -1.0]], 2.0),
        ("3d orthant", [[1, 0, 0], [0, 1, 0], [0, 0, 1]], 1.5),
    ]
    print(f"statistical dimension of cone{{generators}} at n = {samples}:")
    for name, gens, want in cones:
        est = statistical_dimension_mc(gens, n=samples)
        print(f"  {name:>10}: {est.mean:.4f} +/- {est.stderr:.4f}   (exact {want})")

    g = ExampleGeometry(c=1.0)
    sigma = 1e-3
    delta = statistical_dimension_2d(tangent_cone_2d(g.triangle(), (0.0, 0.0)))
    est = mc_risk(g.triangle(), RiskQuery(theta_star=(0.0, 0.0), sigma=sigma),
                  MCConfig(n=samples))
    print(f"  small-noise risk / sigma^2 at the triangle's corner: "
          f"{est.mean / sigma**2:.4f} (tangent cone dimension {delta})")
    print()


def determinism(samples: int):
    g = ExampleGeometry(c=1.0)
    q = RiskQuery(theta_star=(0.0, 0.0), sigma=2.0)
    cfg = MCConfig(n=samples, seed=7)
    results = []
    for threads in ("1", "4"):
        os.environ["RISKREV_THREADS"] = threads
        results.append(mc_risk(g.triangle(), q, cfg).mean)
    os.environ.pop("RISKREV_THREADS", None)
    same = results[0] == results[1]
    print(f"determinism across thread counts (seed 7, n = {samples}):")
    print(f"  1 thread : {results[0]!r}")
    print(f"  4 threads: {results[1]!r}")
    print(f"  bitwise equal: {same}")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--samples", type=int, default=200_000)
    args = ap.parse_args()
    exact_vs_mc(args.samples)
    cone_dimensions(args.samples)
    determinism(args.samples)


if __name__ == "__main__":
    main()
