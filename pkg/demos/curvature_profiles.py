"""Curvature of warped half-plane metrics, two independent ways.

A warp function h > 0 turns the half plane {r > 0} into a surface with line
element dr^2 + dt^2/h^2.  All of its curvature sits in the single function
K(r) = H'(r) - H(r)^2 with H = (log h)'.  This script evaluates K for the
built-in warp families and cross-checks every value against a
finite-difference oracle that sees only metric samples (never h' or h''),
then writes the profiles to CSV.

Run:  python demos/curvature_profiles.py [--out DIR]
"""

import argparse
import pathlib

import numpy as np

from warpgeo import (
    curvature_oracle,
    make_warp,
    sectional_curvature,
)

FAMILIES = {
    # kind tag          expected curvature (printed for the narrative)
    "one_over_r": "0 everywhere (flat)",
    "r": "-2/r^2 (unbounded near the boundary)",
    "exp": "-1 (constant)",
    "flat:2,5": "0 on (0, 5)",
    "neg2:1,1,1": "-2/r^2 on (0, inf)",
}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="demo_output", help="output directory")
    args = ap.parse_args()
    outdir = pathlib.Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)

    step = 1e-3
    for spec, blurb in FAMILIES.items():
        w = make_warp(spec)
        lo = max(w.domain.lo + 0.3, 0.3)
        hi = min(w.domain.hi - 0.3, 6.0) if np.isfinite(w.domain.hi) else 6.0
        rs = np.linspace(lo, hi, 25)
        ks = np.asarray(sectional_curvature(w, rs))
        oracle = np.array([curvature_oracle(w, float(r), step) for r in rs])
        worst = float(np.max(np.abs(ks - oracle)))

        name = spec.replace(":", "_").replace(",", "_")
        target = outdir / f"curvature_{name}.csv"
        with open(target, "w", encoding="utf-8") as fh:
            fh.write("r,K,K_oracle,abs_diff\n")
            for r, k, ko in zip(rs, ks, oracle):
                fh.write(f"{r:.17g},{k:.17g},{ko:.17g},{abs(k - ko):.17g}\n")

        print(f"warp {spec:12s}  K is {blurb}")
        print(f"  sampled r in [{lo:.2f}, {hi:.2f}];"
              f" max |K - oracle| = {worst:.2e}  -> {target}")

    print("\nThe oracle differentiates w = 1/h with a five-point stencil and")
    print("never touches the stored derivatives, so agreement at the 1e-5")
    print("level certifies the analytic curvature evaluators.")


if __name__ == "__main__":
    main()
