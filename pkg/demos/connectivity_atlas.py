"""When do two points of the warped half plane see each other?

Flat metric (h = 1/r): the answer is sharp.  Points with equal t lie on a
horizontal geodesic; otherwise a connecting geodesic exists exactly when
the transverse gap is below a half turn, |t1 - t0| < pi, and then it is
unique with length given by the law of cosines.  The first sweep below
traces the existence flip at the threshold.

h = r metric: the classical same-radius candidate enumeration (phase
closure b s = 2 k pi) admits no candidate below pi r0 and its confirmed
candidates close up only at formula level - their arches pass through the
boundary.  Honest shooting over the arch family, however, connects every
pair through an over-the-apex geodesic that stays inside the half plane.
The second sweep shows both verdicts side by side; they disagree below the
threshold by design, and the shooting result is replay-verified.

Run:  python demos/connectivity_atlas.py [--out DIR]
"""

import argparse
import math
import pathlib

import numpy as np

from warpgeo import (
    Point,
    connect_flat,
    connect_neg2,
    connect_neg2_same_r,
    distance_flat,
)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="demo_output", help="output directory")
    args = ap.parse_args()
    outdir = pathlib.Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)

    print("Flat metric: sweep of targets (1, t1) from (1, 0)")
    p0 = Point(1.0, 0.0)
    rows = []
    for t1 in np.linspace(-3.5, 3.5, 57):
        if t1 == 0.0:
            continue
        res = connect_flat(p0, Point(1.0, float(t1)))
        rows.append((1.0, 0.0, 1.0, float(t1), int(res.found),
                     res.length if res.length is not None else ""))
    with open(outdir / "flat_atlas.csv", "w", encoding="utf-8") as fh:
        fh.write("r0,t0,r1,t1,exists,length\n")
        for row in rows:
            fh.write(",".join(str(v) for v in row) + "\n")
    blocked = [abs(r[3]) for r in rows if not r[4]]
    connected = [abs(r[3]) for r in rows if r[4]]
    print(f"  existence flips between |t1| = {max(connected):.4f} (connected) and "
          f"{min(blocked):.4f} (blocked); the threshold is pi = {math.pi:.4f}")
    d = distance_flat(p0, Point(1.0, math.pi / 2))
    print(f"  d((1,0), (1, pi/2)) = {d:.12f}  (chord value sqrt(2))\n")

    print("h = r metric, same-radius pairs from (1, 0):")
    print("  dt      enumeration verdict        shooting verdict   length")
    for dt in (0.5, 1.0, 2.0, math.pi, 4.0, 2 * math.pi):
        enum = connect_neg2_same_r(1.0, dt)
        shot = connect_neg2(Point(1.0, 0.0), Point(1.0, dt))
        enum_desc = enum.variant if enum.found else f"{enum.variant} ({enum.reason})"
        length = f"{shot.length:.6f}" if shot.found else "-"
        print(f"  {dt:6.3f}  {enum_desc:<25s}  {shot.variant:<17s}  {length}")
    print("\n  The enumeration implements the phase-closure necessary conditions;")
    print("  shooting finds in-chart apex geodesics for every gap. Confirmed")
    print("  enumeration candidates (b = 1) close up only through r = 0 and are")
    print("  reported with in_chart = False.")


if __name__ == "__main__":
    main()
