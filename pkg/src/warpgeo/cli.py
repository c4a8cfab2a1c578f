"""Command-line front end.

Grammar::

    warpgeo <curvature|geodesic|connect|sweep|riccati|isometry> [options]

Common options: ``--warp NAME[:params]`` selects the warp function
(``one_over_r``, ``r``, ``exp``, ``flat:a0,a1``, ``neg2:c0,c1,c2``),
``--format json|csv``, ``--out PATH`` (stdout when omitted), ``--seed N``
and ``--tol X``.  The environment variable ``WARPGEO_CONFIG`` may point at a
JSON configuration file supplying defaults; explicit flags win.  Numeric
output carries 17 significant digits so that doubles round-trip exactly and
repeated runs are byte-identical.

Exit status: 0 on success (including found/horizontal connections), 2 when
a connection problem reports no geodesic or an exhausted search, 1 on usage
or domain errors.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from .connect import connect_flat, connect_neg2, connect_neg2_same_r
from .geodesics import GeodesicState, integrate
from .geometry import curvature_oracle, sectional_curvature
from .isometry import AffineMap, classify
from .riccati import (
    RiccatiReport,
    constant_profile,
    inverse_square_profile,
    solve_prescribed,
)
from .warp import DomainError, Point, WarpSpec, make_warp

__all__ = ["main", "RunConfig"]

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NO_GEODESIC = 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """Argument parser that reports usage problems with exit status 1."""

    def error(self, message):
        raise UsageError(message)


def _fmt(x: float) -> str:
    return f"{float(x):.17g}"


class RunConfig:
    """Resolved run configuration: warp, integrator, output and seed.

    Built from defaults, then the JSON file named by ``WARPGEO_CONFIG``
    (schema below), then command-line flags::

        {
          "warp": {"kind": "flat", "params": [2, 5]},
          "integrator": {"abs_tol": 1e-12, "rel_tol": 1e-10, "max_step": 0.1},
          "output": {"format": "json", "path": null},
          "seed": 0
        }
    """

    def __init__(self, args):
        file_cfg = {}
        cfg_path = os.environ.get("WARPGEO_CONFIG")
        if cfg_path:
            try:
                with open(cfg_path, encoding="utf-8") as fh:
                    file_cfg = json.load(fh)
            except (OSError, json.JSONDecodeError) as exc:
                raise UsageError(f"cannot read config {cfg_path}: {exc}") from exc

        warp_text = args.warp
        if warp_text is not None:
            self.warp_spec = WarpSpec.from_string(warp_text)
        elif "warp" in file_cfg:
            self.warp_spec = WarpSpec.from_dict(file_cfg["warp"])
        else:
            self.warp_spec = WarpSpec("one_over_r")

        integ = dict(file_cfg.get("integrator", {}))
        self.rel_tol = float(integ.get("rel_tol", 1e-10))
        self.abs_tol = float(integ.get("abs_tol", 1e-12))
        self.max_step = float(integ.get("max_step", math.inf))
        if self.rel_tol <= 0 or self.abs_tol <= 0 or self.max_step <= 0:
            raise UsageError("integrator tolerances must be positive")

        out_cfg = dict(file_cfg.get("output", {}))
        self.format = args.format or out_cfg.get("format", "json")
        if self.format not in ("json", "csv"):
            raise UsageError(f"unknown output format {self.format!r}")
        self.out = args.out if args.out is not None else out_cfg.get("path")
        self.seed = args.seed if args.seed is not None else int(file_cfg.get("seed", 0))
        self.tol = args.tol

    def warp(self):
        return make_warp(self.warp_spec)


def _emit(cfg: RunConfig, text: str) -> None:
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _rows_to_csv(header: list[str], rows: list[tuple]) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_fmt(v) if isinstance(v, float) else str(v) for v in row))
    return "\n".join(lines) + "\n"


def _rows_to_json(header: list[str], rows: list[tuple]) -> str:
    recs = [dict(zip(header, row)) for row in rows]
    return json.dumps(recs, indent=2, sort_keys=True, default=float) + "\n"


def _table(cfg: RunConfig, header: list[str], rows: list[tuple]) -> None:
    if cfg.format == "csv":
        _emit(cfg, _rows_to_csv(header, rows))
    else:
        _emit(cfg, _rows_to_json(header, rows))


def _parse_point(text: str) -> Point:
    try:
        r_s, t_s = text.split(",")
        return Point(float(r_s), float(t_s))
    except ValueError as exc:
        raise UsageError(f"expected point as 'r,t', got {text!r}") from exc


def _parse_range(text: str) -> tuple[float, float, int]:
    try:
        lo_s, hi_s, n_s = text.split(":")
        return float(lo_s), float(hi_s), int(n_s)
    except ValueError as exc:
        raise UsageError(f"expected range as 'lo:hi:n', got {text!r}") from exc


# -- subcommands ---------------------------------------------------------------


def cmd_curvature(cfg: RunConfig, args) -> int:
    if not (0.0 < args.r_min < args.r_max) or args.n < 2:
        raise UsageError("curvature requires 0 < r_min < r_max and n >= 2")
    w = cfg.warp()
    rs = np.linspace(args.r_min, args.r_max, args.n)
    w.domain.require(rs)
    rows = []
    for r in rs:
        k = float(sectional_curvature(w, float(r)))
        ko = curvature_oracle(w, float(r), args.step)
        rows.append((float(r), k, ko, abs(k - ko)))
    _table(cfg, ["r", "K", "K_oracle", "abs_diff"], rows)
    return EXIT_OK


def cmd_geodesic(cfg: RunConfig, args) -> int:
    w = cfg.warp()
    init = GeodesicState.from_angle(args.r0, args.t0, args.angle)
    path = integrate(
        w,
        init,
        args.s_max,
        rtol=cfg.rel_tol,
        atol=cfg.abs_tol,
        max_step=cfg.max_step,
        n_samples=args.samples,
    )
    csv_text = path.to_csv_string()
    summary = f"# escaped={str(path.escaped).lower()} length={_fmt(path.total_length)}\n"
    _emit(cfg, csv_text + summary)
    if args.plot_script:
        if not cfg.out:
            raise UsageError("--plot-script needs --out so the script can reference the CSV")
        with open(args.plot_script, "w", encoding="utf-8") as fh:
            fh.write(
                "# gnuplot companion script; run: gnuplot -persist <this file>\n"
                "set datafile separator ','\n"
                "set xlabel 't'\nset ylabel 'r'\n"
                f"plot '{cfg.out}' skip 1 using 3:2 with lines title 'geodesic'\n"
            )
    return EXIT_OK


def _metric_tag(cfg: RunConfig, flag: str | None) -> str:
    if flag is not None:
        return flag
    if cfg.warp_spec.kind == "r":
        return "neg2"
    return "flat"


def cmd_connect(cfg: RunConfig, args) -> int:
    p0 = _parse_point(args.p0)
    p1 = _parse_point(args.p1)
    if p0 == p1:
        raise UsageError("the two points must be distinct")
    metric = _metric_tag(cfg, args.metric)
    tol = cfg.tol if cfg.tol is not None else 1e-9
    if metric == "flat":
        res = connect_flat(p0, p1, tol)
    elif metric == "neg2":
        res = connect_neg2(p0, p1, tol)
    else:
        raise UsageError(f"unknown metric {metric!r} (expected flat or neg2)")
    doc = res.to_dict()
    doc["metric"] = metric
    if res.path is not None and args.path_out:
        res.path.to_csv(args.path_out)
        doc["path_file"] = args.path_out
    _emit(cfg, json.dumps(doc, indent=2, sort_keys=True, default=float) + "\n")
    return EXIT_OK if res.found else EXIT_NO_GEODESIC


def cmd_sweep(cfg: RunConfig, args) -> int:
    metric = _metric_tag(cfg, args.metric)
    tol = cfg.tol if cfg.tol is not None else 1e-9
    header = ["r0", "t0", "r1", "t1", "exists", "length", "iterations"]
    rows: list[tuple] = []
    if args.same_r:
        if args.dt is None:
            raise UsageError("--same-r sweep requires --dt lo:hi:n")
        lo, hi, n = _parse_range(args.dt)
        r0 = args.r0
        for dt in np.linspace(lo, hi, n):
            if dt == 0.0:
                continue
            res = connect_neg2_same_r(r0, float(dt), tol)
            rows.append(
                (
                    r0,
                    0.0,
                    r0,
                    float(dt),
                    int(res.found),
                    res.length if res.length is not None else "",
                    res.iterations,
                )
            )
    else:
        if args.t1 is None:
            raise UsageError("sweep requires --t1 lo:hi:n")
        p0 = _parse_point(args.p0)
        lo, hi, n = _parse_range(args.t1)
        solver = connect_flat if metric == "flat" else connect_neg2
        for t1 in np.linspace(lo, hi, n):
            p1 = Point(args.r1, float(t1))
            if p1 == p0:
                continue
            res = solver(p0, p1, tol)
            rows.append(
                (
                    p0.r,
                    p0.t,
                    p1.r,
                    p1.t,
                    int(res.found),
                    res.length if res.length is not None else "",
                    res.iterations,
                )
            )
    _table(cfg, header, rows)
    return EXIT_OK


_PROFILES = {
    "zero": lambda: constant_profile(0.0),
    "neg2_over_r2": lambda: inverse_square_profile(-2.0),
}


def _parse_profile(text: str):
    if text.startswith("const:"):
        return constant_profile(float(text.split(":", 1)[1]))
    if text in _PROFILES:
        return _PROFILES[text]()
    raise UsageError(
        f"unknown profile {text!r}; expected 'zero', 'neg2_over_r2' or 'const:VALUE'"
    )


def cmd_riccati(cfg: RunConfig, args) -> int:
    profile = _parse_profile(args.profile)
    lo, hi = args.r_lo, args.r_hi
    field = solve_prescribed(
        profile,
        args.r0,
        args.H0,
        (lo, hi),
        rtol=cfg.rel_tol,
        atol=max(cfg.abs_tol, 1e-14),
        cap=args.cap,
    )
    rows = [(float(r), float(H), float(h)) for r, H, h in zip(field.grid, field.H, field.h)]
    csv_text = _rows_to_csv(["r", "H", "h"], rows)

    # Derivative-consistency residual of the solved field: a finite
    # difference of H on the solution grid against H^2 + f, relative to the
    # local scale and away from the 5% margins (the estimate is limited by
    # grid resolution, not by the integrator).
    g_lo, g_hi = field.grid[0], field.grid[-1]
    span = g_hi - g_lo
    dH = np.gradient(field.H, field.grid)
    rhs_vals = field.H**2 + np.asarray(profile.f(field.grid))
    rel = np.abs(dH - rhs_vals) / np.maximum(1.0, np.abs(rhs_vals))
    interior = (field.grid >= g_lo + 0.05 * span) & (field.grid <= g_hi - 0.05 * span)
    max_resid = float(np.max(rel[interior])) if np.any(interior) else 0.0
    report = RiccatiReport(
        max_residual=max_resid,
        grid_size=int(field.grid.size),
        passed=bool(max_resid <= args.report_tol),
        tol=args.report_tol,
        blowup_location=field.blowup,
    )
    doc = json.dumps(report.to_dict(), indent=2, sort_keys=True, default=float) + "\n"
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(csv_text)
        sys.stdout.write(doc)
    else:
        sys.stdout.write(csv_text)
        sys.stderr.write(doc)
    return EXIT_OK


def cmd_isometry(cfg: RunConfig, args) -> int:
    if args.k <= 0.0:
        raise UsageError("isometry requires k > 0")
    w = cfg.warp()
    tol = cfg.tol if cfg.tol is not None else 1e-9
    report = classify(w, AffineMap(args.k, args.l), tol=tol, seed=cfg.seed)
    _emit(cfg, json.dumps(report.to_dict(), indent=2, sort_keys=True, default=float) + "\n")
    return EXIT_OK


# -- entry point ----------------------------------------------------------------


def build_parser() -> _Parser:
    parser = _Parser(prog="warpgeo", description=__doc__.splitlines()[0])
    parser.add_argument("--warp", help="warp kind, e.g. one_over_r, r, exp, flat:2,5")
    parser.add_argument("--tol", type=float, default=None, help="solver tolerance (default 1e-9)")
    parser.add_argument("--seed", type=int, default=None, help="random seed (default 0)")
    parser.add_argument("--format", choices=("json", "csv"), default=None)
    parser.add_argument("--out", default=None, help="output file (stdout when omitted)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("curvature", help="tabulate K and its finite-difference oracle")
    p.add_argument("r_min", type=float)
    p.add_argument("r_max", type=float)
    p.add_argument("n", type=int)
    p.add_argument("--step", type=float, default=1e-3, help="oracle stencil step")
    p.set_defaults(func=cmd_curvature)

    p = sub.add_parser("geodesic", help="integrate one geodesic and emit its path CSV")
    p.add_argument("r0", type=float)
    p.add_argument("t0", type=float)
    p.add_argument("angle", type=float, help="initial frame angle: (f,g)=(cos,sin)")
    p.add_argument("s_max", type=float)
    p.add_argument("--samples", type=int, default=129)
    p.add_argument("--plot-script", default=None,
                   help="also write a gnuplot script referencing the --out CSV")
    p.set_defaults(func=cmd_geodesic)

    p = sub.add_parser("connect", help="solve the two-point geodesic problem")
    p.add_argument("p0", help="start point as 'r,t'")
    p.add_argument("p1", help="target point as 'r,t'")
    p.add_argument("--metric", choices=("flat", "neg2"), default=None,
                   help="default: inferred from --warp (one_over_r -> flat, r -> neg2)")
    p.add_argument("--path-out", default=None, help="write the connecting path CSV here")
    p.set_defaults(func=cmd_connect)

    p = sub.add_parser("sweep", help="connection atlas over a target grid")
    p.add_argument("--metric", choices=("flat", "neg2"), default=None)
    p.add_argument("--p0", default="1,0", help="start point as 'r,t'")
    p.add_argument("--r1", type=float, default=1.0)
    p.add_argument("--t1", default=None, help="target t sweep as 'lo:hi:n'")
    p.add_argument("--same-r", action="store_true",
                   help="same-radius candidate sweep for the neg2 metric")
    p.add_argument("--r0", type=float, default=1.0, help="radius for --same-r")
    p.add_argument("--dt", default=None, help="dt sweep as 'lo:hi:n' for --same-r")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("riccati", help="solve the prescribed-curvature equation")
    p.add_argument("profile", help="'zero', 'neg2_over_r2' or 'const:VALUE'")
    p.add_argument("r0", type=float)
    p.add_argument("H0", type=float)
    p.add_argument("r_lo", type=float)
    p.add_argument("r_hi", type=float)
    p.add_argument("--cap", type=float, default=1e8, help="blow-up cap on |H|")
    p.add_argument("--report-tol", type=float, default=1e-3,
                   help="relative derivative-consistency tolerance")
    p.set_defaults(func=cmd_riccati)

    p = sub.add_parser("isometry", help="classify an affine map (k, l)")
    p.add_argument("k", type=float)
    p.add_argument("l", type=float)
    p.set_defaults(func=cmd_isometry)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        cfg = RunConfig(args)
        return args.func(cfg, args)
    except UsageError as exc:
        print(f"warpgeo: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DomainError, ValueError) as exc:
        print(f"warpgeo: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
