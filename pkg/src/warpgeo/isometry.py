"""Affine maps of the half plane and their holomorphy/isometry residuals.

The scale-and-shift maps (r, t) -> (k r, k t + l), k > 0, form a group
isomorphic to the positive affine group of the line; the action on the half
plane is transitive and free.  For a warp function h the two structures a
map may or may not preserve are measured separately:

* holomorphy (compatibility with the 90-degree rotation J): the exact
  differential of an affine map is the diagonal matrix diag(k, k), so the
  pointwise Cauchy-Riemann residual reduces to |k (h(r) - h(k r))|;
* the metric: the pullback residual compares inner products before and
  after the map.

For the featured warps h = r and h = 1/r both residuals vanish exactly when
k = 1 (pure transverse translations) and only then, which
:func:`classify` witnesses over a sample grid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import TangentVector, metric_at
from .warp import DomainError, Point, WarpFunction

__all__ = [
    "AffineMap",
    "IsometryReport",
    "affine_act",
    "transitivity_witness",
    "cr_residual",
    "pullback_residual",
    "classify",
]


@dataclass(frozen=True)
class AffineMap:
    """The map (r, t) -> (k r, k t + l) with k > 0."""

    k: float
    l: float = 0.0

    def __post_init__(self):
        if not (self.k > 0.0 and math.isfinite(self.k) and math.isfinite(self.l)):
            raise ValueError(f"affine map requires finite k > 0, got k={self.k}, l={self.l}")

    def apply(self, p: Point) -> Point:
        return Point(self.k * p.r, self.k * p.t + self.l)

    def compose(self, inner: "AffineMap") -> "AffineMap":
        """self after inner: (k2 k1, k2 l1 + l2)."""
        return AffineMap(self.k * inner.k, self.k * inner.l + self.l)

    def inverse(self) -> "AffineMap":
        return AffineMap(1.0 / self.k, -self.l / self.k)

    def push_vector(self, u: TangentVector) -> TangentVector:
        """Differential action; exact since the map is affine: DG = diag(k, k)."""
        return TangentVector(self.k * u.dr, self.k * u.dt, base=self.apply(u.base))


def affine_act(m: AffineMap, p: Point) -> Point:
    """Apply the map: (r, t) -> (k r, k t + l)."""
    return m.apply(p)


def transitivity_witness(p: Point) -> AffineMap:
    """The unique affine map sending p to (1, 0).

    Uniqueness reflects that the action is free: only the identity fixes a
    point.
    """
    return AffineMap(k=1.0 / p.r, l=-p.t / p.r)


def cr_residual(w: WarpFunction, m: AffineMap, p: Point) -> float:
    """Pointwise Cauchy-Riemann residual of the map at p.

    For a map (u, v) with differential (u_r, u_t; v_r, v_t) the two
    compatibility equations with the rotation J read

        u_r h(r) = v_t h(u),        u_t = -h(r) h(u) v_r,

    and the residual is the sum of their absolute violations.  Affine maps
    have exact partials u_r = v_t = k, u_t = v_r = 0, so the second
    equation holds identically and the residual is |k (h(r) - h(k r))|.

    Raises
    ------
    DomainError
        If p or its image leaves the warp's domain.
    """
    w.require_point(p)
    q = m.apply(p)
    w.require_point(q)
    hr = float(w.h(p.r))
    hu = float(w.h(q.r))
    return abs(m.k * hr - m.k * hu)


def _default_vectors(w: WarpFunction, p: Point, rng) -> list[TangentVector]:
    """The two frame vectors plus one random vector at p."""
    hr = float(w.h(p.r))
    return [
        TangentVector(1.0, 0.0, base=p),
        TangentVector(0.0, hr, base=p),
        TangentVector(float(rng.standard_normal()), float(rng.standard_normal()), base=p),
    ]


def pullback_residual(
    w: WarpFunction,
    m: AffineMap,
    points,
    vectors=None,
    seed: int = 0,
) -> float:
    """Max metric-pullback violation over sample points and vectors.

    For each tangent vector u the residual compares g(DG u, DG u) at the
    image point with g(u, u) at the source.  When ``vectors`` is None, the
    two frame vectors and one seeded random vector are used at every point;
    otherwise ``vectors`` must be tangent vectors whose base points are used
    directly (``points`` is ignored then).

    Raises
    ------
    DomainError
        If any sample point's image escapes the warp's domain.
    """
    rng = np.random.default_rng(seed)
    if vectors is None:
        vectors = [v for p in points for v in _default_vectors(w, p, rng)]
    worst = 0.0
    for u in vectors:
        gu = metric_at(w, u, u)
        pu = m.push_vector(u)
        w.require_point(pu.base)
        gpu = metric_at(w, pu, pu)
        worst = max(worst, abs(gpu - gu))
    return worst


@dataclass(frozen=True)
class IsometryReport:
    """Residual maxima and verdict for an affine candidate map."""

    holomorphy_residual: float
    isometry_residual: float
    verdict: str
    tol: float
    k: float
    l: float
    r_range: tuple[float, float]
    t_range: tuple[float, float]
    grid_shape: tuple[int, int]
    seed: int

    def to_dict(self) -> dict:
        return {
            "holomorphy_residual": self.holomorphy_residual,
            "isometry_residual": self.isometry_residual,
            "verdict": self.verdict,
            "tol": self.tol,
            "map": {"k": self.k, "l": self.l},
            "grid": {
                "r_range": list(self.r_range),
                "t_range": list(self.t_range),
                "shape": list(self.grid_shape),
            },
            "seed": self.seed,
        }


def classify(
    w: WarpFunction,
    m: AffineMap,
    *,
    tol: float = 1e-9,
    r_range: tuple[float, float] = (0.1, 5.0),
    t_range: tuple[float, float] = (-3.0, 3.0),
    grid_shape: tuple[int, int] = (20, 20),
    seed: int = 0,
) -> IsometryReport:
    """Classify an affine map by its residual maxima over a sample grid.

    The verdict is ``holomorphic_isometry`` when both residual maxima fall
    below ``tol``, ``isometry_only`` / ``holomorphic_only`` when exactly one
    does, and ``neither`` otherwise.  The default grid covers
    r in [0.1, 5], t in [-3, 3] with a 20 x 20 lattice (clipped to the
    warp's domain); vectors per point are the two frame vectors plus one
    random vector drawn from the seeded generator.
    """
    lo = max(r_range[0], w.domain.lo * (1.0 + 1e-9) + 1e-9)
    hi = min(r_range[1], w.domain.hi * (1.0 - 1e-9) if math.isfinite(w.domain.hi) else r_range[1])
    if not lo < hi:
        raise DomainError("sample grid does not intersect the warp domain")
    rs = np.linspace(lo, hi, grid_shape[0])
    ts = np.linspace(t_range[0], t_range[1], grid_shape[1])
    points = [Point(float(r), float(t)) for r in rs for t in ts]

    holo = max(cr_residual(w, m, p) for p in points)
    iso = pullback_residual(w, m, points, seed=seed)

    if holo < tol and iso < tol:
        verdict = "holomorphic_isometry"
    elif iso < tol:
        verdict = "isometry_only"
    elif holo < tol:
        verdict = "holomorphic_only"
    else:
        verdict = "neither"
    return IsometryReport(
        holomorphy_residual=holo,
        isometry_residual=iso,
        verdict=verdict,
        tol=tol,
        k=m.k,
        l=m.l,
        r_range=(lo, hi),
        t_range=tuple(t_range),
        grid_shape=tuple(grid_shape),
        seed=seed,
    )
