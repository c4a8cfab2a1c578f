"""Geodesics of the warped half plane, numeric and closed form.

Writing the unit tangent in the orthonormal frame as (f, g), with f the
radial and g the transverse component, a unit-speed geodesic obeys the
first-order system

    r' = f,   t' = h(r) g,   f' = -g^2 H(r),   g' = f g H(r),

with H = h'/h.  The system conserves f^2 + g^2 exactly, and g/h(r) is a
Clairaut-type first integral (the transverse momentum).  Horizontal rays
(g = 0) are geodesics for every warp, which makes the distance to the
boundary r -> 0 an upper bound for the length of inward rays: both featured
metrics possess finite-length inextendible geodesics.

Closed-form families are provided for the two featured warps:

* h = 1/r (:class:`FlatGeodesic`): r(s) = sqrt(s^2 + 2 a s + r0^2) with a
  continuous transverse angle; the family parameter a in (-r0, r0) is the
  initial radial speed times r0.
* h = r (:class:`Neg2Geodesic`): r(s) = sin(sigma b s + asin(b r0))/b over a
  single positive arch; b in (0, 1/r0] is the conserved transverse momentum
  g/h.  The transverse coordinate is the exact antiderivative of
  t' = h g = b r^2 (see ``transverse_unit_b_form`` for the simplified
  variant that is valid only at b = 1).
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

from .warp import DomainError, Point, WarpFunction

__all__ = [
    "GeodesicState",
    "GeodesicPath",
    "geodesic_field",
    "integrate",
    "escape_length",
    "path_length",
    "path_length_quadrature",
    "FlatGeodesic",
    "Neg2Geodesic",
    "transverse_unit_b_form",
    "ESCAPE_MARGIN",
    "UNIT_SPEED_TOL",
]

# Distance from the domain boundary at which integration stops (escape).
ESCAPE_MARGIN = 1e-10

# Maximum deviation of f^2 + g^2 from 1 accepted in an initial state.
UNIT_SPEED_TOL = 1e-6


@dataclass(frozen=True)
class GeodesicState:
    """Point plus unit frame velocity (r, t, f, g) along a geodesic."""

    r: float
    t: float
    f: float
    g: float

    def __post_init__(self):
        if self.r <= 0.0 or not np.isfinite(self.r):
            raise ValueError(f"geodesic state requires r > 0, got {self.r}")
        if not (np.isfinite(self.t) and np.isfinite(self.f) and np.isfinite(self.g)):
            raise ValueError("geodesic state components must be finite")

    @property
    def speed_sq(self) -> float:
        return self.f * self.f + self.g * self.g

    @property
    def point(self) -> Point:
        return Point(self.r, self.t)

    @classmethod
    def from_angle(cls, r: float, t: float, angle: float) -> "GeodesicState":
        """Unit state with (f, g) = (cos angle, sin angle)."""
        return cls(r, t, math.cos(angle), math.sin(angle))


@dataclass(frozen=True)
class GeodesicPath:
    """Arc-length-sampled trajectory with escape metadata.

    ``s`` strictly increases from 0 to ``total_length``; ``escaped`` is set
    when integration halted because the radius reached the domain boundary
    (within :data:`ESCAPE_MARGIN`), in which case ``total_length`` is the
    event location rather than the requested span.
    """

    s: np.ndarray
    r: np.ndarray
    t: np.ndarray
    f: np.ndarray
    g: np.ndarray
    escaped: bool
    total_length: float

    @property
    def samples(self) -> list[tuple[float, GeodesicState]]:
        return [
            (float(si), GeodesicState(float(ri), float(ti), float(fi), float(gi)))
            for si, ri, ti, fi, gi in zip(self.s, self.r, self.t, self.f, self.g)
        ]

    @property
    def endpoint(self) -> GeodesicState:
        return GeodesicState(
            float(self.r[-1]), float(self.t[-1]), float(self.f[-1]), float(self.g[-1])
        )

    def to_csv(self, target) -> None:
        """Write rows (s, r, t, f, g) with a one-line header.

        ``target`` may be a path or an open text file.  Values carry 17
        significant digits so a double round-trips losslessly.
        """
        own = isinstance(target, (str, bytes)) or hasattr(target, "__fspath__")
        fh = open(target, "w", encoding="utf-8") if own else target
        try:
            fh.write("s,r,t,f,g\n")
            for row in zip(self.s, self.r, self.t, self.f, self.g):
                fh.write(",".join(f"{v:.17g}" for v in row) + "\n")
        finally:
            if own:
                fh.close()

    def to_csv_string(self) -> str:
        buf = io.StringIO()
        self.to_csv(buf)
        return buf.getvalue()


def geodesic_field(w: WarpFunction, state: GeodesicState) -> tuple[float, float, float, float]:
    """Right-hand side (r', t', f', g') of the geodesic system at a state."""
    w.domain.require(state.r)
    H = float(w.log_deriv(state.r))
    hr = float(w.h(state.r))
    return (
        state.f,
        hr * state.g,
        -state.g * state.g * H,
        state.f * state.g * H,
    )


def _clamped_evaluators(w: WarpFunction):
    """h and H evaluators clamped just inside the domain.

    Trial steps of the adaptive integrator may probe marginally past the
    terminal escape event; clamping keeps those evaluations finite without
    affecting any state the solver actually keeps (the clamp engages beyond
    the event threshold).
    """
    lo = w.domain.lo + 0.25 * ESCAPE_MARGIN
    hi = w.domain.hi - 0.25 * ESCAPE_MARGIN if math.isfinite(w.domain.hi) else math.inf

    def safe_h(r):
        return w.h_unchecked(min(max(r, lo), hi))

    def safe_H(r):
        return w.log_deriv_unchecked(min(max(r, lo), hi))

    return safe_h, safe_H


def integrate(
    w: WarpFunction,
    init: GeodesicState,
    s_max: float,
    *,
    rtol: float = 1e-10,
    atol: float = 1e-12,
    n_samples: int = 129,
    renormalize: bool = False,
    max_step: float = math.inf,
) -> GeodesicPath:
    """Integrate the geodesic system from ``init`` up to arc length ``s_max``.

    Integration stops early, with ``escaped`` set, when the radius reaches
    either domain boundary to within :data:`ESCAPE_MARGIN`; the boundary
    crossing is located by the solver's root finder on the dense output and
    ``total_length`` is the arc length at the event.

    With ``renormalize`` the velocity is propagated through its angle
    (f, g) = (cos, sin), which keeps the unit-speed constraint exact by
    construction; by default the redundant 4-component system is integrated
    so that unit-speed drift remains observable as a quality measure.

    Raises
    ------
    ValueError
        If ``init`` violates the unit-speed constraint by more than
        :data:`UNIT_SPEED_TOL`, or ``s_max`` is not positive.
    """
    if s_max <= 0.0:
        raise ValueError("s_max must be positive")
    if not abs(init.speed_sq - 1.0) <= UNIT_SPEED_TOL:
        raise ValueError(
            f"initial state is not unit speed: f^2+g^2 = {init.speed_sq!r}"
        )
    w.domain.require(init.r)

    safe_h, safe_H = _clamped_evaluators(w)
    events = []

    def hit_lower(s, y):
        return y[0] - (w.domain.lo + ESCAPE_MARGIN)

    hit_lower.terminal = True
    hit_lower.direction = -1
    events.append(hit_lower)

    if math.isfinite(w.domain.hi):
        def hit_upper(s, y):
            return y[0] - (w.domain.hi - ESCAPE_MARGIN)

        hit_upper.terminal = True
        hit_upper.direction = 1
        events.append(hit_upper)

    # Trial stages of a rejected step can overshoot wildly near the escape
    # event; their products may overflow before the step is discarded.
    if renormalize:
        y0 = [init.r, init.t, math.atan2(init.g, init.f)]

        def rhs(s, y):
            with np.errstate(all="ignore"):
                r, _, th = y
                H = safe_H(r)
                sin_th = np.sin(th)
                return [np.cos(th), safe_h(r) * sin_th, H * sin_th]
    else:
        y0 = [init.r, init.t, init.f, init.g]

        def rhs(s, y):
            with np.errstate(all="ignore"):
                r, _, f, g = y
                H = safe_H(r)
                return [f, safe_h(r) * g, -g * g * H, f * g * H]

    sol = solve_ivp(
        rhs,
        (0.0, float(s_max)),
        y0,
        method="DOP853",
        rtol=rtol,
        atol=atol,
        max_step=max_step,
        events=events,
        dense_output=True,
    )
    if sol.status < 0:  # pragma: no cover - integrator failure safeguard
        raise RuntimeError(f"geodesic integration failed: {sol.message}")

    escaped = sol.status == 1
    s_end = float(sol.t[-1])
    grid = np.linspace(0.0, s_end, max(2, int(n_samples)))
    ys = sol.sol(grid)
    if renormalize:
        r_v, t_v, th = ys
        f_v, g_v = np.cos(th), np.sin(th)
    else:
        r_v, t_v, f_v, g_v = ys
    # The event is located at lo + ESCAPE_MARGIN; interpolation noise may put
    # the final sample a hair below it.  Clamp to keep states constructible.
    r_v = np.maximum(r_v, w.domain.lo + 0.5 * ESCAPE_MARGIN)
    return GeodesicPath(
        s=grid,
        r=r_v,
        t=t_v,
        f=f_v,
        g=g_v,
        escaped=escaped,
        total_length=s_end,
    )


def escape_length(w: WarpFunction, init: GeodesicState, cap: float) -> float | None:
    """Arc length until the geodesic leaves the domain, or None past ``cap``.

    A finite value certifies an inextendible geodesic of finite length, the
    witness used to show a metric is not geodesically complete.
    """
    path = integrate(w, init, cap, n_samples=2)
    return path.total_length if path.escaped else None


def path_length(path: GeodesicPath) -> float:
    """Length of a unit-speed path: the arc-length parameter span."""
    if path.s.size == 0:
        raise ValueError("empty path")
    return float(path.s[-1] - path.s[0])


def path_length_quadrature(w: WarpFunction, path: GeodesicPath) -> float:
    """Trapezoidal length of the sampled trajectory measured by the metric.

    Independent of the arc-length parametrization: segment lengths are
    sqrt(dr^2 + dt^2/h^2) evaluated at midpoints.  Second-order accurate in
    the sample spacing; used as a cross-check of :func:`path_length`.
    """
    dr = np.diff(path.r)
    dt = np.diff(path.t)
    mid = 0.5 * (path.r[1:] + path.r[:-1])
    hm = np.asarray(w.h(mid))
    return float(np.sum(np.sqrt(dr * dr + (dt / hm) ** 2)))


# -- closed forms for h = 1/r -------------------------------------------------


@dataclass(frozen=True)
class FlatGeodesic:
    """Non-horizontal geodesic of the h = 1/r metric through (r0, t0).

    The family parameter ``a`` in (-r0, r0) fixes the initial radial speed
    f(0) = a/r0; ``sign`` picks the transverse direction.  The squared
    turning radius ``beta = r0^2 - a^2`` stays positive, so these geodesics
    never reach the boundary r = 0.
    """

    r0: float
    t0: float
    a: float
    sign: float = 1.0

    def __post_init__(self):
        if self.r0 <= 0.0:
            raise ValueError("r0 must be positive")
        if not abs(self.a) < self.r0:
            raise ValueError(f"family parameter must satisfy |a| < r0, got a={self.a}")
        if self.sign not in (-1.0, 1.0):
            raise ValueError("sign must be +1 or -1")

    @property
    def beta(self) -> float:
        """Squared turning radius r0^2 - a^2 > 0."""
        return self.r0 * self.r0 - self.a * self.a

    @property
    def d(self) -> float:
        """Integration constant of the single-branch arctangent form
        t(s) = sign * arctan((s + a)/sqrt(beta)) + d, fixed by t(0) = t0.

        That form jumps where its argument passes a pole; ``angle`` is the
        continuous version used for evaluation.
        """
        return self.t0 - self.sign * math.atan2(self.a, math.sqrt(self.beta))

    def radius(self, s):
        s = np.asarray(s, dtype=float)
        return np.sqrt(s * s + 2.0 * self.a * s + self.r0 * self.r0)

    def angle(self, s):
        """Continuous transverse angle with angle(0) = 0.

        The two-argument angle of (r0^2 + a s, s sqrt(beta)) is continuous
        across the zero of its first component (where a naive arctangent of
        the ratio would jump by pi), and confined to (-pi, pi): the sweep of
        any one geodesic of this family never reaches a half turn.
        """
        s = np.asarray(s, dtype=float)
        return np.arctan2(s * math.sqrt(self.beta), self.r0 * self.r0 + self.a * s)

    def point(self, s):
        """Position (r, t) at arc length s (s may be an array)."""
        r = self.radius(s)
        t = self.t0 + self.sign * self.angle(s)
        if np.ndim(s) == 0:
            return Point(float(r), float(t))
        return r, t

    def state(self, s: float) -> GeodesicState:
        """Full state at arc length s, unit speed by construction."""
        s = float(s)
        r = float(self.radius(s))
        f = (s + self.a) / r
        g = self.sign * math.sqrt(self.beta) / r
        return GeodesicState(r, float(self.t0 + self.sign * self.angle(s)), f, g)

    def initial_state(self) -> GeodesicState:
        return self.state(0.0)


# -- closed forms for h = r ---------------------------------------------------


@dataclass(frozen=True)
class Neg2Geodesic:
    """Non-horizontal geodesic of the h = r metric through (r0, t0).

    ``b`` in (0, 1/r0] is the conserved transverse momentum g/h, so
    g(s) = b r(s) > 0 (targets below the start are reached via the mirror
    symmetry t -> -t).  ``sign`` is the direction of the initial radial
    motion; with phase psi(s) = sign * b s + asin(b r0),

        r(s) = sin(psi(s)) / b,
        t(s) = t0 + s/(2 b) - sign * (sin(2 psi(s)) - sin(2 psi(0))) / (4 b^2),

    where t is the exact antiderivative of t' = h g = b r^2.  Both
    expressions are valid on the single arch where r > 0; the arch ends at
    finite arc length with r -> 0, an inextendible finite-length geodesic.
    """

    r0: float
    t0: float
    b: float
    sign: float = 1.0

    def __post_init__(self):
        if self.r0 <= 0.0:
            raise ValueError("r0 must be positive")
        if not (0.0 < self.b <= 1.0 / self.r0):
            raise ValueError(
                f"transverse momentum must satisfy 0 < b <= 1/r0, got b={self.b}"
            )
        if self.sign not in (-1.0, 1.0):
            raise ValueError("sign must be +1 or -1")

    @property
    def phase0(self) -> float:
        """Initial phase asin(b r0), in (0, pi/2]."""
        return math.asin(min(1.0, self.b * self.r0))

    def arch(self) -> tuple[float, float]:
        """Open interval of arc lengths with r > 0 (the positive arch)."""
        psi0 = self.phase0
        if self.sign > 0:
            return (-psi0 / self.b, (math.pi - psi0) / self.b)
        return ((psi0 - math.pi) / self.b, psi0 / self.b)

    def _phase(self, s):
        return self.sign * self.b * np.asarray(s, dtype=float) + self.phase0

    def _require_arch(self, s):
        lo, hi = self.arch()
        s_arr = np.asarray(s, dtype=float)
        if np.any(s_arr <= lo) or np.any(s_arr >= hi):
            raise DomainError(f"arc length {s!r} outside the positive arch ({lo}, {hi})")

    def radius(self, s):
        self._require_arch(s)
        return np.sin(self._phase(s)) / self.b

    def transverse(self, s):
        self._require_arch(s)
        s_arr = np.asarray(s, dtype=float)
        psi = self._phase(s_arr)
        b = self.b
        return self.t0 + s_arr / (2.0 * b) - self.sign * (
            np.sin(2.0 * psi) - math.sin(2.0 * self.phase0)
        ) / (4.0 * b * b)

    def point(self, s):
        r = self.radius(s)
        t = self.transverse(s)
        if np.ndim(s) == 0:
            return Point(float(r), float(t))
        return r, t

    def state(self, s: float) -> GeodesicState:
        s = float(s)
        psi = float(self._phase(s))
        r = float(self.radius(s))
        return GeodesicState(
            r,
            float(self.transverse(s)),
            self.sign * math.cos(psi),
            self.b * r,
        )

    def initial_state(self) -> GeodesicState:
        return self.state(0.0)


def transverse_unit_b_form(geo: Neg2Geodesic, s):
    """Simplified transverse closed form that is exact only at b = 1.

    This variant omits the 1/b scalings required for consistency with
    t' = h g = b r^2; it is kept for cross-checking because it circulates as
    a printed formula for this family.  ``Neg2Geodesic.transverse`` is the
    equation-consistent antiderivative and agrees with this expression
    exactly when b == 1 (for the positive radial sign).
    """
    s_arr = np.asarray(s, dtype=float)
    psi = geo.sign * geo.b * s_arr + geo.phase0
    return geo.t0 + s_arr / 2.0 - (np.sin(2.0 * psi) - math.sin(2.0 * geo.phase0)) / 4.0
