"""Warp functions on the right half plane.

The geometry of the half plane R = {(r, t) : r > 0} studied by this package
is entirely determined by a single positive function h(r), which scales the
transverse direction: the line element is dr^2 + dt^2 / h(r)^2.  This module
defines the half-plane points, the warp-function object (h together with its
first two derivatives and its logarithmic derivative), and constructors for
the built-in warp families:

========== ===================== ========================= ==================
kind       h(r)                  curvature                 natural domain
========== ===================== ========================= ==================
one_over_r 1/r                   0                         (0, inf)
r          r                     -2/r^2                    (0, inf)
exp        e^r                   -1                        (0, inf)
flat       a0/(a1 - r)           0                         side of the pole
neg2       c0 r/(c1 + c2 r^3)    -2/r^2                    side of the pole
custom     caller supplied       generic formula           caller supplied
========== ===================== ========================= ==================

For the `flat` and `neg2` families the pole of h is excluded and the maximal
open subinterval of (0, inf) on which h is strictly positive is selected
automatically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

__all__ = [
    "DomainError",
    "Domain",
    "Point",
    "WarpSpec",
    "WarpFunction",
    "make_warp",
    "warp_one_over_r",
    "warp_r",
    "warp_exp",
    "warp_flat",
    "warp_neg2",
    "warp_custom",
    "DOMAIN_MARGIN",
]

# Strict-inequality margin used by every domain membership test.
DOMAIN_MARGIN = 1e-12

# Default relative step for finite-difference derivatives of custom warps.
FD_STEP_SCALE = 1e-6

# Relative tolerance for the derivative consistency check run by make_warp.
CONSISTENCY_TOL = 1e-5


class DomainError(ValueError):
    """A coordinate fell outside the open interval where h is defined."""


@dataclass(frozen=True)
class Domain:
    """Open interval (lo, hi) of valid radii, 0 <= lo < hi <= inf."""

    lo: float
    hi: float = math.inf

    def __post_init__(self):
        if not (0.0 <= self.lo < self.hi):
            raise ValueError(f"invalid domain ({self.lo}, {self.hi})")

    def contains(self, r, margin: float = DOMAIN_MARGIN):
        """Strict membership with a safety margin off both endpoints."""
        r = np.asarray(r, dtype=float)
        inside = (r > self.lo + margin) & np.isfinite(r)
        if math.isfinite(self.hi):
            inside &= r < self.hi - margin
        return bool(inside) if inside.ndim == 0 else inside

    def require(self, r, margin: float = DOMAIN_MARGIN) -> None:
        ok = self.contains(r, margin)
        if not np.all(ok):
            raise DomainError(
                f"radius {r!r} outside open domain ({self.lo}, {self.hi})"
            )

    def intersect(self, other: "Domain") -> "Domain":
        lo, hi = max(self.lo, other.lo), min(self.hi, other.hi)
        if lo >= hi:
            raise ValueError("empty domain intersection")
        return Domain(lo, hi)

    def sample(self, n: int = 33) -> np.ndarray:
        """Interior sample grid, used for validation sweeps."""
        lo = self.lo
        hi = self.hi if math.isfinite(self.hi) else max(10.0, 4.0 * lo + 10.0)
        pad = (hi - lo) * 1e-3
        return np.linspace(lo + pad, hi - pad, n)


@dataclass(frozen=True)
class Point:
    """A point (r, t) of the right half plane; r must be strictly positive."""

    r: float
    t: float

    def __post_init__(self):
        if not (math.isfinite(self.r) and math.isfinite(self.t)):
            raise ValueError("point coordinates must be finite")
        if self.r <= 0.0:
            raise ValueError(f"point requires r > 0, got r={self.r}")


@dataclass(frozen=True)
class WarpSpec:
    """Plain-data description of a warp function: kind tag plus parameters.

    This is the serializable form shared with the command line and with
    configuration files; see ``WarpSpec.from_string`` for the CLI syntax.
    Custom (callable-backed) warps cannot be expressed as a spec.
    """

    kind: str
    params: tuple = ()

    _KNOWN = ("one_over_r", "r", "exp", "flat", "neg2")
    _ARITY = {"one_over_r": 0, "r": 0, "exp": 0, "flat": 2, "neg2": 3}

    def __post_init__(self):
        if self.kind not in self._KNOWN:
            raise ValueError(
                f"unknown warp kind {self.kind!r}; expected one of {self._KNOWN}"
            )
        object.__setattr__(self, "params", tuple(float(p) for p in self.params))
        want = self._ARITY[self.kind]
        if len(self.params) != want:
            raise ValueError(
                f"warp kind {self.kind!r} takes {want} parameters, "
                f"got {len(self.params)}"
            )

    @classmethod
    def from_string(cls, text: str) -> "WarpSpec":
        """Parse ``"name"`` or ``"name:p1,p2,..."`` as used by the CLI."""
        name, _, tail = text.partition(":")
        params = tuple(float(tok) for tok in tail.split(",")) if tail else ()
        return cls(name.strip(), params)

    def to_dict(self) -> dict:
        return {"kind": self.kind, "params": list(self.params)}

    @classmethod
    def from_dict(cls, d: dict) -> "WarpSpec":
        return cls(d["kind"], tuple(d.get("params", ())))


@dataclass(frozen=True, eq=False)
class WarpFunction:
    """A positive warp function h on an open radial interval.

    Carries evaluators for h, h', h'' and the logarithmic derivative
    H = h'/h.  When the family solves a known prescribed-curvature equation
    the exact curvature evaluator is attached as well, so that curvature
    values are free of cancellation noise; generic curvature evaluation from
    (h, h', h'') is always available through
    :func:`warpgeo.geometry.sectional_curvature`.
    """

    kind: str
    params: tuple
    domain: Domain
    _h: Callable = field(repr=False)
    _dh: Callable = field(repr=False)
    _d2h: Callable = field(repr=False)
    _logderiv: Callable | None = field(default=None, repr=False)
    _curvature: Callable | None = field(default=None, repr=False)

    # -- evaluation ---------------------------------------------------------

    def h(self, r):
        self.domain.require(r)
        return self._h(np.asarray(r, dtype=float) if np.ndim(r) else float(r))

    def dh(self, r):
        self.domain.require(r)
        return self._dh(np.asarray(r, dtype=float) if np.ndim(r) else float(r))

    def d2h(self, r):
        self.domain.require(r)
        return self._d2h(np.asarray(r, dtype=float) if np.ndim(r) else float(r))

    def log_deriv(self, r):
        """H(r) = h'(r)/h(r), the logarithmic derivative of the warp."""
        self.domain.require(r)
        if self._logderiv is not None:
            return self._logderiv(np.asarray(r, dtype=float) if np.ndim(r) else float(r))
        return self._dh(r) / self._h(r)

    # Unchecked variants for use inside ODE right-hand sides, where trial
    # steps may momentarily probe past the stopping event.
    def h_unchecked(self, r):
        return self._h(r)

    def log_deriv_unchecked(self, r):
        if self._logderiv is not None:
            return self._logderiv(r)
        return self._dh(r) / self._h(r)

    def exact_curvature(self, r):
        """Family-exact curvature evaluator, or None if not available."""
        if self._curvature is None:
            return None
        self.domain.require(r)
        return self._curvature(np.asarray(r, dtype=float) if np.ndim(r) else float(r))

    def require_point(self, p: Point) -> None:
        self.domain.require(p.r)


# -- family constructors ------------------------------------------------------


def warp_one_over_r() -> WarpFunction:
    """h(r) = 1/r on (0, inf); the flat transverse-shrinking warp."""
    return WarpFunction(
        kind="one_over_r",
        params=(),
        domain=Domain(0.0),
        _h=lambda r: 1.0 / r,
        _dh=lambda r: -1.0 / (r * r),
        _d2h=lambda r: 2.0 / (r * r * r),
        _logderiv=lambda r: -1.0 / r,
        _curvature=lambda r: np.zeros_like(np.asarray(r, dtype=float)) if np.ndim(r) else 0.0,
    )


def warp_r() -> WarpFunction:
    """h(r) = r on (0, inf); curvature -2/r^2."""
    return WarpFunction(
        kind="r",
        params=(),
        domain=Domain(0.0),
        _h=lambda r: r if np.ndim(r) else float(r),
        _dh=lambda r: np.ones_like(np.asarray(r, dtype=float)) if np.ndim(r) else 1.0,
        _d2h=lambda r: np.zeros_like(np.asarray(r, dtype=float)) if np.ndim(r) else 0.0,
        _logderiv=lambda r: 1.0 / r,
        _curvature=lambda r: -2.0 / (r * r),
    )


def warp_exp() -> WarpFunction:
    """h(r) = e^r on (0, inf); constant curvature -1."""
    return WarpFunction(
        kind="exp",
        params=(),
        domain=Domain(0.0),
        _h=np.exp,
        _dh=np.exp,
        _d2h=np.exp,
        _logderiv=lambda r: np.ones_like(np.asarray(r, dtype=float)) if np.ndim(r) else 1.0,
        _curvature=lambda r: np.full_like(np.asarray(r, dtype=float), -1.0) if np.ndim(r) else -1.0,
    )


def _positive_side(h_sample: Callable, pole: float | None) -> Domain:
    """Pick the maximal open subinterval of (0, inf), cut at the pole,
    on which the sampled h is strictly positive."""
    cuts = [0.0, math.inf]
    if pole is not None and pole > 0.0:
        cuts = [0.0, pole, math.inf]
    candidates = []
    for lo, hi in zip(cuts[:-1], cuts[1:]):
        probe_hi = hi if math.isfinite(hi) else max(2.0 * lo + 10.0, 10.0)
        probe = lo + 0.5 * (probe_hi - lo)
        if h_sample(probe) > 0.0:
            candidates.append(Domain(lo, hi))
    if not candidates:
        raise ValueError("warp parameters give no interval with h > 0 in (0, inf)")
    # A simple pole flips the sign, so at most one side is positive.
    return candidates[0]


def warp_flat(a0: float, a1: float) -> WarpFunction:
    """h(r) = a0/(a1 - r); identically flat on its positivity interval.

    The pole r = a1 is excluded.  For a0 < 0 and a1 <= 0 the domain is all of
    (0, inf); in particular ``warp_flat(-1, 0)`` equals ``warp_one_over_r()``.
    """
    a0, a1 = float(a0), float(a1)
    if a0 == 0.0:
        raise ValueError("flat warp requires a0 != 0 (h would vanish identically)")
    dom = _positive_side(lambda r: a0 / (a1 - r), a1)

    def h(r):
        return a0 / (a1 - r)

    def dh(r):
        d = a1 - r
        return a0 / (d * d)

    def d2h(r):
        d = a1 - r
        return 2.0 * a0 / (d * d * d)

    def H(r):
        return 1.0 / (a1 - r)

    return WarpFunction(
        kind="flat",
        params=(a0, a1),
        domain=dom,
        _h=h,
        _dh=dh,
        _d2h=d2h,
        _logderiv=H,
        # The family is defined by H' = H^2, hence exactly zero curvature.
        _curvature=lambda r: np.zeros_like(np.asarray(r, dtype=float)) if np.ndim(r) else 0.0,
    )


def warp_neg2(c0: float, c1: float, c2: float) -> WarpFunction:
    """h(r) = c0 r / (c1 + c2 r^3); curvature -2/r^2 on its positivity interval.

    Any positive root of c1 + c2 r^3 is excluded; ``warp_neg2(1, 1, 0)``
    reduces to ``warp_r()`` up to scale.
    """
    c0, c1, c2 = float(c0), float(c1), float(c2)
    if c0 == 0.0:
        raise ValueError("neg2 warp requires c0 != 0 (h would vanish identically)")
    if c1 == 0.0 and c2 == 0.0:
        raise ValueError("neg2 warp requires c1 + c2 r^3 not identically zero")
    pole = None
    if c2 != 0.0:
        root = -c1 / c2
        if root > 0.0:
            pole = root ** (1.0 / 3.0)
    dom = _positive_side(lambda r: c0 * r / (c1 + c2 * r * r * r), pole)

    def h(r):
        return c0 * r / (c1 + c2 * r * r * r)

    def dh(r):
        q = c1 + c2 * r * r * r
        return c0 * (c1 - 2.0 * c2 * r * r * r) / (q * q)

    def d2h(r):
        q = c1 + c2 * r * r * r
        return c0 * (6.0 * c2 * r * r) * (c2 * r * r * r - 2.0 * c1) / (q * q * q)

    def H(r):
        return 1.0 / r - 3.0 * c2 * r * r / (c1 + c2 * r * r * r)

    return WarpFunction(
        kind="neg2",
        params=(c0, c1, c2),
        domain=dom,
        _h=h,
        _dh=dh,
        _d2h=d2h,
        _logderiv=H,
        # Defining property of the family: H' - H^2 = -2/r^2.
        _curvature=lambda r: -2.0 / (r * r),
    )


def warp_custom(
    h: Callable,
    dh: Callable | None = None,
    d2h: Callable | None = None,
    *,
    domain: tuple[float, float] | Domain,
    fd_step: float | None = None,
    check: bool = True,
    check_tol: float = CONSISTENCY_TOL,
) -> WarpFunction:
    """Wrap caller-supplied evaluators as a warp function.

    Missing derivatives are built by central differences with step
    ``fd_step * max(1, r)`` (default 1e-6 relative); the second difference
    uses the square root of that step, which balances its rounding error
    (eps/step^2) against truncation.  The domain must be an explicit open
    subinterval of (0, inf).  Positivity of h and consistency of supplied
    derivatives are sampled unless ``check`` is false.
    """
    dom = domain if isinstance(domain, Domain) else Domain(*domain)
    step = FD_STEP_SCALE if fd_step is None else float(fd_step)
    step2 = math.sqrt(step)
    supplied = (dh is not None, d2h is not None)

    if dh is None:
        def dh(r, _h=h, _s=step):  # noqa: E731 - closure over the raw h
            d = _s * np.maximum(1.0, np.abs(r)) if np.ndim(r) else _s * max(1.0, abs(r))
            return (_h(r + d) - _h(r - d)) / (2.0 * d)

    if d2h is None:
        def d2h(r, _h=h, _s=step2):
            d = _s * np.maximum(1.0, np.abs(r)) if np.ndim(r) else _s * max(1.0, abs(r))
            return (_h(r + d) - 2.0 * _h(r) + _h(r - d)) / (d * d)

    w = WarpFunction(
        kind="custom",
        params=(),
        domain=dom,
        _h=h,
        _dh=dh,
        _d2h=d2h,
    )
    if not check:
        return w
    # FD-built derivatives are consistent by construction; only cross-check
    # what the caller actually supplied.
    return _validate(
        w,
        check_tol if any(supplied) else None,
        check_dh=supplied[0],
        check_d2h=supplied[0] and supplied[1],
    )


def _validate(
    w: WarpFunction,
    check_tol: float | None,
    check_dh: bool = True,
    check_d2h: bool = True,
) -> WarpFunction:
    """Reject non-positive h and inconsistent derivative evaluators."""
    grid = w.domain.sample()
    hv = np.asarray(w._h(grid), dtype=float)
    if not np.all(np.isfinite(hv)) or np.any(hv <= 0.0):
        raise ValueError(
            f"warp {w.kind!r} is not strictly positive on its domain "
            f"({w.domain.lo}, {w.domain.hi})"
        )
    Hv = np.asarray(w.log_deriv(grid), dtype=float)
    if not np.all(np.isfinite(Hv)):
        raise ValueError(f"warp {w.kind!r} has a non-finite logarithmic derivative")
    if check_tol is not None:
        # Central-difference cross-check of dh against h, and d2h against dh.
        step = FD_STEP_SCALE * np.maximum(1.0, grid)
        if check_dh:
            fd1 = (w._h(grid + step) - w._h(grid - step)) / (2.0 * step)
            got1 = np.asarray(w._dh(grid), dtype=float)
            if np.max(np.abs(got1 - fd1) / np.maximum(1.0, np.abs(fd1))) > check_tol:
                raise ValueError(f"warp {w.kind!r}: h' evaluator inconsistent with h")
        if check_d2h:
            fd2 = (w._dh(grid + step) - w._dh(grid - step)) / (2.0 * step)
            got2 = np.asarray(w._d2h(grid), dtype=float)
            if np.max(np.abs(got2 - fd2) / np.maximum(1.0, np.abs(fd2))) > check_tol:
                raise ValueError(f"warp {w.kind!r}: h'' evaluator inconsistent with h'")
    return w


def make_warp(
    spec: WarpSpec | str,
    *,
    domain: tuple[float, float] | Domain | None = None,
    check: bool = True,
    check_tol: float = CONSISTENCY_TOL,
) -> WarpFunction:
    """Build a warp function from a spec (or its string form).

    Parameters
    ----------
    spec
        A :class:`WarpSpec` or a string such as ``"one_over_r"`` or
        ``"flat:2,5"``.
    domain
        Optional restriction; intersected with the family's natural domain.
    check, check_tol
        When ``check`` is true (default), h is sampled to confirm positivity
        and the derivative evaluators are cross-checked by central
        differences at relative tolerance ``check_tol``.

    Raises
    ------
    ValueError
        If the parameters leave no open interval with h > 0, or if the
        restriction empties the domain, or a consistency check fails.
    """
    if isinstance(spec, str):
        spec = WarpSpec.from_string(spec)
    builders = {
        "one_over_r": warp_one_over_r,
        "r": warp_r,
        "exp": warp_exp,
        "flat": warp_flat,
        "neg2": warp_neg2,
    }
    w = builders[spec.kind](*spec.params)
    if domain is not None:
        dom = domain if isinstance(domain, Domain) else Domain(*domain)
        w = WarpFunction(
            kind=w.kind,
            params=w.params,
            domain=w.domain.intersect(dom),
            _h=w._h,
            _dh=w._dh,
            _d2h=w._d2h,
            _logderiv=w._logderiv,
            _curvature=w._curvature,
        )
    return _validate(w, check_tol if check else None)
