"""Parameter sweeps, boundary bisection and directional (ray) limits.

The ray-limit probe is the workhorse of every vanishing-dissipation test:
evaluate a critical parameter along a ray of shrinking perturbation
magnitudes and Richardson-extrapolate to magnitude zero, reporting the
apparent convergence order alongside the limit.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import DomainError, NoBracket

__all__ = [
    "bisect_boundary",
    "ray_limit",
    "RayLimit",
    "SweepAxis",
    "SweepGrid",
]

#: default absolute bisection tolerance
BISECTION_TOL = 1e-12


def bisect_boundary(
    f: Callable[[float], bool],
    bracket: tuple[float, float],
    tol: float = BISECTION_TOL,
    max_iter: int = 200,
) -> float:
    """Locate the switching point of a boolean verdict function by bisection.

    Parameters
    ----------
    f : callable
        Pure predicate of one scalar; must differ at the bracket endpoints.
    bracket : (lo, hi)
        Interval containing exactly one verdict switch of interest.
    tol : float
        Absolute tolerance on the bracket width (default 1e-12).

    Returns
    -------
    float
        Midpoint of the final bracket. Deterministic for identical inputs.
    """
    lo, hi = float(bracket[0]), float(bracket[1])
    if not lo < hi:
        raise DomainError(f"invalid bracket [{lo}, {hi}]")
    flo = f(lo)
    fhi = f(hi)
    if flo == fhi:
        raise NoBracket(f"verdict identical ({flo}) at both bracket endpoints [{lo}, {hi}]")
    for _ in range(max_iter):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:  # bracket at floating-point resolution
            break
        if f(mid) == flo:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


@dataclass(frozen=True)
class RayLimit:
    """Directional limit of a critical parameter as the magnitude shrinks to 0."""

    direction: tuple[float, ...]
    magnitudes: tuple[float, ...]
    values: tuple[float, ...]
    extrapolated_limit: float
    convergence_order: float
    #: error estimate for extrapolated_limit: with four or more magnitudes the
    #: spread between the last two triples' extrapolations, with exactly three
    #: the sensitivity of the limit to the assumed convergence order
    residual: float = field(default=math.nan)


def _extrapolate(m0: float, m1: float, v0: float, v1: float, order: float) -> float:
    # v(m) ~ L + C m^p  =>  L = (r^p v1 - v0) / (r^p - 1), r = m0/m1 > 1
    rp = (m0 / m1) ** order
    return (rp * v1 - v0) / (rp - 1.0)


def ray_limit(
    critical: Callable[[Sequence[float], float], float],
    direction: Sequence[float],
    magnitudes: Sequence[float],
) -> RayLimit:
    """Evaluate ``critical(direction, magnitude)`` along a shrinking ray.

    Assumes a leading-order error O(magnitude) unless the measured order
    from the last three values says otherwise; both the limit and the
    measured order are reported.  Requires at least three strictly
    decreasing positive magnitudes.
    """
    mags = [float(m) for m in magnitudes]
    if len(mags) < 3:
        raise DomainError("ray_limit needs at least three magnitudes")
    if any(m <= 0.0 for m in mags) or any(b >= a for a, b in zip(mags, mags[1:])):
        raise DomainError("magnitudes must be positive and strictly decreasing")
    values = [float(critical(direction, m)) for m in mags]

    d_prev = values[-2] - values[-3]
    d_last = values[-1] - values[-2]
    if d_last != 0.0 and d_prev / d_last > 0.0:
        measured = math.log(d_prev / d_last) / math.log(mags[-3] / mags[-2])
    else:
        measured = math.inf if d_last == 0.0 else math.nan
    # trust the measured order only within a sane window
    order = measured if (math.isfinite(measured) and 0.25 <= measured <= 4.0) else 1.0

    if d_last == 0.0:
        limit = values[-1]
        residual = 0.0
    else:
        limit = _extrapolate(mags[-2], mags[-1], values[-2], values[-1], order)
        if len(mags) >= 4:
            # previous triple, with its own measured order
            dp = values[-3] - values[-4]
            dl = values[-2] - values[-3]
            if dl != 0.0 and dp / dl > 0.0:
                mp = math.log(dp / dl) / math.log(mags[-4] / mags[-3])
            else:
                mp = math.nan
            op = mp if (math.isfinite(mp) and 0.25 <= mp <= 4.0) else 1.0
            prev_limit = _extrapolate(mags[-3], mags[-2], values[-3], values[-2], op)
        else:
            # three points fit the power model exactly, so compare against the
            # default first-order assumption to expose order sensitivity
            prev_limit = _extrapolate(mags[-2], mags[-1], values[-2], values[-1], 1.0)
        residual = abs(limit - prev_limit)
    return RayLimit(
        direction=tuple(float(c) for c in direction),
        magnitudes=tuple(mags),
        values=tuple(values),
        extrapolated_limit=limit,
        convergence_order=measured,
        residual=residual,
    )


@dataclass(frozen=True)
class SweepAxis:
    """One grid axis: linearly or logarithmically spaced samples of [lo, hi]."""

    name: str
    lo: float
    hi: float
    count: int
    scale: str = "linear"

    def __post_init__(self):
        if self.count < 2:
            raise DomainError(f"axis {self.name}: count must be >= 2")
        if not self.lo < self.hi:
            raise DomainError(f"axis {self.name}: requires lo < hi")
        if self.scale not in ("linear", "log"):
            raise DomainError(f"axis {self.name}: scale must be 'linear' or 'log'")
        if self.scale == "log" and self.lo <= 0.0:
            raise DomainError(f"axis {self.name}: log scale requires lo > 0")

    def points(self) -> np.ndarray:
        if self.scale == "log":
            return np.geomspace(self.lo, self.hi, self.count)
        return np.linspace(self.lo, self.hi, self.count)


@dataclass
class SweepGrid:
    """Dense rectangular sweep over 1-3 axes with a per-point evaluation."""

    axes: tuple[SweepAxis, ...]
    results: list | None = None

    def __post_init__(self):
        if not 1 <= len(self.axes) <= 3:
            raise DomainError("SweepGrid supports 1 to 3 axes")
        names = [ax.name for ax in self.axes]
        if len(set(names)) != len(names):
            raise DomainError("axis names must be distinct")

    def grid_points(self) -> list[dict[str, float]]:
        """All grid points in row-major order (last axis fastest)."""
        axes_pts = [ax.points() for ax in self.axes]
        mesh = np.meshgrid(*axes_pts, indexing="ij")
        flat = [m.ravel() for m in mesh]
        return [
            {ax.name: float(flat[k][i]) for k, ax in enumerate(self.axes)}
            for i in range(flat[0].size)
        ]

    def evaluate(self, func: Callable[[dict[str, float]], object], threads: int = 1) -> list:
        """Apply ``func`` to every grid point, preserving row-major order.

        ``func`` must be pure; with threads > 1 points are evaluated
        concurrently but results keep deterministic order.
        """
        pts = self.grid_points()
        if threads <= 1:
            self.results = [func(p) for p in pts]
        else:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                self.results = list(pool.map(func, pts))
        return self.results
