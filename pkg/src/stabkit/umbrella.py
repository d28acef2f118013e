"""Whitney-umbrella geometry and its ruled-surface image in coefficient space.

The canonical umbrella is the image of (x1, x2) -> (x1^2, x2, x1*x2),
cut out implicitly by y1*y2^2 - y3^2 = 0 together with y1 >= 0.  The same
pinch-point geometry appears as the marginal-stability surface
a1*a2*a3 = a1^2 + a3^2 (a4 normalized to 1) in quartic-coefficient space;
``bottema_from_whitney`` is the explicit coordinate change carrying one
onto the other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

__all__ = [
    "UmbrellaPoint",
    "BottemaSurfacePoint",
    "umbrella_map",
    "umbrella_residual",
    "bottema_height",
    "bottema_from_whitney",
    "surface_residual",
    "sample_umbrella",
]


@dataclass(frozen=True)
class UmbrellaPoint:
    """Ambient coordinates (y1, y2, y3) with optional preimage (x1, x2)."""

    y1: float
    y2: float
    y3: float
    x1: float | None = None
    x2: float | None = None


@dataclass(frozen=True)
class BottemaSurfacePoint:
    """Point of the ruled surface a1*a2*a3 = a1^2 + a3^2 with a1, a3 >= 0.

    ``m`` is the slope of the straight generator a3 = m*a1 through the
    point (nan on the pinch line a1 = a3 = 0, where every generator meets).
    """

    a1: float
    a2: float
    a3: float
    m: float


def umbrella_map(x1: float, x2: float) -> UmbrellaPoint:
    """Canonical umbrella parametrization (x1, x2) -> (x1^2, x2, x1*x2)."""
    return UmbrellaPoint(x1 * x1, x2, x1 * x2, x1, x2)


def umbrella_residual(y1: float, y2: float, y3: float) -> float:
    """Implicit-equation residual y1*y2^2 - y3^2 (zero on the surface, y1 >= 0)."""
    return y1 * y2 * y2 - y3 * y3


def bottema_height(a1: float, a3: float) -> float:
    """Marginal a2 over (a1, a3): (a1^2 + a3^2)/(a1*a3) = m + 1/m, m = a3/a1.

    This is the height of the ruled surface above the open quadrant
    a1 > 0, a3 > 0; it is >= 2 with equality exactly on a1 = a3.
    """
    if a1 <= 0.0 or a3 <= 0.0:
        raise DomainError("bottema_height requires a1 > 0 and a3 > 0")
    return (a1 * a1 + a3 * a3) / (a1 * a3)


def bottema_from_whitney(y1: float, y2: float, y3: float) -> BottemaSurfacePoint:
    """Map an umbrella point into coefficient space.

    a1 = y3/2 + w, a2 = 2 + y2, a3 = -y3/2 + w with w = +sqrt(y3^2/4 + y1*y2).
    Points of the canonical umbrella (y1 >= 0, y1*y2^2 = y3^2, y2 >= 0) land
    on the surface a1*a2*a3 = a1^2 + a3^2 with a1, a3 >= 0.
    """
    rad = 0.25 * y3 * y3 + y1 * y2
    if rad < 0.0:
        raise DomainError(f"negative radicand y3^2/4 + y1*y2 = {rad}")
    w = math.sqrt(rad)
    a1 = 0.5 * y3 + w
    a3 = -0.5 * y3 + w
    m = a3 / a1 if a1 != 0.0 else math.nan
    return BottemaSurfacePoint(a1, 2.0 + y2, a3, m)


def surface_residual(a1: float, a2: float, a3: float) -> float:
    """Relative residual of the surface equation a1*a2*a3 = a1^2 + a3^2."""
    lhs = a1 * a2 * a3
    rhs = a1 * a1 + a3 * a3
    return abs(lhs - rhs) / max(1.0, abs(lhs), abs(rhs))


def sample_umbrella(
    n: int,
    x1_range: tuple[float, float] = (-1.5, 1.5),
    x2_range: tuple[float, float] = (0.0, 3.0),
) -> np.ndarray:
    """Sample the umbrella on an n-by-n preimage grid.

    Returns an (n*n, 10) array with columns
    (x1, x2, y1, y2, y3, a1, a2, a3, residual_umbrella, residual_surface).
    Rows whose image has no coefficient-space counterpart (negative
    radicand, only possible for x2 < 0) carry nan in the a-columns.
    """
    if n < 2:
        raise DomainError("grid size must be at least 2")
    x1s = np.linspace(x1_range[0], x1_range[1], n)
    x2s = np.linspace(x2_range[0], x2_range[1], n)
    rows = np.empty((n * n, 10))
    idx = 0
    for x1 in x1s:
        for x2 in x2s:
            p = umbrella_map(x1, x2)
            res_u = umbrella_residual(p.y1, p.y2, p.y3)
            try:
                b = bottema_from_whitney(p.y1, p.y2, p.y3)
                a1, a2, a3 = b.a1, b.a2, b.a3
                res_s = surface_residual(a1, a2, a3)
            except DomainError:
                a1 = a2 = a3 = res_s = math.nan
            rows[idx] = (x1, x2, p.y1, p.y2, p.y3, a1, a2, a3, res_u, res_s)
            idx += 1
    return rows
