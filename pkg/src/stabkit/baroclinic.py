"""Two-layer zonal-current instability in a rotating channel.

Quasi-geostrophic perturbations of two superposed fluid layers moving with
velocities U1, U2 in a periodic channel, with interface coupling F
(rotational Froude number), planetary vorticity gradient beta, and Ekman
dissipation r acting as -r*laplacian on each layer.  A normal mode
exp(i*alpha*(x - c*t))*sin(m*pi*y) with a^2 = alpha^2 + (m*pi)^2 turns the
two coupled PDEs into a 2x2 linear system for the layer amplitudes; its
determinant is a complex quadratic in the phase speed c:

    A c^2 + B c + C = 0,
    A = a^2 (a^2 + 2F),
    B = -A (U1 + U2) + 2 (a^2 + F) z,
    C = A U1 U2 - (a^2 + F)(U1 + U2) z + (a^2 + F) F U^2 + z^2 - F^2 U^2,

with U = U1 - U2 and z = beta + i*r*a^2/alpha.  The wave grows when
Im(c) > 0 (growth rate alpha*Im(c)).

Without dissipation the instability sets in at the shear U_cI where two
real phase speeds collide; with dissipation the collision is imperfect and
the onset as r -> 0+ drops to U_cR < U_cI, an O(1) jump of the marginal
curve.  Both closed thresholds and the sweeping machinery to exhibit the
mode merging are provided.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import DegenerateQuadratic, DomainError
from .sweep import bisect_boundary

__all__ = [
    "BaroclinicParams",
    "DispersionRoots",
    "dispersion",
    "inviscid_threshold",
    "vanishing_viscosity_threshold",
    "merging_portrait",
    "critical_shear_bisected",
]

#: growth rates within this of zero count as neutral in bisections
GROWTH_TOL = 1e-12


@dataclass(frozen=True)
class BaroclinicParams:
    """Channel-flow parameters.

    F > 0: interface coupling; beta >= 0: planetary vorticity gradient;
    r >= 0: Ekman dissipation; alpha > 0: zonal wavenumber; m >= 1:
    meridional mode number; U1, U2: layer velocities (shear U = U1 - U2).
    """

    F: float = 10.0
    beta: float = 1.0
    r: float = 0.0
    alpha: float = 1.0
    m: int = 1
    U1: float = 0.0
    U2: float = 0.0

    def __post_init__(self):
        if not self.F > 0.0:
            raise DomainError("F must be > 0")
        if self.beta < 0.0:
            raise DomainError("beta must be >= 0")
        if self.r < 0.0:
            raise DomainError("r must be >= 0")
        if not self.alpha > 0.0:
            raise DomainError("alpha must be > 0")
        if int(self.m) != self.m or self.m < 1:
            raise DomainError("m must be an integer >= 1")

    @property
    def a2(self) -> float:
        return self.alpha * self.alpha + (self.m * math.pi) ** 2

    @property
    def shear(self) -> float:
        return self.U1 - self.U2


@dataclass(frozen=True)
class DispersionRoots:
    """Phase speeds sorted by descending imaginary part, with growth rates.

    residuals are the relative residuals of each root in the assembled
    quadratic (both should sit at rounding level).
    """

    c1: complex
    c2: complex
    growth_rates: tuple[float, float]
    residuals: tuple[float, float]

    @property
    def max_growth(self) -> float:
        return max(self.growth_rates)


def _quadratic_coeffs(p: BaroclinicParams) -> tuple[complex, complex, complex]:
    a2 = p.a2
    s2 = a2 + p.F
    A = a2 * (a2 + 2.0 * p.F)
    z = p.beta + 1j * p.r * a2 / p.alpha
    S = p.U1 + p.U2
    U = p.shear
    B = -A * S + 2.0 * s2 * z
    C = A * p.U1 * p.U2 - s2 * S * z + s2 * p.F * U * U + z * z - p.F * p.F * U * U
    return complex(A), complex(B), complex(C)


def _solve_quadratic(A: complex, B: complex, C: complex) -> tuple[complex, complex]:
    # cancellation-safe complex quadratic: pick the sqrt sign aligned with B
    sq = cmath.sqrt(B * B - 4.0 * A * C)
    if (B.conjugate() * sq).real < 0.0:
        sq = -sq
    qterm = -0.5 * (B + sq)
    r1 = qterm / A
    r2 = C / qterm if qterm != 0.0 else r1
    return r1, r2


def dispersion(p: BaroclinicParams) -> DispersionRoots:
    """Both complex phase speeds of the normal mode.

    Raises DegenerateQuadratic if the leading coefficient vanishes (cannot
    happen for valid parameters, where a^2(a^2 + 2F) > 0, but the guard
    keeps the solver honest against hand-built coefficient edits).
    """
    A, B, C = _quadratic_coeffs(p)
    if A == 0:
        raise DegenerateQuadratic("leading coefficient of the phase-speed quadratic vanished")
    r1, r2 = _solve_quadratic(A, B, C)
    if r2.imag > r1.imag:
        r1, r2 = r2, r1

    def residual(c: complex) -> float:
        val = abs(A * c * c + B * c + C)
        scale = max(abs(A * c * c), abs(B * c), abs(C), 1e-300)
        return val / scale

    return DispersionRoots(
        c1=r1,
        c2=r2,
        growth_rates=(p.alpha * r1.imag, p.alpha * r2.imag),
        residuals=(residual(r1), residual(r2)),
    )


def inviscid_threshold(p: BaroclinicParams) -> float:
    """Critical shear without dissipation: 2*beta*F / (a^2*sqrt(4F^2 - a^4)).

    Below it the two modes propagate neutrally; at it they collide and
    instability follows.  Only exists for 4F^2 > a^4 (long enough waves).
    """
    a2 = p.a2
    rad = 4.0 * p.F * p.F - a2 * a2
    if rad <= 0.0:
        raise DomainError("4F^2 <= a^4: wave too short, no inviscid threshold")
    return 2.0 * p.beta * p.F / (a2 * math.sqrt(rad))


def vanishing_viscosity_threshold(p: BaroclinicParams) -> float:
    """Critical shear in the limit r -> 0+: 2*beta*F / (a*(a^2+F)*sqrt(2F - a^2)).

    Strictly below the dissipationless threshold whenever both exist: an
    arbitrarily small Ekman dissipation lowers the marginal curve by a
    finite amount.  Requires 2F > a^2.
    """
    a2 = p.a2
    rad = 2.0 * p.F - a2
    if rad <= 0.0:
        raise DomainError("2F <= a^2: no vanishing-viscosity threshold")
    return 2.0 * p.beta * p.F / (math.sqrt(a2) * (a2 + p.F) * math.sqrt(rad))


def merging_portrait(
    p: BaroclinicParams, U_range: np.ndarray, r: float
) -> list[tuple[float, DispersionRoots]]:
    """Both roots along a shear sweep at fixed dissipation.

    The shear is applied symmetrically about the mean of (U1, U2).  At
    r = 0 the portrait shows the perfect collision of two real phase
    speeds; for r > 0 the branches avoid each other and one growth rate
    crosses zero at a strictly smaller shear.
    """
    mean = 0.5 * (p.U1 + p.U2)
    out = []
    for U in np.asarray(U_range, dtype=float):
        q = replace(p, r=r, U1=mean + 0.5 * U, U2=mean - 0.5 * U)
        out.append((float(U), dispersion(q)))
    return out


def critical_shear_bisected(
    p: BaroclinicParams,
    r: float,
    bracket: tuple[float, float] = (0.0, 1.0),
    tol: float = 1e-12,
) -> float:
    """Onset shear by bisecting the sign of the largest growth rate.

    Growth rates within GROWTH_TOL of zero count as stable, so at r = 0 the
    neutral propagating modes below the collision do not trip the predicate.
    """
    mean = 0.5 * (p.U1 + p.U2)

    def unstable(U: float) -> bool:
        q = replace(p, r=r, U1=mean + 0.5 * U, U2=mean - 0.5 * U)
        return dispersion(q).max_growth > GROWTH_TOL

    return bisect_boundary(unstable, bracket, tol=tol)
