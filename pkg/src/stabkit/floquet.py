"""Parametric resonance of a rotating elastic rotor.

Coupled Mathieu-like equations for the planar motion of a spinning disk
under vertical base excitation:

    x'' + 2*alpha*y' + (1 + 4*eps*eta^2*cos(2*eta*t)) x + 2*eps*kappa*x' = 0,
    y'' - 2*alpha*x' + (1 + 4*eps*eta^2*cos(2*eta*t)) y + 2*eps*kappa*y' = 0.

The combination resonance of first order sits at eta0 = sqrt(1 + alpha^2)
(sum of the two rotating-frame frequencies equals the excitation frequency
2*eta).  Without damping the instability tongue has boundaries
eta0*(1 +/- eps); with damping mu = 2*eps*kappa the boundaries move to
eta0*(1 +/- sqrt((1+alpha^2)*eps^2 - (mu/(2*eta0))^2)), which for mu -> 0+
tends to eta0*(1 +/- eps*sqrt(1+alpha^2)): the tongue is wider than the
undamped one, a destabilization jump controlled by the damping/excitation
ratio.  Everything here is checked against direct Floquet monodromy of the
period-pi/eta system, computed with a fixed-step integrator so results are
bit-reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, IntegrationError, NoBoundary
from .sweep import bisect_boundary

__all__ = [
    "RotorParams",
    "FloquetResult",
    "STABILITY_SLACK",
    "propagator",
    "monodromy",
    "mathieu_reduction_check",
    "tongue_boundary",
    "tongue_boundary_analytic",
]

#: multipliers up to this far outside the unit circle still count as stable
#: (unit-circle arithmetic noise)
STABILITY_SLACK = 1e-9


@dataclass(frozen=True)
class RotorParams:
    """Rotor under periodic axial excitation.

    alpha >= 0: rotation-speed parameter; epsilon >= 0: excitation
    amplitude; eta > 0: excitation half-frequency; kappa >= 0: damping
    scale, entering the equations as mu = 2*epsilon*kappa.
    """

    alpha: float = 1.0
    epsilon: float = 0.05
    eta: float = math.sqrt(2.0)
    kappa: float = 0.0

    def __post_init__(self):
        if self.alpha < 0.0:
            raise DomainError("alpha must be >= 0")
        if self.epsilon < 0.0:
            raise DomainError("epsilon must be >= 0")
        if not self.eta > 0.0:
            raise DomainError("eta must be > 0")
        if self.kappa < 0.0:
            raise DomainError("kappa must be >= 0")

    @property
    def mu(self) -> float:
        return 2.0 * self.epsilon * self.kappa

    @property
    def period(self) -> float:
        return math.pi / self.eta

    @property
    def eta0(self) -> float:
        return math.sqrt(1.0 + self.alpha * self.alpha)


@dataclass(frozen=True, eq=False)
class FloquetResult:
    """Multipliers of one period map, their largest modulus, and the verdict."""

    multipliers: np.ndarray
    max_modulus: float
    stable: bool
    liouville_residual: float
    steps: int


def _rk4_period(matrix_fn, dim: int, T: float, steps: int) -> np.ndarray:
    """Fundamental matrix after one period by classical fixed-step RK4."""
    Y = np.eye(dim)
    h = T / steps
    half = 0.5 * h
    for i in range(steps):
        t0 = i * h
        A1 = matrix_fn(t0)
        A2 = matrix_fn(t0 + half)
        A4 = matrix_fn(t0 + h)
        k1 = A1 @ Y
        k2 = A2 @ (Y + half * k1)
        k3 = A2 @ (Y + half * k2)
        k4 = A4 @ (Y + h * k3)
        Y = Y + (h / 6.0) * (k1 + 2.0 * (k2 + k3) + k4)
    return Y


def _rotor_matrix(p: RotorParams, t: float) -> np.ndarray:
    pt = 1.0 + 4.0 * p.epsilon * p.eta * p.eta * math.cos(2.0 * p.eta * t)
    mu = p.mu
    a2 = 2.0 * p.alpha
    return np.array(
        [
            [0.0, 0.0, 1.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
            [-pt, 0.0, -mu, -a2],
            [0.0, -pt, a2, -mu],
        ]
    )


def propagator(p: RotorParams, steps: int = 1024) -> np.ndarray:
    """Period map (monodromy matrix) of the 4-dimensional first-order form."""
    if steps < 256:
        raise DomainError("steps must be >= 256")
    return _rk4_period(lambda t: _rotor_matrix(p, t), 4, p.period, steps)


def _match_distance(a: np.ndarray, b: np.ndarray) -> float:
    return float(max(np.min(np.abs(b - x)) for x in a))


def monodromy(p: RotorParams, steps: int = 1024, verify: bool = True) -> FloquetResult:
    """Floquet multipliers over one forcing period.

    With verify=True the computation is repeated at half the step size and
    IntegrationError is raised if any multiplier moves by more than 1e-6.
    The product of the multipliers is checked against exp(-2*mu*T) (trace
    integral of the system matrix); the relative residual is reported.
    """
    if steps < 256:
        raise DomainError("steps must be >= 256")
    Phi = _rk4_period(lambda t: _rotor_matrix(p, t), 4, p.period, steps)
    mults = np.sort_complex(np.linalg.eigvals(Phi))
    if verify:
        Phi2 = _rk4_period(lambda t: _rotor_matrix(p, t), 4, p.period, 2 * steps)
        mults2 = np.sort_complex(np.linalg.eigvals(Phi2))
        if _match_distance(mults, mults2) > 1e-6:
            raise IntegrationError(
                "halving the step changed a multiplier by more than 1e-6; increase steps"
            )
    expected_det = math.exp(-2.0 * p.mu * p.period)
    residual = abs(float(np.linalg.det(Phi)) - expected_det) / expected_det
    max_modulus = float(np.max(np.abs(mults)))
    return FloquetResult(
        multipliers=mults,
        max_modulus=max_modulus,
        stable=max_modulus <= 1.0 + STABILITY_SLACK,
        liouville_residual=residual,
        steps=steps,
    )


def _mathieu_stable(alpha: float, epsilon: float, eta: float, steps: int) -> tuple[bool, float]:
    # scalar reduction v'' + ((1+alpha^2)/eta^2 + 4 eps cos 2 tau) v = 0,
    # exact for the undamped rotor via v = exp(-i alpha t) (x + i y), tau = eta t
    c = (1.0 + alpha * alpha) / (eta * eta)

    def amat(tau: float) -> np.ndarray:
        return np.array([[0.0, 1.0], [-(c + 4.0 * epsilon * math.cos(2.0 * tau)), 0.0]])

    Phi = _rk4_period(amat, 2, math.pi, steps)
    mods = np.abs(np.linalg.eigvals(Phi))
    mx = float(np.max(mods))
    return mx <= 1.0 + STABILITY_SLACK, mx


def mathieu_reduction_check(
    p: RotorParams,
    eta_grid: np.ndarray,
    steps: int = 1024,
    band: float = 1e-6,
) -> float:
    """Largest verdict disagreement between the 4-D system and its scalar reduction.

    Requires kappa = 0 (the reduction only exists without damping).  For
    each eta in the grid both stability verdicts are computed; grid points
    where either path has |max_modulus - 1| <= band are skipped (threshold
    noise), all others must agree, so the return value is 0.0 or 1.0.
    p.eta is ignored; the grid supplies the frequencies.
    """
    if p.kappa != 0.0:
        raise DomainError("scalar reduction requires kappa = 0")
    worst = 0.0
    for eta in np.asarray(eta_grid, dtype=float):
        q = RotorParams(alpha=p.alpha, epsilon=p.epsilon, eta=float(eta), kappa=0.0)
        full = monodromy(q, steps=steps, verify=False)
        scalar_stable, scalar_mx = _mathieu_stable(p.alpha, p.epsilon, float(eta), steps)
        if abs(full.max_modulus - 1.0) <= band or abs(scalar_mx - 1.0) <= band:
            continue
        worst = max(worst, float(full.stable != scalar_stable))
    return worst


def tongue_boundary_analytic(p: RotorParams, side: int) -> float:
    """First-order boundary of the first sum-resonance tongue.

    mu = 0: eta0*(1 + side*epsilon).  mu > 0:
    eta0*(1 + side*sqrt((1+alpha^2)*epsilon^2 - (mu/(2*eta0))^2)); raises
    NoBoundary when the radicand is negative (tongue lifted off).  The two
    formulas do not agree as mu -> 0+, which is the parametric version of
    the destabilization jump.
    """
    eta0 = p.eta0
    sgn = 1.0 if side >= 0 else -1.0
    if p.mu == 0.0:
        return eta0 * (1.0 + sgn * p.epsilon)
    rad = (1.0 + p.alpha * p.alpha) * p.epsilon * p.epsilon - (p.mu / (2.0 * eta0)) ** 2
    if rad < 0.0:
        raise NoBoundary("damping exceeds excitation: instability tongue lifted off")
    return eta0 * (1.0 + sgn * math.sqrt(rad))


def tongue_boundary(
    p: RotorParams,
    side: int,
    steps: int = 1024,
    tol: float = 1e-12,
    span: float = 3.0,
) -> float:
    """Bisected eta where the largest multiplier modulus crosses 1.

    Scans eta over eta0*(1 +/- span*epsilon) for unstable points, then
    bisects between the outermost unstable point on the requested side and
    the stable region beyond it.  p.eta is ignored.  Raises NoBoundary when
    no unstable point exists in the scan window (tongue lifted off or below
    the noise floor).
    """
    if not p.epsilon > 0.0:
        raise DomainError("boundary tracing needs epsilon > 0")
    eta0 = p.eta0
    lo_edge = eta0 * (1.0 - span * p.epsilon)
    hi_edge = eta0 * (1.0 + span * p.epsilon)

    def unstable(eta: float) -> bool:
        q = RotorParams(alpha=p.alpha, epsilon=p.epsilon, eta=eta, kappa=p.kappa)
        return not monodromy(q, steps=steps, verify=False).stable

    grid = np.linspace(lo_edge, hi_edge, 41)
    flags = [unstable(float(e)) for e in grid]
    if not any(flags):
        raise NoBoundary("no unstable point found near the resonance")
    bad = [float(e) for e, f in zip(grid, flags) if f]
    if side >= 0:
        inner, outer = max(bad), hi_edge
        while unstable(outer):
            outer = eta0 + 2.0 * (outer - eta0)
    else:
        inner, outer = min(bad), lo_edge
        while outer > 1e-8 and unstable(outer):
            outer = max(1e-8, eta0 - 2.0 * (eta0 - outer))
    lo, hi = (inner, outer) if inner < outer else (outer, inner)
    return bisect_boundary(unstable, (lo, hi), tol=tol)
