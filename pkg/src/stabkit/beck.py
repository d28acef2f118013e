"""Cantilever column under a follower end load (Beck problem), with damping.

Nondimensional equation on x in [0, 1]:

    w'''' + q w'' + (d1 w')'''' -> operator form
    M w_tt + (d1*P4 + d2*I) w_t + (P4 + q*P2) w = 0

after Galerkin projection onto clamped-free Euler-Bernoulli modes
(w(0) = w'(0) = 0, w''(1) = w'''(1) = 0).  The modes make the boundary
terms vanish exactly, the mass matrix the identity, and the projected
fourth-derivative operator diagonal; the second-derivative projection P2
is non-symmetric (the follower load does no boundary work but the operator
is non-self-adjoint), which is what allows flutter at a finite load q0.

Internal (strain-rate) damping d1 lowers the critical load by an O(1)
amount as d1 -> 0+; external damping d2 does not.  The closed quadratic
surface be12_surface captures this ray-dependent limit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.optimize import brentq

from .errors import DomainError, NoFlutter, QuadratureError
from .sweep import bisect_boundary

__all__ = [
    "BeckParams",
    "GalerkinSystem",
    "beam_wavenumbers",
    "mode_values",
    "assemble",
    "system_eigenvalues",
    "flutter_load",
    "be12_surface",
]

#: eigenvalue-coalescence threshold for undamped flutter detection
COALESCENCE_GAP = 1e-6

#: default ceiling for the load search (dimensionless)
Q_CEILING = 60.0


@dataclass(frozen=True)
class BeckParams:
    """Follower load q >= 0, internal damping d1 >= 0, external damping d2 >= 0."""

    q: float = 0.0
    d1: float = 0.0
    d2: float = 0.0
    n_modes: int = 12

    def __post_init__(self):
        if self.q < 0.0 or self.d1 < 0.0 or self.d2 < 0.0:
            raise DomainError("q, d1, d2 must be >= 0")
        if self.n_modes < 8:
            raise DomainError("n_modes must be >= 8")


@dataclass(frozen=True, eq=False)
class GalerkinSystem:
    """Projected mass, damping, stiffness matrices plus basis wavenumbers."""

    M: np.ndarray
    Dmat: np.ndarray
    Kmat: np.ndarray
    wavenumbers: np.ndarray
    params: BeckParams


def beam_wavenumbers(n: int) -> np.ndarray:
    """First n roots of cos(k)*cosh(k) = -1 (clamped-free beam).

    Solved as cos(k) + 1/cosh(k) = 0 to stay finite for large k; the j-th
    root lies within 0.5 of (2j-1)*pi/2.
    """
    if n < 1:
        raise DomainError("need n >= 1")

    def f(k: float) -> float:
        return math.cos(k) + 1.0 / math.cosh(k)

    roots = []
    for j in range(1, n + 1):
        center = (2 * j - 1) * math.pi / 2.0
        roots.append(brentq(f, center - 0.5, center + 0.5, xtol=1e-14, rtol=1e-15))
    return np.array(roots)


def mode_values(k: float, x: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Clamped-free mode and its first three derivatives at points x in [0, 1].

    The textbook form cosh(kx) - cos(kx) - sigma*(sinh(kx) - sin(kx)) is
    rewritten with e^(-kx) and e^(k(x-1)) factors so nothing overflows for
    large k.  Normalized so the L2 norm on [0, 1] is 1.
    """
    x = np.asarray(x, dtype=float)
    ek = math.exp(-k)
    den = 1.0 - ek * ek + 2.0 * math.sin(k) * ek
    sigma = (1.0 + ek * ek + 2.0 * math.cos(k) * ek) / den
    C = (math.sin(k) - math.cos(k) - ek) / den
    half = 0.5 * (1.0 + sigma)
    em = np.exp(-k * x)
    ep = np.exp(k * (x - 1.0))
    c = np.cos(k * x)
    s = np.sin(k * x)
    phi = half * em + C * ep - c + sigma * s
    dphi = k * (-half * em + C * ep + s + sigma * c)
    d2phi = k * k * (half * em + C * ep + c - sigma * s)
    d3phi = k ** 3 * (-half * em + C * ep - s - sigma * c)
    return phi, dphi, d2phi, d3phi


def _quadrature(nq: int) -> tuple[np.ndarray, np.ndarray]:
    t, w = np.polynomial.legendre.leggauss(nq)
    return 0.5 * (t + 1.0), 0.5 * w


def _project(n_modes: int, nq: int) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    ks = beam_wavenumbers(n_modes)
    x, w = _quadrature(nq)
    PHI = np.empty((n_modes, x.size))
    D2 = np.empty_like(PHI)
    for i, k in enumerate(ks):
        phi, _, d2phi, _ = mode_values(float(k), x)
        PHI[i] = phi
        D2[i] = d2phi
    M = (PHI * w) @ PHI.T
    P4 = (D2 * w) @ D2.T
    P2 = (PHI * w) @ D2.T
    return ks, M, P2, P4


@lru_cache(maxsize=8)
def _basis_matrices(n_modes: int) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Quadrature projections, verified against a refined rule."""
    nq = 64 + 8 * n_modes
    ks, M, P2, P4 = _project(n_modes, nq)
    _, M2, P2b, P4b = _project(n_modes, nq + 32)
    for coarse, fine in ((M, M2), (P2, P2b), (P4, P4b)):
        scale = max(1.0, float(np.max(np.abs(fine))))
        if float(np.max(np.abs(coarse - fine))) > 1e-10 * scale:
            raise QuadratureError("projection integrals not converged at the default rule")
    for arr in (ks, M, P2, P4):
        arr.setflags(write=False)
    return ks, M, P2, P4


def assemble(p: BeckParams) -> GalerkinSystem:
    """Projected system matrices for the given load and damping."""
    if not 8 <= p.n_modes <= 32:
        raise DomainError("n_modes must lie in [8, 32]")
    ks, M, P2, P4 = _basis_matrices(p.n_modes)
    Dmat = p.d1 * P4 + p.d2 * M
    Kmat = P4 + p.q * P2
    return GalerkinSystem(M=M, Dmat=Dmat, Kmat=Kmat, wavenumbers=ks, params=p)


def system_eigenvalues(sys: GalerkinSystem) -> np.ndarray:
    """Eigenvalues of the quadratic pencil via first-order linearization."""
    n = sys.M.shape[0]
    minv_k = np.linalg.solve(sys.M, sys.Kmat)
    minv_d = np.linalg.solve(sys.M, sys.Dmat)
    top = np.hstack([np.zeros((n, n)), np.eye(n)])
    bottom = np.hstack([-minv_k, -minv_d])
    return np.sort_complex(np.linalg.eigvals(np.vstack([top, bottom])))


def _spectrum_at(q: float, d1: float, d2: float, n_modes: int) -> np.ndarray:
    return system_eigenvalues(assemble(BeckParams(q=q, d1=d1, d2=d2, n_modes=n_modes)))


def _coalesced(q: float, n_modes: int) -> bool:
    # past the flutter point the leading pair leaves the axis with equal
    # imaginary parts, so the min gap stays below the threshold there too
    eigs = _spectrum_at(q, 0.0, 0.0, n_modes)
    upper = np.sort(eigs.imag[eigs.imag > 0.0])
    if upper.size < 2:
        return True
    return bool(np.min(np.diff(upper)) < COALESCENCE_GAP)


def flutter_load(
    d1: float,
    d2: float,
    n_modes: int = 12,
    q_ceiling: float = Q_CEILING,
    tol: float = 1e-9,
) -> tuple[float, float]:
    """Critical follower load and the frequency of the critical mode.

    Undamped (d1 = d2 = 0): the spectrum stays on the imaginary axis up to
    the flutter point, so the onset is found by bisecting the coalescence
    of consecutive imaginary eigenvalues (gap below 1e-6).  Damped: bisects
    the first crossing of the spectral abscissa through 0.  Raises
    NoFlutter when no transition occurs below q_ceiling.
    """
    if d1 < 0.0 or d2 < 0.0:
        raise DomainError("d1, d2 must be >= 0")
    undamped = d1 == 0.0 and d2 == 0.0

    if undamped:
        def crossed(q: float) -> bool:
            return _coalesced(q, n_modes)
    else:
        def crossed(q: float) -> bool:
            eigs = _spectrum_at(q, d1, d2, n_modes)
            return bool(np.max(eigs.real) > 0.0)

    if not crossed(q_ceiling):
        raise NoFlutter(f"no flutter transition below q = {q_ceiling}")
    if crossed(0.0):
        raise DomainError("system already past the transition at q = 0")
    q_cr = bisect_boundary(crossed, (0.0, q_ceiling), tol=tol)

    eigs = _spectrum_at(q_cr, d1, d2, n_modes)
    if undamped:
        upper = np.sort(eigs.imag[eigs.imag > 0.0])
        gaps = np.diff(upper)
        i = int(np.argmin(gaps))
        omega = 0.5 * (upper[i] + upper[i + 1])
    else:
        lead = eigs[int(np.argmax(eigs.real))]
        omega = abs(lead.imag)
    return float(q_cr), float(omega)


def be12_surface(d1: float, d2: float) -> float:
    """Closed quadratic approximation of the critical load at small damping.

    20.05 - 1902*d1^2/(14.34*d1 + 0.091*d2)^2 + 12.68*d1*d2 + 0.053*d2^2.
    The limit as d1 -> 0 along d2 = c*d1 is 20.05 - 1902/(14.34 + 0.091c)^2,
    a ray-dependent limit: internal damping knocks the load down by an O(1)
    amount (to about 10.80 on the pure-d1 ray; direct computation of the
    true limit gives about 10.94, the fit being a local quadratic), while
    pure external damping raises it slightly.
    """
    denom = 14.34 * d1 + 0.091 * d2
    if denom == 0.0:
        raise DomainError("vanishing denominator: surface undefined at d1 = d2 = 0")
    return 20.05 - 1902.0 * d1 * d1 / (denom * denom) + 12.68 * d1 * d2 + 0.053 * d2 * d2
