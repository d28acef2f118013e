"""Gyroscopic systems near the Hamiltonian limit.

Systems x'' + (delta*D + Omega*G) x' + (K + nu*N) x = 0 with K, D symmetric
and G, N skew.  At delta = nu = 0 the spectrum has Hamiltonian symmetry and
stability can only be marginal; the transition to flutter happens when two
imaginary eigenvalues of opposite energy sign collide (at Omega = Omega0,
frequency omega0) and leave the axis.  This module locates that collision,
builds the Jordan chain of the double eigenvalue, and expands the effect of
small damping/circulatory perturbations: eigenvalue increments, the neutral
ratio gamma(Omega) = nu/delta, and the critical-spin surface
Omega_cr(delta, nu), which is a ruled quadratic over the ratio nu/delta and
therefore discontinuous at delta = nu = 0.

The isotropic case K = kappa*I, D = I, m = 2 collapses to a single complex
second-order equation; helpers for that scalar form (quartic, closed
stability test, critical-spin branches, and the spinning-top parameter map)
live here as well.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from .errors import (
    DegenerateChain,
    DegenerateSurface,
    DomainError,
    NoCollision,
)
from .quartic import QuarticCoeffs, StabilityVerdict, hurwitz_verdict
from .sweep import bisect_boundary

__all__ = [
    "GyroSystem",
    "KreinCollisionData",
    "first_order_matrix",
    "spectrum",
    "pairing_defect",
    "find_krein_collision",
    "krein_splitting",
    "eigenvalue_increment",
    "gamma_neutral",
    "gamma_neutral_expansion",
    "omega_cr_surface",
    "omega_cr_surface_2dof",
    "omega_cr_bisected",
    "MaxwellBlochParams",
    "maxwell_bloch_quartic",
    "maxwell_bloch_verdict",
    "maxwell_bloch_stable_closed",
    "maxwell_bloch_boundary_slopes",
    "hauger_omega_cr",
    "hauger_parameters",
]


def _check_square(M: np.ndarray, name: str, m: int | None) -> np.ndarray:
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise DomainError(f"{name} must be square")
    if m is not None and M.shape[0] != m:
        raise DomainError(f"{name} must be {m}x{m}")
    if not np.isfinite(M).all():
        raise DomainError(f"{name} must be finite")
    return M


def _check_symmetric(M: np.ndarray, name: str, m: int | None = None) -> np.ndarray:
    M = _check_square(M, name, m)
    scale = max(1.0, float(np.max(np.abs(M))))
    if np.max(np.abs(M - M.T)) > 1e-12 * scale:
        raise DomainError(f"{name} must be symmetric")
    return M


def _check_skew(M: np.ndarray, name: str, m: int | None = None) -> np.ndarray:
    M = _check_square(M, name, m)
    scale = max(1.0, float(np.max(np.abs(M))))
    if np.max(np.abs(M + M.T)) > 1e-12 * scale:
        raise DomainError(f"{name} must be skew-symmetric")
    return M


@dataclass(frozen=True, eq=False)
class GyroSystem:
    """m-DoF system with stiffness K + nu*N and velocity matrix delta*D + Omega*G.

    K, D symmetric; G, N skew-symmetric.  D defaults to the identity, N to
    zero.  The magnitudes (Omega, delta, nu) scale fixed matrix shapes so
    that rays in (delta, nu) can be studied at small amplitude.
    """

    K: np.ndarray
    G: np.ndarray
    D: np.ndarray | None = None
    N: np.ndarray | None = None
    Omega: float = 0.0
    delta: float = 0.0
    nu: float = 0.0

    def __post_init__(self):
        K = _check_symmetric(self.K, "K")
        m = K.shape[0]
        if m < 2:
            raise DomainError("need at least two degrees of freedom")
        object.__setattr__(self, "K", K)
        object.__setattr__(self, "G", _check_skew(self.G, "G", m))
        D = np.eye(m) if self.D is None else _check_symmetric(self.D, "D", m)
        N = np.zeros((m, m)) if self.N is None else _check_skew(self.N, "N", m)
        object.__setattr__(self, "D", D)
        object.__setattr__(self, "N", N)
        if self.delta < 0.0:
            raise DomainError("damping magnitude delta must be >= 0")

    @property
    def m(self) -> int:
        return self.K.shape[0]


def first_order_matrix(
    sys: GyroSystem,
    Omega: float | None = None,
    delta: float | None = None,
    nu: float | None = None,
) -> np.ndarray:
    """2m x 2m real matrix C whose eigenvalues are the system's exponents.

    Uses the shifted velocity y = (x, x' + (Omega/2) G x), which makes C
    symmetric-like in the Hamiltonian limit: for delta = nu = 0, JCJ = C^T
    with J the standard symplectic unit, so eigenvalues come in (-l, l)
    pairs; the same pairing holds for delta = Omega = 0 by reversibility.
    """
    Om = sys.Omega if Omega is None else Omega
    de = sys.delta if delta is None else delta
    nv = sys.nu if nu is None else nu
    K, G, D, N = sys.K, sys.G, sys.D, sys.N
    m = sys.m
    half = 0.5 * Om * G
    top = np.hstack([-half, np.eye(m)])
    lower_left = de * D @ half + half @ half - K - nv * N
    bottom = np.hstack([lower_left, -de * D - half])
    return np.vstack([top, bottom])


def spectrum(
    sys: GyroSystem,
    Omega: float | None = None,
    delta: float | None = None,
    nu: float | None = None,
) -> np.ndarray:
    """Eigenvalues of the first-order matrix, sorted lexicographically."""
    return np.sort_complex(np.linalg.eigvals(first_order_matrix(sys, Omega, delta, nu)))


def pairing_defect(eigs: np.ndarray) -> float:
    """max over eigenvalues l of the distance to the nearest -l'.

    Zero (to rounding) when the spectrum is symmetric about the origin,
    which holds in both the Hamiltonian and the reversible limits.
    """
    eigs = np.asarray(eigs, dtype=complex)
    return float(max(np.min(np.abs(eigs + lam)) for lam in eigs))


# ---------------------------------------------------------------------------
# Krein collision and Jordan chain


@dataclass(frozen=True, eq=False)
class KreinCollisionData:
    """Double imaginary eigenvalue i*omega0 at Omega0 with its Jordan chain.

    u0 spans the nullspace of A0 = K + i*omega0*Omega0*G - omega0^2 I; u1
    solves A0 u1 = -(2i*omega0 I + Omega0 G) u0.  mu is the splitting rate:
    eigenvalues behave like i*omega0 +/- i*mu*sqrt(Omega - Omega0).  The
    scalars d1, d2, n1, n2 are the damping/circulatory projections onto the
    chain and gamma_star = -omega0*d1/n1 is the exceptional ratio nu/delta
    along which no destabilization jump occurs.  residual0/residual1 are the
    achieved residuals of the two chain equations.
    """

    system: GyroSystem
    Omega0: float
    omega0: float
    u0: np.ndarray
    u1: np.ndarray
    mu: float
    d1: float
    d2: float
    n1: float
    n2: float
    gamma_star: float
    residual0: float
    residual1: float

    @property
    def mu2(self) -> float:
        return self.mu * self.mu


def _pencil_matrix(K: np.ndarray, G: np.ndarray, Omega: float, omega: float) -> np.ndarray:
    return K + 1j * omega * Omega * G - omega * omega * np.eye(K.shape[0])


def _phase_fix(u: np.ndarray) -> np.ndarray:
    # rotate so the largest component is real positive; removes the free
    # overall phase and makes outputs reproducible
    idx = int(np.argmax(np.abs(u)))
    piv = u[idx]
    if piv != 0:
        u = u * (piv.conjugate() / abs(piv))
    return u


def _upper_gap(sys: GyroSystem, Omega: float) -> float:
    eigs = np.linalg.eigvals(first_order_matrix(sys, Omega=Omega, delta=0.0, nu=0.0))
    upper = eigs[eigs.imag > 0.0]
    if upper.size < 2:
        return math.inf
    gap = math.inf
    for i in range(upper.size):
        for j in range(i + 1, upper.size):
            gap = min(gap, abs(upper[i] - upper[j]))
    return gap


def _golden_refine(f, lo: float, hi: float, tol: float = 1e-12) -> float:
    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - inv_phi * (b - a)
    d = a + inv_phi * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - inv_phi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + inv_phi * (b - a)
            fd = f(d)
    return 0.5 * (a + b)


def _scan_collision(sys: GyroSystem, Omega_range: tuple[float, float], n_scan: int) -> tuple[float, float]:
    lo, hi = float(Omega_range[0]), float(Omega_range[1])
    if not lo < hi:
        raise DomainError("Omega_range must satisfy lo < hi")
    grid = np.linspace(lo, hi, n_scan)
    gaps = np.array([_upper_gap(sys, Om) for Om in grid])
    for i in range(1, n_scan - 1):
        if gaps[i] <= gaps[i - 1] and gaps[i] <= gaps[i + 1]:
            try:
                res = minimize_scalar(
                    lambda Om: _upper_gap(sys, Om),
                    bracket=(grid[i - 1], grid[i], grid[i + 1]),
                    method="golden",
                    options={"xtol": 1e-12},
                )
                Om0 = float(res.x)
            except ValueError:
                # flat triple at grid resolution: refine by plain
                # golden-section on the enclosing interval
                Om0 = _golden_refine(
                    lambda Om: _upper_gap(sys, Om), grid[i - 1], grid[i + 1]
                )
            eigs = np.linalg.eigvals(first_order_matrix(sys, Omega=Om0, delta=0.0, nu=0.0))
            upper = eigs[eigs.imag > 0.0]
            pair = None
            best = math.inf
            for a in range(upper.size):
                for b in range(a + 1, upper.size):
                    d = abs(upper[a] - upper[b])
                    if d < best:
                        best, pair = d, (upper[a], upper[b])
            scale = max(1.0, float(np.max(np.abs(eigs))))
            if pair is not None and best <= 1e-5 * scale:
                omega0 = 0.5 * (pair[0].imag + pair[1].imag)
                return Om0, float(omega0)
    raise NoCollision("no eigenvalue coalescence found in the scanned interval")


def find_krein_collision(
    sys: GyroSystem,
    Omega_range: tuple[float, float] | None = None,
    n_scan: int = 600,
    gauge: complex = 0j,
) -> KreinCollisionData:
    """Locate the imaginary-axis eigenvalue collision and build its chain.

    For m = 2 (any skew G is a multiple of [[0,1],[-1,0]]) the collision
    point has closed forms omega0 = (det K)^(1/4) and
    Omega0 = sqrt(-trK + 2 sqrt(det K)) / |g|, valid for det K > 0 and
    trK < 0; outside that cone there is nothing to stabilize or no
    stabilization exists, so NoCollision is raised.  For larger m, supply
    Omega_range: the pairwise gap of upper-half-plane eigenvalues is scanned
    on a grid and each local minimum refined by golden-section search.

    The chain vector u1 is fixed by the gauge u0^H u1 = 0, ||u0|| = 1; the
    `gauge` argument then adds gauge*u0 so callers can verify that reported
    surfaces do not depend on this free choice.  Raises DegenerateChain when
    the nullspace is not one-dimensional, the chain equation is not
    solvable, or the splitting coefficient mu^2 fails to be positive.

    The colliding pair consists of modes of opposite energy sign (the sign
    of Im(lambda) * u^H J u in first-order form); that sign is not computed
    here, only the collision itself.
    """
    if sys.delta != 0.0 or sys.nu != 0.0:
        raise DomainError("collision analysis applies to the unperturbed system (delta = nu = 0)")
    K, G = sys.K, sys.G
    m = sys.m

    if Omega_range is not None:
        Omega0, omega0 = _scan_collision(sys, Omega_range, n_scan)
    elif m == 2:
        g = abs(float(G[0, 1]))
        if g == 0.0:
            raise NoCollision("no gyroscopic coupling (G = 0)")
        det_k = float(np.linalg.det(K))
        tr_k = float(np.trace(K))
        if det_k <= 0.0:
            raise NoCollision("indefinite or singular K: no imaginary-axis collision")
        if tr_k >= 0.0:
            raise NoCollision("K positive definite: spectrum marginal for all Omega")
        omega0 = det_k ** 0.25
        Omega0 = math.sqrt(-tr_k + 2.0 * math.sqrt(det_k)) / g
    else:
        raise DomainError("Omega_range is required for m > 2")

    A0 = _pencil_matrix(K, G, Omega0, omega0)
    _, sv, Vh = np.linalg.svd(A0)
    null_dim = int(np.sum(sv <= 1e-8 * sv[0]))
    if null_dim != 1:
        raise DegenerateChain(f"nullspace dimension {null_dim}, expected 1")
    u0 = _phase_fix(Vh[-1].conj())

    rhs = -(2j * omega0 * np.eye(m) + Omega0 * G) @ u0
    u1 = np.linalg.lstsq(A0, rhs, rcond=None)[0]
    norm_k = float(np.linalg.norm(K, 2))
    residual0 = float(np.linalg.norm(A0 @ u0))
    residual1 = float(np.linalg.norm(A0 @ u1 - rhs))
    if residual1 > 1e-8 * max(norm_k, 1.0):
        raise DegenerateChain("second chain equation not solvable: eigenvalue not a genuine double")
    u1 = u1 - np.vdot(u0, u1) * u0
    u1 = u1 + gauge * u0

    uu0 = np.vdot(u0, u0)
    denom = (
        omega0 * omega0 * np.vdot(u1, u1)
        - np.vdot(u1, K @ u1)
        - 1j * omega0 * Omega0 * np.vdot(u1, G @ u1)
        - uu0
    )
    mu2 = complex(-2.0 * omega0 * omega0 * uu0 / (Omega0 * denom))
    if abs(mu2.imag) > 1e-8 * max(1.0, abs(mu2.real)):
        raise DegenerateChain("splitting coefficient is not real")
    if mu2.real <= 0.0:
        raise DegenerateChain("splitting coefficient mu^2 is not positive")
    mu = math.sqrt(mu2.real)

    D, N = sys.D, sys.N
    d1 = float(np.vdot(u0, D @ u0).real)
    d2 = float((np.vdot(u0, D @ u1) - np.vdot(u1, D @ u0)).imag)
    n1 = float(np.vdot(u0, N @ u0).imag)
    n2 = float((np.vdot(u0, N @ u1) - np.vdot(u1, N @ u0)).real)
    gamma_star = -omega0 * d1 / n1 if n1 != 0.0 else math.nan

    return KreinCollisionData(
        system=sys,
        Omega0=float(Omega0),
        omega0=float(omega0),
        u0=u0,
        u1=u1,
        mu=mu,
        d1=d1,
        d2=d2,
        n1=n1,
        n2=n2,
        gamma_star=gamma_star,
        residual0=residual0,
        residual1=residual1,
    )


def krein_splitting(data: KreinCollisionData, Omega: float) -> tuple[complex, complex]:
    """Two-term expansion of the colliding pair near Omega0.

    i*omega0 +/- i*mu*sqrt(Omega - Omega0): imaginary on the stabilized side
    Omega > Omega0, a symmetric real-part pair on the flutter side.
    """
    s = complex(Omega - data.Omega0) ** 0.5
    lead = 1j * data.omega0
    return (lead + 1j * data.mu * s, lead - 1j * data.mu * s)


def _colliding_mode(
    data: KreinCollisionData, Omega: float, branch: int
) -> tuple[float, np.ndarray]:
    """Exact frequency and eigenvector of one of the two post-collision modes.

    branch=+1 picks the higher frequency, branch=-1 the lower.  Requires the
    pair to be on the imaginary axis (marginally stable side).
    """
    sys = data.system
    eigs = np.linalg.eigvals(first_order_matrix(sys, Omega=Omega, delta=0.0, nu=0.0))
    scale = max(1.0, float(np.max(np.abs(eigs))))
    onaxis = eigs[np.abs(eigs.real) <= 1e-9 * scale]
    omegas = np.sort(onaxis.imag[onaxis.imag > 0.0])
    if omegas.size < 2:
        raise DomainError("need the marginally stable side: colliding pair is off the axis")
    order = np.argsort(np.abs(omegas - data.omega0))
    pair = np.sort(omegas[order[:2]])
    omega = float(pair[1] if branch >= 0 else pair[0])
    A = _pencil_matrix(sys.K, sys.G, Omega, omega)
    _, _, Vh = np.linalg.svd(A)
    u = _phase_fix(Vh[-1].conj())
    return omega, u


def eigenvalue_increment(
    data: KreinCollisionData,
    Omega: float,
    delta: float,
    nu: float,
    branch: int = +1,
) -> complex:
    """First-order shift of a simple imaginary eigenvalue under (delta, nu).

    -(omega^2 u^H D u delta - i omega u^H N u nu) / (u^H K u + omega^2 u^H u),
    evaluated on the exact mode at the given Omega.  Real-valued up to
    rounding; vanishes on the ray nu = gamma(Omega) * delta.
    """
    omega, u = _colliding_mode(data, Omega, branch)
    sys = data.system
    num = omega * omega * np.vdot(u, sys.D @ u) * delta - 1j * omega * np.vdot(u, sys.N @ u) * nu
    den = np.vdot(u, sys.K @ u) + omega * omega * np.vdot(u, u)
    return complex(-num / den)


def gamma_neutral(data: KreinCollisionData, Omega: float, branch: int = +1) -> float:
    """Ratio nu/delta that keeps the chosen mode neutral to first order.

    gamma(Omega) = -i omega u^H D u / (u^H N u) on the exact mode; real
    because the damping form is real and the circulatory form imaginary.
    """
    omega, u = _colliding_mode(data, Omega, branch)
    sys = data.system
    nform = complex(np.vdot(u, sys.N @ u))
    dform = complex(np.vdot(u, sys.D @ u))
    if abs(nform) <= 1e-14 * max(1.0, abs(dform)):
        raise DomainError("circulatory form vanishes on this mode: neutral ratio undefined")
    return float((-1j * omega * dform / nform).real)


def gamma_neutral_expansion(data: KreinCollisionData, Omega: float, branch: int = +1) -> float:
    """Chain-coefficient expansion of the neutral ratio near the collision.

    gamma(Omega) ~ -(omega0 +/- mu s)(d1 -/+ mu d2 s) / (n1 +/- mu n2 s)
    with s = sqrt(Omega - Omega0); requires Omega >= Omega0.  At s = 0 both
    branches reduce to gamma_star.
    """
    if Omega < data.Omega0:
        raise DomainError("expansion valid on the stabilized side Omega >= Omega0")
    s = math.sqrt(Omega - data.Omega0)
    sign = 1.0 if branch >= 0 else -1.0
    num = (data.omega0 + sign * data.mu * s) * (data.d1 - sign * data.mu * data.d2 * s)
    den = data.n1 + sign * data.mu * data.n2 * s
    if den == 0.0:
        raise DomainError("expansion denominator vanished")
    return -num / den


def omega_cr_surface(data: KreinCollisionData, delta: float, nu: float) -> float:
    """Critical gyroscopic magnitude for small (delta, nu).

    Omega_cr = Omega0 + n1^2 (nu - gamma_star*delta)^2
               / (mu^2 (omega0*d2 - gamma_star*n2 - d1)^2 delta^2).

    Depends on (delta, nu) only through the ratio nu/delta, so the limit as
    both vanish depends on the approach ray: the surface is a ruled
    quadratic with a self-intersection along nu = gamma_star*delta, where
    Omega_cr = Omega0 exactly.
    """
    if delta <= 0.0:
        raise DomainError("surface defined for delta > 0")
    if not math.isfinite(data.gamma_star):
        raise DegenerateSurface("neutral ratio undefined (n1 = 0)")
    denom = data.omega0 * data.d2 - data.gamma_star * data.n2 - data.d1
    scale = max(abs(data.d1), abs(data.omega0 * data.d2), abs(data.gamma_star * data.n2), 1.0)
    if abs(denom) <= 1e-12 * scale:
        raise DegenerateSurface("expansion denominator omega0*d2 - gamma_star*n2 - d1 vanishes")
    spread = nu - data.gamma_star * delta
    return data.Omega0 + (data.n1 * data.n1 * spread * spread) / (
        data.mu2 * denom * denom * delta * delta
    )


def omega_cr_surface_2dof(
    K: np.ndarray, D: np.ndarray, delta: float, nu: float
) -> float:
    """Closed two-oscillator form of the critical-spin surface (canonical G).

    Omega_cr = Omega0 + Omega0 * 2 (nu - gamma_star*delta)^2
               / ((omega0 trD)^2 delta^2),
    gamma_star = (tr(KD) + (Omega0^2 - omega0^2) trD) / (2 Omega0),
    with omega0 = (det K)^(1/4), Omega0 = sqrt(-trK + 2 sqrt(det K)).
    """
    K = _check_symmetric(K, "K", 2)
    D = _check_symmetric(D, "D", 2)
    if delta <= 0.0:
        raise DomainError("surface defined for delta > 0")
    det_k = float(np.linalg.det(K))
    tr_k = float(np.trace(K))
    if det_k <= 0.0 or tr_k >= 0.0:
        raise DomainError("closed form needs det K > 0 and trK < 0")
    omega0 = det_k ** 0.25
    Omega0 = math.sqrt(-tr_k + 2.0 * math.sqrt(det_k))
    tr_d = float(np.trace(D))
    if omega0 * tr_d == 0.0:
        raise DegenerateSurface("omega0 * trD vanishes")
    gamma_star = (float(np.trace(K @ D)) + (Omega0 * Omega0 - omega0 * omega0) * tr_d) / (
        2.0 * Omega0
    )
    spread = nu - gamma_star * delta
    return Omega0 + Omega0 * 2.0 * spread * spread / (
        (omega0 * tr_d) ** 2 * delta * delta
    )


def omega_cr_bisected(
    sys: GyroSystem,
    delta: float,
    nu: float,
    bracket: tuple[float, float] = (1e-3, 100.0),
    tol: float = 1e-10,
) -> float:
    """Exact critical spin by bisecting the asymptotic-stability boundary.

    Independent of the chain expansion: classifies the full 2m x 2m spectrum
    at each trial Omega.  The upper bracket end is doubled (up to 1e6) until
    it is stable; NoBracket propagates if the ends cannot be made to differ.
    """
    if delta <= 0.0:
        raise DomainError("bisected boundary defined for delta > 0")

    def stable(Om: float) -> bool:
        eigs = np.linalg.eigvals(first_order_matrix(sys, Omega=Om, delta=delta, nu=nu))
        return bool(np.max(eigs.real) < 0.0)

    lo, hi = float(bracket[0]), float(bracket[1])
    while not stable(hi) and hi < 1e6:
        hi *= 2.0
    return bisect_boundary(stable, (lo, hi), tol=tol)


# ---------------------------------------------------------------------------
# isotropic two-dimensional case: one complex degree of freedom


@dataclass(frozen=True)
class MaxwellBlochParams:
    """Coefficients of z'' + (delta + i*Omega) z' + (kappa + i*nu) z = 0.

    The planar isotropic system (m = 2, D = I, K = kappa*I) written over the
    complex coordinate z = x1 - i*x2.  Omega is gyroscopic, delta >= 0 is
    damping, nu is circulatory, kappa is potential.
    """

    Omega: float
    delta: float
    nu: float
    kappa: float

    def __post_init__(self):
        vals = (self.Omega, self.delta, self.nu, self.kappa)
        if not all(math.isfinite(v) for v in vals):
            raise DomainError("parameters must be finite")
        if self.delta < 0.0:
            raise DomainError("damping delta must be >= 0")


def maxwell_bloch_quartic(p: MaxwellBlochParams) -> QuarticCoeffs:
    """Real characteristic quartic: product of the scalar factor and its conjugate.

    (2*delta, Omega^2 + delta^2 + 2*kappa, 2*(delta*kappa + Omega*nu),
     kappa^2 + nu^2).
    """
    return QuarticCoeffs(
        2.0 * p.delta,
        p.Omega * p.Omega + p.delta * p.delta + 2.0 * p.kappa,
        2.0 * (p.delta * p.kappa + p.Omega * p.nu),
        p.kappa * p.kappa + p.nu * p.nu,
    )


def maxwell_bloch_verdict(p: MaxwellBlochParams) -> StabilityVerdict:
    """Root census of the real quartic form."""
    return hurwitz_verdict(maxwell_bloch_quartic(p))


def maxwell_bloch_stable_closed(p: MaxwellBlochParams) -> bool:
    """Closed-form asymptotic stability test.

    delta > 0 and nu^2 - delta*Omega*nu - delta^2*kappa < 0.  For nu > 0
    the quadratic is equivalent to Omega > nu/delta - (delta/nu)*kappa; the
    quadratic form also covers nu < 0 (mirror region) and nu = 0 (reduces
    to kappa > 0) without the division.
    """
    if p.delta <= 0.0:
        return False
    q = p.nu * p.nu - p.delta * p.Omega * p.nu - p.delta * p.delta * p.kappa
    return q < 0.0


def maxwell_bloch_boundary_slopes(Omega: float, kappa: float) -> tuple[float, float]:
    """Slopes nu/delta of the two stability-boundary rays at fixed Omega.

    (Omega +/- sqrt(Omega^2 + 4*kappa)) / 2; real only when
    Omega^2 + 4*kappa >= 0, i.e. |Omega| is at least the collision value.
    """
    rad = Omega * Omega + 4.0 * kappa
    if rad < 0.0:
        raise DomainError("no real boundary rays: |Omega| below the collision value")
    root = math.sqrt(rad)
    return (0.5 * (Omega - root), 0.5 * (Omega + root))


def hauger_omega_cr(delta: float, nu: float, kappa: float) -> tuple[float, float]:
    """Quadratic expansions of the two critical-spin branches for kappa < 0.

    (+2*sqrt(-kappa) + (nu - delta*sqrt(-kappa))^2 / (sqrt(-kappa)*delta^2),
     -2*sqrt(-kappa) - (nu + delta*sqrt(-kappa))^2 / (sqrt(-kappa)*delta^2)).

    Each expands the exact boundary Omega = nu/delta + delta*(-kappa)/nu
    about its extremum nu = +/- delta*sqrt(-kappa), where the branch value
    is exactly +/- 2*sqrt(-kappa).
    """
    if kappa >= 0.0:
        raise DomainError("branches exist for kappa < 0 only")
    if delta <= 0.0:
        raise DomainError("branches defined for delta > 0")
    s = math.sqrt(-kappa)
    up = 2.0 * s + (nu - delta * s) ** 2 / (s * delta * delta)
    down = -2.0 * s - (nu + delta * s) ** 2 / (s * delta * delta)
    return (up, down)


def hauger_parameters(
    I0: float,
    I: float,
    b: float,
    r: float,
    mgs: float,
    eta: float,
    T: float,
    k: float,
) -> MaxwellBlochParams:
    """Dimensionless coefficients of a spinning top driven by a follower torque.

    Axial/transverse inertia I0, I; hinge damping b; restoring coefficient
    r; gravity moment mgs; torque fraction eta; follower torque T; twisting
    coefficient k.  The time scale is omega = -T/k:

        Omega = I0/I, delta = b/(I*omega), kappa = (r - mgs)/(I*omega^2),
        nu = (1 - eta)*T/(I*omega^2).
    """
    if I == 0.0 or k == 0.0 or T == 0.0:
        raise DomainError("need I != 0, k != 0, T != 0")
    omega = -T / k
    return MaxwellBlochParams(
        Omega=I0 / I,
        delta=b / (I * omega),
        nu=(1.0 - eta) * T / (I * omega * omega),
        kappa=(r - mgs) / (I * omega * omega),
    )
