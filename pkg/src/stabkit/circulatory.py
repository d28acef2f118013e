"""Two-degree-of-freedom circulatory systems and their destabilization limits.

Systems of the form

    x'' + (delta*D + Omega*G) x' + (K + nu*N) x = 0,   x in R^2,

with K, D symmetric and G = N = [[0, 1], [-1, 0]] skew.  The characteristic
polynomial is a monic quartic whose coefficients depend only on the matrix
invariants; stability questions reduce to the quartic module.  Includes the
double-pendulum follower-load instance and the drum-brake friction instance,
plus the closed-form critical circulatory magnitudes with and without
vanishing damping (whose mismatch is the destabilization jump).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .quartic import QuarticCoeffs, StabilityVerdict, hurwitz_verdict
from .sweep import bisect_boundary

__all__ = [
    "SKEW_UNIT",
    "SystemMatrices2",
    "ZieglerParams",
    "HultenParams",
    "quartic_from_system",
    "first_order_matrix",
    "nu_critical_undamped",
    "nu_critical_damped_limit",
    "nu_critical_damped_first_order",
    "ziegler_matrices",
    "ziegler_quartic",
    "ziegler_critical_load",
    "ziegler_critical_load_bisected",
    "ziegler_verdict",
    "hulten_system",
    "hulten_quartic",
    "hulten_critical_mu_undamped",
]

#: canonical 2x2 skew-symmetric unit, shared by the gyroscopic and
#: circulatory contributions
SKEW_UNIT = np.array([[0.0, 1.0], [-1.0, 0.0]])


def _check_symmetric(M: np.ndarray, name: str) -> np.ndarray:
    M = np.asarray(M, dtype=float)
    if M.shape != (2, 2):
        raise DomainError(f"{name} must be 2x2")
    if not np.isfinite(M).all():
        raise DomainError(f"{name} must be finite")
    scale = max(1.0, float(np.max(np.abs(M))))
    if abs(M[0, 1] - M[1, 0]) > 1e-12 * scale:
        raise DomainError(f"{name} must be symmetric")
    return M


@dataclass(frozen=True, eq=False)
class SystemMatrices2:
    """Symmetric/skew split of a 2-DoF system.

    Full matrices: stiffness A = K + nu*N, velocity B = delta*D + Omega*G
    with N = G = [[0,1],[-1,0]].  K and D are the symmetric shapes; nu,
    delta, Omega are the scalar magnitudes.
    """

    K: np.ndarray
    D: np.ndarray
    nu: float = 0.0
    delta: float = 0.0
    Omega: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "K", _check_symmetric(self.K, "K"))
        object.__setattr__(self, "D", _check_symmetric(self.D, "D"))
        if self.delta < 0.0:
            raise DomainError("damping magnitude delta must be >= 0")

    @property
    def stiffness(self) -> np.ndarray:
        return self.K + self.nu * SKEW_UNIT

    @property
    def velocity_matrix(self) -> np.ndarray:
        return self.delta * self.D + self.Omega * SKEW_UNIT


def quartic_from_system(s: SystemMatrices2) -> QuarticCoeffs:
    """Characteristic-polynomial coefficients from matrix invariants.

    a1 = tr(delta D), a2 = tr K + det(delta D) + Omega^2,
    a3 = tr K tr(delta D) - tr(K delta D) + 2 Omega nu, a4 = det K + nu^2.
    """
    K, D = s.K, s.D
    dD = s.delta * D
    tr_dD = dD[0, 0] + dD[1, 1]
    tr_K = K[0, 0] + K[1, 1]
    a1 = tr_dD
    a2 = tr_K + float(np.linalg.det(dD)) + s.Omega * s.Omega
    a3 = tr_K * tr_dD - float(np.trace(K @ dD)) + 2.0 * s.Omega * s.nu
    a4 = float(np.linalg.det(K)) + s.nu * s.nu
    return QuarticCoeffs(a1, a2, a3, a4)


def first_order_matrix(s: SystemMatrices2) -> np.ndarray:
    """4x4 first-order form [[0, I], [-A, -B]]; eigenvalue oracle for the quartic."""
    A = s.stiffness
    B = s.velocity_matrix
    top = np.hstack([np.zeros((2, 2)), np.eye(2)])
    bottom = np.hstack([-A, -B])
    return np.vstack([top, bottom])


def nu_critical_undamped(K: np.ndarray) -> float:
    """Critical circulatory magnitude of the undamped system.

    nu0 = sqrt((trK/2)^2 - detK); the undamped system is marginally stable
    for nu^2 < nu0^2 (and K yielding two distinct positive frequencies).
    """
    K = _check_symmetric(K, "K")
    rad = (0.5 * np.trace(K)) ** 2 - float(np.linalg.det(K))
    if rad < 0.0:
        raise DomainError("(trK/2)^2 - detK < 0: no real critical magnitude")
    return math.sqrt(rad)


def _damping_shift(K: np.ndarray, D: np.ndarray) -> float:
    # the ray-dependent term: (2 tr(KD) - trK trD) / (2 trD)
    tr_D = float(np.trace(D))
    if tr_D <= 0.0:
        raise DomainError("damping shape must have trD > 0 (pervasive damping)")
    return (2.0 * float(np.trace(K @ D)) - float(np.trace(K)) * tr_D) / (2.0 * tr_D)


def nu_critical_damped_limit(K: np.ndarray, D: np.ndarray) -> float:
    """Vanishing-damping limit of the critical circulatory magnitude.

    nu_cr = sqrt(nu0^2 - [(2 tr(KD) - trK trD)/(2 trD)]^2).  Equals nu0
    exactly when the bracketed shift vanishes (e.g. D proportional to I);
    otherwise strictly smaller -- the limit does not recover the undamped
    threshold, which is the destabilization jump.
    """
    K = _check_symmetric(K, "K")
    D = _check_symmetric(D, "D")
    nu0 = nu_critical_undamped(K)
    shift = _damping_shift(K, D)
    rad = nu0 * nu0 - shift * shift
    if rad < 0.0:
        raise DomainError(
            "stability window closed for this damping shape "
            f"(nu0^2 = {nu0 * nu0:.6g} < shift^2 = {shift * shift:.6g})"
        )
    return math.sqrt(rad)


def nu_critical_damped_first_order(K: np.ndarray, D: np.ndarray) -> float:
    """First-order approximation nu0 - shift^2/(2 nu0) of the damped limit."""
    K = _check_symmetric(K, "K")
    D = _check_symmetric(D, "D")
    nu0 = nu_critical_undamped(K)
    if nu0 == 0.0:
        raise DomainError("first-order form needs nu0 > 0")
    shift = _damping_shift(K, D)
    return nu0 - shift * shift / (2.0 * nu0)


# ---------------------------------------------------------------------------
# double pendulum with follower load


@dataclass(frozen=True)
class ZieglerParams:
    """Double pendulum under a follower load.

    Two equal rods of length l; masses 2m at the elbow and m at the tip;
    joint stiffness c and joint damping b at both joints; follower load P
    applied at the free end.  Defaults use the unit system m = l = c = 1,
    so loads are reported in units of c/l.
    """

    P: float = 0.0
    b: float = 0.0
    m: float = 1.0
    l: float = 1.0
    c: float = 1.0

    def __post_init__(self):
        if self.m <= 0.0 or self.l <= 0.0 or self.c <= 0.0:
            raise DomainError("m, l, c must be positive")
        if self.b < 0.0:
            raise DomainError("joint damping b must be >= 0")


def ziegler_matrices(p: ZieglerParams) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Mass, damping, stiffness matrices of the linearized double pendulum."""
    m, l, c, b, P = p.m, p.l, p.c, p.b, p.P
    M = np.array([[3.0 * m * l * l, m * l * l], [m * l * l, m * l * l]])
    B = np.array([[2.0 * b, -b], [-b, b]])
    K = np.array([[-P * l + 2.0 * c, P * l - c], [-c, c]])
    return M, B, K


def _poly_det_2x2(M: np.ndarray, B: np.ndarray, K: np.ndarray) -> np.ndarray:
    """Coefficients (quartic, descending) of det(M s^2 + B s + K)."""

    def entry(i, j):
        return np.array([M[i, j], B[i, j], K[i, j]])

    det = np.polymul(entry(0, 0), entry(1, 1)) - np.polymul(entry(0, 1), entry(1, 0))
    out = np.zeros(5)
    out[-det.size:] = det
    return out


def ziegler_quartic(p: ZieglerParams) -> QuarticCoeffs:
    """Monic characteristic quartic of the double pendulum."""
    M, B, K = ziegler_matrices(p)
    poly = _poly_det_2x2(M, B, K)
    poly = poly / poly[0]  # leading coefficient det(M) = 2 m^2 l^4 > 0
    return QuarticCoeffs(poly[1], poly[2], poly[3], poly[4])


def ziegler_critical_load(b: float, p: ZieglerParams | None = None) -> float:
    """Critical follower load, analytic.

    b = 0: P = (7/2 - sqrt(2)) c/l (loss of marginal stability).
    b > 0: P = (41/28) c/l + b^2/(2 m l^3) (loss of asymptotic stability).
    The b -> 0+ limit 41/28 sits far below the undamped threshold 2.086.
    """
    if b < 0.0:
        raise DomainError("joint damping b must be >= 0")
    p = p or ZieglerParams()
    unit = p.c / p.l
    if b == 0.0:
        return (3.5 - math.sqrt(2.0)) * unit
    return (41.0 / 28.0) * unit + b * b / (2.0 * p.m * p.l ** 3)


def ziegler_critical_load_bisected(
    b: float,
    p: ZieglerParams | None = None,
    tol: float = 1e-12,
) -> float:
    """Critical follower load recomputed by bisecting the flutter boundary.

    Independent of the closed forms: classifies the quartic at each trial P
    and bisects the first loss of (marginal or asymptotic) stability.  The
    bracket starts at [0, 4 c/l] and is expanded geometrically if needed.
    """
    p = p or ZieglerParams()

    def unstable(P: float) -> bool:
        verdict = hurwitz_verdict(ziegler_quartic(
            ZieglerParams(P=P, b=b, m=p.m, l=p.l, c=p.c)))
        return verdict.right_count > 0

    lo, hi = 0.0, 4.0 * p.c / p.l
    for _ in range(60):
        if unstable(hi):
            break
        hi *= 2.0
    else:
        raise DomainError("no instability found while expanding the load bracket")
    return bisect_boundary(unstable, (lo, hi), tol=tol)


def ziegler_verdict(P: float, b: float, p: ZieglerParams | None = None) -> StabilityVerdict:
    """Verdict of the double pendulum at load P, damping b."""
    p = p or ZieglerParams()
    return hurwitz_verdict(ziegler_quartic(ZieglerParams(P=P, b=b, m=p.m, l=p.l, c=p.c)))


# ---------------------------------------------------------------------------
# drum-brake friction oscillator


@dataclass(frozen=True)
class HultenParams:
    """Two-mode friction oscillator with circulatory coupling mu.

    Natural pulsations omega01, omega02 > 0; relative dampings eta1,
    eta2 >= 0; friction coefficient mu >= 0 couples the modes through a
    skew contribution to the stiffness.
    """

    omega01: float
    omega02: float
    eta1: float = 0.0
    eta2: float = 0.0
    mu: float = 0.0

    def __post_init__(self):
        if self.omega01 <= 0.0 or self.omega02 <= 0.0:
            raise DomainError("natural pulsations must be positive")
        if self.eta1 < 0.0 or self.eta2 < 0.0 or self.mu < 0.0:
            raise DomainError("eta1, eta2, mu must be >= 0")


def hulten_system(p: HultenParams) -> SystemMatrices2:
    """Symmetric/skew decomposition of the drum-brake system.

    Full stiffness [[w1^2, -mu w2^2], [mu w1^2, w2^2]] splits into a
    symmetric part plus nu*N with nu = -mu (w1^2 + w2^2)/2; damping is
    diag(eta1 w1, eta2 w2) with unit magnitude.
    """
    w1s = p.omega01 * p.omega01
    w2s = p.omega02 * p.omega02
    off = 0.5 * p.mu * (w1s - w2s)
    K = np.array([[w1s, off], [off, w2s]])
    nu = -0.5 * p.mu * (w1s + w2s)
    D = np.diag([p.eta1 * p.omega01, p.eta2 * p.omega02])
    return SystemMatrices2(K=K, D=D, nu=nu, delta=1.0, Omega=0.0)


def hulten_quartic(p: HultenParams) -> QuarticCoeffs:
    """Monic characteristic quartic of the drum-brake system."""
    return quartic_from_system(hulten_system(p))


def hulten_critical_mu_undamped(p: HultenParams) -> float:
    """Undamped flutter threshold: mu^2 = (w1^2 - w2^2)^2 / (4 w1^2 w2^2)."""
    w1s = p.omega01 * p.omega01
    w2s = p.omega02 * p.omega02
    return abs(w1s - w2s) / (2.0 * p.omega01 * p.omega02)
