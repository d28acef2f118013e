"""Stability classification of monic real quartic polynomials.

Two independent routes are provided for the census of the roots of

    Q(lambda) = lambda^4 + a1*lambda^3 + a2*lambda^2 + a3*lambda + a4

with respect to the imaginary axis:

* ``hurwitz_verdict`` -- sign conditions on the coefficients and on the
  marginal function H = a1^2*a4 + a3^2 - a1*a2*a3, including every
  marginal configuration (zero root, simple imaginary pairs, biquadratic
  case) classified analytically;
* ``root_oracle`` -- numerical roots via companion-matrix eigenvalues.

The two routes are kept deliberately separate so each can validate the
other; tests assert their agreement away from the decision boundaries.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import DomainError

__all__ = [
    "QuarticCoeffs",
    "StabilityLabel",
    "StabilityVerdict",
    "MarginalFunctionValue",
    "marginal_H",
    "hurwitz_verdict",
    "root_oracle",
]

#: default half-width (relative) of the indeterminacy band around each
#: strict inequality in the analytic verdict
DEFAULT_BAND_TOL = 1e-10

#: default real-part threshold used by the root oracle's census
DEFAULT_ORACLE_TOL = 1e-9

#: default absolute distance under which two imaginary-axis roots count
#: as repeated (double roots produced by collisions split like sqrt(eps),
#: so this is deliberately much looser than machine precision)
DEFAULT_REPEATED_TOL = 1e-7


@dataclass(frozen=True)
class QuarticCoeffs:
    """Coefficients of the monic quartic lambda^4 + a1 l^3 + a2 l^2 + a3 l + a4."""

    a1: float
    a2: float
    a3: float
    a4: float

    def __post_init__(self):
        for name in ("a1", "a2", "a3", "a4"):
            v = float(getattr(self, name))
            if not math.isfinite(v):
                raise DomainError(f"coefficient {name} must be finite, got {v!r}")
            object.__setattr__(self, name, v)

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.a1, self.a2, self.a3, self.a4)

    def as_poly(self) -> np.ndarray:
        """Coefficients in numpy convention, highest power first."""
        return np.array([1.0, self.a1, self.a2, self.a3, self.a4])


class StabilityLabel(str, Enum):
    ASYMPTOTICALLY_STABLE = "AsymptoticallyStable"
    MARGINALLY_STABLE = "MarginallyStable"
    UNSTABLE = "Unstable"
    DEGENERATE_MARGINAL = "DegenerateMarginal"


@dataclass(frozen=True)
class StabilityVerdict:
    """Root census (left half-plane / imaginary axis / right half-plane)."""

    left_count: int
    imag_count: int
    right_count: int
    label: StabilityLabel
    has_repeated_imag_root: bool = False
    #: True when the point fell inside the indeterminacy band and the
    #: numerical root oracle made the call instead of the sign conditions
    boundary_resolved: bool = field(default=False, compare=False)

    def __post_init__(self):
        if self.left_count + self.imag_count + self.right_count != 4:
            raise ValueError("census must account for exactly four roots")

    @property
    def is_stable(self) -> bool:
        """Asymptotic stability (all four roots strictly in the left half-plane)."""
        return self.label is StabilityLabel.ASYMPTOTICALLY_STABLE


@dataclass(frozen=True)
class MarginalFunctionValue:
    """Value of H = a1^2*a4 + a3^2 - a1*a2*a3; H = 0 marks flutter boundaries."""

    H: float

    def __float__(self) -> float:
        return self.H


def marginal_H(q: QuarticCoeffs) -> MarginalFunctionValue:
    """Evaluate the marginal function H = a1^2*a4 + a3^2 - a1*a2*a3.

    Together with positivity of the coefficients, H < 0 is necessary and
    sufficient for all four roots to lie in the open left half-plane.
    """
    a1, a2, a3, a4 = q.as_tuple()
    return MarginalFunctionValue(a1 * a1 * a4 + a3 * a3 - a1 * a2 * a3)


def _label_from_census(left: int, imag: int, right: int, repeated: bool) -> StabilityLabel:
    if right >= 1:
        return StabilityLabel.UNSTABLE
    if left == 4:
        return StabilityLabel.ASYMPTOTICALLY_STABLE
    if repeated:
        return StabilityLabel.DEGENERATE_MARGINAL
    return StabilityLabel.MARGINALLY_STABLE


def _companion_roots(q: QuarticCoeffs) -> np.ndarray:
    a1, a2, a3, a4 = q.as_tuple()
    comp = np.zeros((4, 4))
    comp[0, 0] = -a1
    comp[0, 1] = -a2
    comp[0, 2] = -a3
    comp[0, 3] = -a4
    comp[1, 0] = comp[2, 1] = comp[3, 2] = 1.0
    return np.linalg.eigvals(comp)


def root_oracle(
    q: QuarticCoeffs,
    tol: float = DEFAULT_ORACLE_TOL,
    repeated_tol: float | None = None,
    _boundary_resolved: bool = False,
) -> StabilityVerdict:
    """Census the quartic's roots numerically (companion-matrix eigenvalues).

    Roots with |Re| <= tol are counted as lying on the imaginary axis;
    two axis roots closer together than ``repeated_tol`` count as repeated.

    Parameters
    ----------
    q : QuarticCoeffs
    tol : float
        Real-part threshold for the census; must be positive.
    repeated_tol : float, optional
        Pairwise-distance threshold for repeated axis roots. Defaults to
        ``max(tol, 1e-7)``.
    """
    if not tol > 0.0:
        raise DomainError("root_oracle requires tol > 0")
    if repeated_tol is None:
        repeated_tol = max(tol, DEFAULT_REPEATED_TOL)
    roots = _companion_roots(q)
    left = int(np.sum(roots.real < -tol))
    right = int(np.sum(roots.real > tol))
    axis = roots[np.abs(roots.real) <= tol]
    imag = len(axis)

    repeated = False
    for i in range(imag):
        for j in range(i + 1, imag):
            if abs(axis[i] - axis[j]) < repeated_tol:
                repeated = True
    label = _label_from_census(left, imag, right, repeated)
    return StabilityVerdict(left, imag, right, label, repeated, _boundary_resolved)


def _routh_census(a1: float, a2: float, a3: float, a4: float, H: float) -> tuple[int, int, int]:
    """Right-half-plane root count from the Routh array sign changes.

    Valid only when no root lies on the imaginary axis (caller guarantees
    a4 != 0 and H != 0, which excludes zero and imaginary-pair roots).
    """
    pivot2 = a1 * a2 - a3  # a1 * (second Routh pivot)
    if pivot2 != 0.0:
        column = (1.0, a1, pivot2 / a1, -H / pivot2, a4)
    else:
        # zero second pivot: epsilon-perturbation rule. The replacement
        # entry +0 carries sign +; the next-row entry a3 - a1*a4/eps is
        # dominated by -a1*a4 for eps -> 0+.
        column = (1.0, a1, 1.0, -a1 * a4, a4)
    changes = 0
    prev = 1.0
    for entry in column[1:]:
        if (entry > 0.0) != (prev > 0.0):
            changes += 1
        prev = entry
    return (4 - changes, 0, changes)


def hurwitz_verdict(q: QuarticCoeffs, tol: float = DEFAULT_BAND_TOL) -> StabilityVerdict:
    """Classify the quartic from sign conditions on (a1..a4, H).

    Asymptotic stability holds iff a1 > 0, a3 > 0, a4 > 0 and H < 0
    (positivity of a2 then follows).  Marginal configurations:

    * a1,a2,a3 > 0, a4 = 0, H < 0: three roots in the left half-plane
      plus a simple zero root;
    * all a_i > 0, H = 0: two roots in the left half-plane plus a simple
      imaginary pair;
    * both degeneracies at once: one left root, zero root, imaginary pair;
    * a1 = a3 = 0 (biquadratic): all-imaginary iff a2 > 0, a4 > 0 and
      a2^2 > 4 a4, with the equality case reported as DegenerateMarginal.

    Unstable configurations receive their census from the Routh sign-change
    count.  A point whose defining quantities (a1, a3, a4, H, and in the
    biquadratic branch a2, a2^2 - 4 a4) are nonzero yet within ``tol``
    (relative) of zero cannot be trusted to a sign test; such points are
    delegated to :func:`root_oracle` and flagged ``boundary_resolved``.
    """
    if tol < 0.0:
        raise DomainError("hurwitz_verdict requires tol >= 0")
    a1, a2, a3, a4 = q.as_tuple()
    H = marginal_H(q).H

    scale_a = max(1.0, abs(a1), abs(a2), abs(a3), abs(a4))
    # the band around H = 0 must scale with H's own terms: for lightly
    # damped systems every term is O(delta^2) and an absolute floor would
    # swallow the entire feature being located
    h_terms = max(a1 * a1 * abs(a4), a3 * a3, abs(a1 * a2 * a3))
    scale_H = h_terms if h_terms > 0.0 else 1.0

    def ambiguous(value: float, scale: float) -> bool:
        return value != 0.0 and abs(value) <= tol * scale

    def oracle() -> StabilityVerdict:
        return root_oracle(q, tol=max(tol, DEFAULT_ORACLE_TOL), _boundary_resolved=True)

    if ambiguous(a1, scale_a) or ambiguous(a3, scale_a) or ambiguous(a4, scale_a) \
            or ambiguous(H, scale_H):
        return oracle()

    if a1 == 0.0 and a3 == 0.0:
        # biquadratic track: lambda^4 + a2 lambda^2 + a4, mu = lambda^2
        disc = a2 * a2 - 4.0 * a4
        disc_terms = max(a2 * a2, 4.0 * abs(a4))
        scale_disc = disc_terms if disc_terms > 0.0 else 1.0
        if ambiguous(a2, scale_a) or ambiguous(disc, scale_disc):
            return oracle()
        if a4 == 0.0:
            if a2 > 0.0:
                # double zero root plus one imaginary pair
                return StabilityVerdict(0, 4, 0, StabilityLabel.DEGENERATE_MARGINAL, True)
            if a2 == 0.0:
                return StabilityVerdict(0, 4, 0, StabilityLabel.DEGENERATE_MARGINAL, True)
            # double zero root plus a symmetric real pair
            return StabilityVerdict(1, 2, 1, StabilityLabel.UNSTABLE, True)
        if a4 > 0.0:
            if a2 > 0.0 and disc > 0.0:
                return StabilityVerdict(0, 4, 0, StabilityLabel.MARGINALLY_STABLE, False)
            if a2 > 0.0 and disc == 0.0:
                # two coincident imaginary pairs
                return StabilityVerdict(0, 4, 0, StabilityLabel.DEGENERATE_MARGINAL, True)
            # disc < 0 gives a symmetric complex quadruple; a2 <= 0 with
            # disc >= 0 gives symmetric real pairs -- two right roots either way
            return StabilityVerdict(2, 0, 2, StabilityLabel.UNSTABLE, False)
        # a4 < 0: one real pair, one imaginary pair
        return StabilityVerdict(1, 2, 1, StabilityLabel.UNSTABLE, False)

    if a1 > 0.0 and a3 > 0.0:
        if a4 > 0.0:
            if H < 0.0:
                return StabilityVerdict(4, 0, 0, StabilityLabel.ASYMPTOTICALLY_STABLE, False)
            if H == 0.0:
                # simple imaginary pair at omega^2 = a3/a1, rest in the left
                return StabilityVerdict(2, 2, 0, StabilityLabel.MARGINALLY_STABLE, False)
            return StabilityVerdict(2, 0, 2, StabilityLabel.UNSTABLE, False)
        if a4 == 0.0:
            # zero root plus the cubic lambda^3 + a1 l^2 + a2 l + a3;
            # with a4 = 0, H reduces to a3*(a3 - a1*a2)
            if H < 0.0:
                return StabilityVerdict(3, 1, 0, StabilityLabel.MARGINALLY_STABLE, False)
            if H == 0.0:
                if a2 <= 0.0:
                    # a3 = a1*a2 <= 0 contradicts a3 > 0 unless roundoff
                    return oracle()
                return StabilityVerdict(1, 3, 0, StabilityLabel.MARGINALLY_STABLE, False)
            return StabilityVerdict(1, 1, 2, StabilityLabel.UNSTABLE, False)

    # Necessary conditions violated: at least one root in the closed right
    # half-plane.  Away from the band, a4 != 0 and H != 0 exclude axis roots
    # (an imaginary pair forces H = 0, a zero root forces a4 = 0), so the
    # Routh sign-change census applies whenever a1 != 0.
    if a1 != 0.0 and a4 != 0.0 and H != 0.0:
        left, imag, right = _routh_census(a1, a2, a3, a4, H)
        return StabilityVerdict(left, imag, right,
                                _label_from_census(left, imag, right, False), False)

    # exact degeneracies outside the enumerated sets (e.g. a1 = 0, a3 != 0,
    # or an exact H = 0 with mixed coefficient signs): let the oracle census
    return oracle()
