"""Monodromy of the excited rotor and its sum-resonance tongue."""

import math

import numpy as np
import pytest

from stabkit.errors import DomainError, IntegrationError, NoBoundary
from stabkit.floquet import (
    RotorParams,
    mathieu_reduction_check,
    monodromy,
    propagator,
    tongue_boundary,
    tongue_boundary_analytic,
)

ETA0 = math.sqrt(2.0)


def base(**kw):
    args = dict(alpha=1.0, epsilon=0.05, eta=ETA0, kappa=0.0)
    args.update(kw)
    return RotorParams(**args)


class TestParams:
    def test_derived_quantities(self):
        p = base(kappa=0.5)
        assert p.mu == pytest.approx(2.0 * 0.05 * 0.5)
        assert p.period == pytest.approx(math.pi / ETA0)
        assert p.eta0 == pytest.approx(ETA0)

    def test_validation(self):
        with pytest.raises(DomainError):
            base(alpha=-0.1)
        with pytest.raises(DomainError):
            base(epsilon=-1e-3)
        with pytest.raises(DomainError):
            base(eta=0.0)
        with pytest.raises(DomainError):
            base(kappa=-0.5)


class TestMonodromy:
    def test_minimum_steps(self):
        with pytest.raises(DomainError):
            propagator(base(), steps=128)
        with pytest.raises(DomainError):
            monodromy(base(), steps=255)

    def test_volume_contraction(self):
        # product of multipliers equals exp(-2 mu T) exactly in theory
        for kappa in (0.0, 0.5):
            p = base(kappa=kappa)
            res = monodromy(p)
            assert res.liouville_residual < 1e-8
            det = float(np.prod(res.multipliers).real)
            assert det == pytest.approx(math.exp(-2.0 * p.mu * p.period), rel=1e-8)

    def test_symplectic_pairing_undamped(self):
        # no damping: the period map preserves a symplectic form, so the
        # multiplier set is closed under m -> 1/conj(m)
        ms = monodromy(base(eta=1.2)).multipliers
        defect = max(float(np.min(np.abs(1.0 / np.conj(m) - ms))) for m in ms)
        assert defect < 1e-10

    def test_verdicts_around_tongue(self):
        assert not monodromy(base(eta=ETA0)).stable
        assert monodromy(base(eta=1.2)).stable
        assert monodromy(base(eta=1.6)).stable

    def test_step_halving_guard(self):
        # long period at coarse fixed step: halving moves a multiplier
        slow = base(eta=0.05)
        with pytest.raises(IntegrationError):
            monodromy(slow, steps=256, verify=True)
        res = monodromy(slow, steps=256, verify=False)
        assert res.steps == 256

    def test_deterministic(self):
        a = monodromy(base(kappa=0.3))
        b = monodromy(base(kappa=0.3))
        assert np.array_equal(a.multipliers, b.multipliers)
        assert a.max_modulus == b.max_modulus


class TestAnalyticBoundaries:
    def test_undamped_formula(self):
        p = base()
        assert tongue_boundary_analytic(p, -1) == pytest.approx(ETA0 * 0.95)
        assert tongue_boundary_analytic(p, +1) == pytest.approx(ETA0 * 1.05)

    def test_damped_formula(self):
        p = base(kappa=0.5)
        rad = 2.0 * 0.05**2 - (p.mu / (2.0 * ETA0)) ** 2
        expect_hi = ETA0 * (1.0 + math.sqrt(rad))
        assert tongue_boundary_analytic(p, +1) == pytest.approx(expect_hi, rel=1e-12)

    def test_limit_jump_in_formulas(self):
        # the damped boundary does not tend to the undamped one as mu -> 0+
        p0 = base()
        tiny = base(kappa=1e-9)
        lim_hi = tongue_boundary_analytic(tiny, +1)
        assert lim_hi == pytest.approx(ETA0 * (1.0 + 0.05 * ETA0), rel=1e-6)
        assert lim_hi - tongue_boundary_analytic(p0, +1) > 0.02

    def test_lifted_tongue(self):
        with pytest.raises(NoBoundary):
            tongue_boundary_analytic(base(kappa=3.0), +1)


class TestBisectedBoundaries:
    def test_undamped_frozen(self):
        p = base()
        lo = tongue_boundary(p, -1)
        hi = tongue_boundary(p, +1)
        assert lo == pytest.approx(1.349176145719583, abs=1e-9)
        assert hi == pytest.approx(1.4917353708214236, abs=1e-9)
        # first-order tongue, so the match is only O(epsilon^2) wide
        assert abs(lo - ETA0 * 0.95) < 7e-3
        assert abs(hi - ETA0 * 1.05) < 7e-3

    def test_damped_frozen(self):
        p = base(kappa=0.5)
        lo = tongue_boundary(p, -1)
        hi = tongue_boundary(p, +1)
        assert lo == pytest.approx(1.3262417169487153, abs=1e-9)
        assert hi == pytest.approx(1.5215221594447037, abs=1e-9)
        budget = 6.0 * p.epsilon**2 * ETA0
        assert abs(lo - tongue_boundary_analytic(p, -1)) < budget
        assert abs(hi - tongue_boundary_analytic(p, +1)) < budget

    def test_small_damping_jump(self):
        # mu -> 0+ widens the tongue by a finite amount
        p = base(kappa=1e-3)
        hi = tongue_boundary(p, +1)
        assert hi == pytest.approx(1.5248234190106542, abs=1e-9)
        gap = hi - 1.4917353708214236
        assert gap > 10.0 * 1e-12
        assert gap > 0.03

    def test_lifted_tongue_detected(self):
        with pytest.raises(NoBoundary):
            tongue_boundary(base(kappa=3.0), +1)

    def test_needs_excitation(self):
        with pytest.raises(DomainError):
            tongue_boundary(base(epsilon=0.0), +1)


class TestScalarReduction:
    def test_verdicts_agree(self):
        grid = np.linspace(1.30, 1.55, 11)
        assert mathieu_reduction_check(base(), grid, steps=512) == 0.0

    def test_requires_undamped(self):
        with pytest.raises(DomainError):
            mathieu_reduction_check(base(kappa=0.1), np.array([1.4]))
