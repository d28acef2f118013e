"""Krein collisions, Jordan-chain expansions, and the critical surface."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stabkit.errors import DegenerateChain, DomainError, NoCollision
from stabkit.gyro import (
    GyroSystem,
    MaxwellBlochParams,
    eigenvalue_increment,
    find_krein_collision,
    first_order_matrix,
    gamma_neutral,
    gamma_neutral_expansion,
    hauger_omega_cr,
    hauger_parameters,
    krein_splitting,
    maxwell_bloch_quartic,
    maxwell_bloch_stable_closed,
    maxwell_bloch_verdict,
    omega_cr_bisected,
    omega_cr_surface,
    omega_cr_surface_2dof,
    pairing_defect,
    spectrum,
)
from stabkit.quartic import hurwitz_verdict
from stabkit.sweep import ray_limit

J = np.array([[0.0, 1.0], [-1.0, 0.0]])


def reference_system():
    return GyroSystem(K=np.diag([-1.0, -4.0]), G=J, D=np.eye(2), N=J)


def exact_boundary_gamma(gamma):
    """Exact flutter-boundary Omega for the reference system at ratio gamma.

    Derived by eliminating omega from the marginality conditions of the
    characteristic quartic; the two branches are
    gamma_pm(Om) = (Om^2 +- sqrt((Om^2-5)^2-16))/(2 Om), Om >= 3.
    """
    from scipy.optimize import brentq

    candidates = []
    for sign in (-1.0, 1.0):

        def f(Om):
            rad = (Om * Om - 5.0) ** 2 - 16.0
            return (Om * Om + sign * math.sqrt(max(rad, 0.0))) / (2.0 * Om) - gamma

        try:
            candidates.append(brentq(f, 3.0, 60.0, xtol=1e-13))
        except ValueError:
            pass
    return min(candidates)


class TestSpectrum:
    def test_decoupled_oscillators(self):
        sys = GyroSystem(K=np.diag([1.0, 4.0]), G=J)
        eigs = np.sort_complex(spectrum(sys))
        expected = np.sort_complex(np.array([1j, -1j, 2j, -2j]))
        assert np.allclose(eigs, expected, atol=1e-12)

    def test_gyroscopic_stabilization_at_large_omega(self):
        sys = reference_system()
        eigs = spectrum(sys, Omega=10.0)
        assert np.max(np.abs(eigs.real)) < 1e-10

    def test_unstable_below_threshold(self):
        sys = reference_system()
        eigs = spectrum(sys, Omega=2.0)
        assert np.max(eigs.real) > 0.1

    def test_damped_potential_system_decays(self):
        sys = GyroSystem(K=np.diag([1.0, 4.0]), G=J, D=np.eye(2), delta=0.3)
        eigs = spectrum(sys)
        assert np.max(eigs.real) < -1e-6

    def test_hamiltonian_pairing(self):
        sys = reference_system()
        for Om in (0.0, 2.0, 3.0, 5.0):
            eigs = spectrum(sys, Omega=Om)
            assert pairing_defect(eigs) < 1e-10

    def test_reversible_pairing(self):
        # delta = Omega = 0 with a circulatory term keeps lambda -> -lambda
        sys = GyroSystem(K=np.diag([1.0, 4.0]), G=J, N=J, nu=0.7)
        eigs = spectrum(sys)
        assert pairing_defect(eigs) < 1e-10

    def test_shape_validation(self):
        with pytest.raises(DomainError):
            GyroSystem(K=np.eye(3)[:2], G=J)
        with pytest.raises(DomainError):
            GyroSystem(K=np.array([[1.0, 0.2], [0.0, 1.0]]), G=J)
        with pytest.raises(DomainError):
            GyroSystem(K=np.eye(2), G=np.eye(2))


class TestKreinCollision:
    def test_reference_closed_form(self):
        data = find_krein_collision(reference_system())
        assert data.Omega0 == pytest.approx(3.0, abs=1e-12)
        assert data.omega0 == pytest.approx(math.sqrt(2.0), abs=1e-12)

    def test_isotropic_case(self):
        kappa = -2.25
        sys = GyroSystem(K=kappa * np.eye(2), G=J, D=np.eye(2), N=J)
        data = find_krein_collision(sys)
        assert data.Omega0 == pytest.approx(2.0 * math.sqrt(-kappa), rel=1e-12)
        assert data.omega0 == pytest.approx(math.sqrt(-kappa), rel=1e-12)

    def test_positive_definite_no_collision(self):
        sys = GyroSystem(K=np.diag([1.0, 4.0]), G=J)
        with pytest.raises(NoCollision):
            find_krein_collision(sys)

    def test_chain_residuals(self):
        data = find_krein_collision(reference_system())
        norm_k = float(np.linalg.norm(np.diag([-1.0, -4.0]), 2))
        assert data.residual0 < 1e-8 * norm_k
        assert data.residual1 < 1e-8 * norm_k

    def test_splitting_coefficient(self):
        data = find_krein_collision(reference_system())
        assert data.mu2 == pytest.approx(1.5, rel=1e-10)
        assert data.mu2 > 0.0

    def test_h15_scalars(self):
        data = find_krein_collision(reference_system())
        assert data.d1 == pytest.approx(1.0, rel=1e-10)
        assert data.d2 == pytest.approx(0.0, abs=1e-12)
        assert data.n1 == pytest.approx(-2.0 * math.sqrt(2.0) / 3.0, rel=1e-10)
        assert data.n2 == pytest.approx(-2.0 / 27.0, rel=1e-8)
        assert data.gamma_star == pytest.approx(1.5, rel=1e-10)

    def test_gauge_invariance(self):
        # u1 is defined up to multiples of u0; physical outputs must not move
        base = find_krein_collision(reference_system())
        other = find_krein_collision(reference_system(), gauge=0.37 - 1.2j)
        assert other.mu2 == pytest.approx(base.mu2, rel=1e-9)
        assert other.gamma_star == pytest.approx(base.gamma_star, rel=1e-9)
        for delta, nu in ((1e-3, 2e-3), (1e-2, 5e-3)):
            assert omega_cr_surface(other, delta, nu) == pytest.approx(
                omega_cr_surface(base, delta, nu), rel=1e-8
            )

    def test_requires_unperturbed_system(self):
        sys = GyroSystem(K=np.diag([-1.0, -4.0]), G=J, D=np.eye(2), delta=0.1)
        with pytest.raises(DomainError):
            find_krein_collision(sys)

    def test_general_m_requires_range(self):
        K4 = np.diag([-1.0, -4.0, -9.0, -16.0])
        G4 = np.kron(np.eye(2), J)
        sys = GyroSystem(K=K4, G=G4)
        with pytest.raises(DomainError):
            find_krein_collision(sys)

    def test_block_diagonal_m4_matches_m2(self):
        # two decoupled two-dimensional blocks: the scanner must find each
        # block's collision and reproduce the closed-form data
        Z = np.zeros((2, 2))
        K4 = np.block([[np.diag([-1.0, -4.0]), Z], [Z, np.diag([-9.0, -16.0])]])
        G4 = np.kron(np.eye(2), J)
        sys = GyroSystem(K=K4, G=G4, D=np.eye(4), N=np.kron(np.eye(2), J))
        first = find_krein_collision(sys, Omega_range=(2.0, 4.0))
        assert first.Omega0 == pytest.approx(3.0, abs=1e-9)
        assert first.omega0 == pytest.approx(math.sqrt(2.0), abs=1e-9)
        assert first.mu2 == pytest.approx(1.5, rel=1e-9)
        second = find_krein_collision(sys, Omega_range=(6.0, 8.0))
        assert second.Omega0 == pytest.approx(7.0, abs=1e-9)
        assert second.omega0 == pytest.approx(math.sqrt(12.0), abs=1e-9)
        assert second.mu2 == pytest.approx(3.5, rel=1e-9)

    def test_no_collision_in_empty_range(self):
        sys = reference_system()
        with pytest.raises(NoCollision):
            find_krein_collision(sys, Omega_range=(10.0, 20.0))


class TestSplitting:
    def test_double_root_at_collision(self):
        data = find_krein_collision(reference_system())
        lam_plus, lam_minus = krein_splitting(data, data.Omega0)
        assert lam_plus == lam_minus == pytest.approx(1j * data.omega0)

    @pytest.mark.parametrize("h", [1e-2, 1e-4])
    def test_stable_side_matches_exact(self, h):
        data = find_krein_collision(reference_system())
        sys = reference_system()
        lam_pred = krein_splitting(data, data.Omega0 + h)
        eigs = spectrum(sys, Omega=data.Omega0 + h)
        upper = eigs[eigs.imag > 0.0]
        err = max(min(abs(lp - e) for e in upper) for lp in lam_pred)
        # two-term expansion: residual after the sqrt term is O(h)
        assert err < 5.0 * h

    def test_flutter_side_off_axis(self):
        data = find_krein_collision(reference_system())
        h = 1e-3
        lam_pred = krein_splitting(data, data.Omega0 - h)
        assert abs(lam_pred[0].real) > 0.0
        eigs = spectrum(reference_system(), Omega=data.Omega0 - h)
        growth = float(np.max(eigs.real))
        assert growth == pytest.approx(abs(lam_pred[0].real), rel=0.05)

    def test_observed_order(self):
        data = find_krein_collision(reference_system())
        sys = reference_system()

        def residual(direction, h):
            lam_pred = krein_splitting(data, data.Omega0 + h)
            eigs = spectrum(sys, Omega=data.Omega0 + h)
            upper = eigs[eigs.imag > 0.0]
            return max(min(abs(lp - e) for e in upper) for lp in lam_pred)

        res = ray_limit(residual, (1.0,), [1e-2, 1e-3, 1e-4])
        assert res.extrapolated_limit == pytest.approx(0.0, abs=1e-6)
        assert res.convergence_order > 0.9


class TestIncrement:
    def test_zero_perturbation(self):
        data = find_krein_collision(reference_system())
        inc = eigenvalue_increment(data, 4.0, 0.0, 0.0)
        assert inc == 0j

    def test_neutral_ratio_kills_real_part(self):
        data = find_krein_collision(reference_system())
        Om = 4.0
        gamma = gamma_neutral(data, Om)
        delta = 1e-3
        inc = eigenvalue_increment(data, Om, delta, gamma * delta)
        assert abs(inc.real) < 1e-12

    def test_against_exact_spectrum(self):
        data = find_krein_collision(reference_system())
        sys = reference_system()
        Om = 4.0
        eigs0 = spectrum(sys, Omega=Om)
        upper = np.sort(eigs0[eigs0.imag > 0.0].imag)

        def err(direction, s):
            delta, nu = s, s
            inc = eigenvalue_increment(data, Om, delta, nu, branch=+1)
            lam0 = 1j * upper[-1]
            exact = spectrum(
                GyroSystem(K=np.diag([-1.0, -4.0]), G=J, D=np.eye(2), N=J,
                           Omega=Om, delta=delta, nu=nu)
            )
            nearest = exact[np.argmin(np.abs(exact - lam0))]
            return abs(nearest.real - inc.real)

        res = ray_limit(err, (1.0, 1.0), [1e-3, 1e-4, 1e-5])
        # first-order prediction: residual vanishes superlinearly
        assert res.convergence_order > 1.5
        assert res.extrapolated_limit == pytest.approx(0.0, abs=1e-9)

    def test_expansion_matches_neutral_ratio(self):
        data = find_krein_collision(reference_system())
        for Om in (3.0 + 1e-4, 3.0 + 1e-2):
            g_exact = gamma_neutral(data, Om)
            g_exp = gamma_neutral_expansion(data, Om)
            assert g_exp == pytest.approx(g_exact, rel=2e-2)

    def test_expansion_rejects_flutter_side(self):
        data = find_krein_collision(reference_system())
        with pytest.raises(DomainError):
            gamma_neutral_expansion(data, data.Omega0 - 0.1)


class TestCriticalSurface:
    def test_handle_ray_gives_omega0(self):
        data = find_krein_collision(reference_system())
        for delta in (1e-4, 1e-2, 0.5):
            val = omega_cr_surface(data, delta, data.gamma_star * delta)
            assert val == pytest.approx(data.Omega0, rel=1e-12)

    def test_reference_paraboloid(self):
        data = find_krein_collision(reference_system())
        delta = 1e-3
        for gamma in (0.5, 1.0, 1.5, 2.0, 3.0):
            val = omega_cr_surface(data, delta, gamma * delta)
            assert val == pytest.approx(3.0 + 0.75 * (gamma - 1.5) ** 2, rel=1e-9)

    def test_never_below_omega0(self):
        data = find_krein_collision(reference_system())
        rng = np.random.default_rng(3)
        for _ in range(200):
            delta = float(rng.uniform(1e-4, 1.0))
            nu = float(rng.normal(scale=2.0))
            assert omega_cr_surface(data, delta, nu) >= data.Omega0 - 1e-12

    def test_agrees_with_two_dof_closed_form(self):
        data = find_krein_collision(reference_system())
        K, D = np.diag([-1.0, -4.0]), np.eye(2)
        rng = np.random.default_rng(11)
        for _ in range(50):
            delta = float(rng.uniform(1e-3, 1.0))
            nu = float(rng.normal(scale=1.5))
            a = omega_cr_surface(data, delta, nu)
            b = omega_cr_surface_2dof(K, D, delta, nu)
            assert a == pytest.approx(b, rel=1e-8)

    def test_closed_form_gamma_star(self):
        # gamma* from the two-oscillator formula
        K, D = np.diag([-1.0, -4.0]), np.eye(2)
        tr_kd = float(np.trace(K @ D))
        expect = (tr_kd + (9.0 - 2.0) * 2.0) / (2.0 * 3.0)
        assert expect == pytest.approx(1.5)
        assert omega_cr_surface_2dof(K, D, 1.0, expect * 1.0) == pytest.approx(3.0)

    def test_domain_errors(self):
        data = find_krein_collision(reference_system())
        with pytest.raises(DomainError):
            omega_cr_surface(data, 0.0, 1.0)
        with pytest.raises(DomainError):
            omega_cr_surface_2dof(np.diag([1.0, 4.0]), np.eye(2), 1e-3, 1.0)

    def test_bisected_convergence_on_handle(self):
        # along nu = gamma* delta the true boundary converges to Omega0
        sys = reference_system()
        vals = []
        for delta in (1e-2, 1e-3, 1e-4):
            vals.append(omega_cr_bisected(sys, delta, 1.5 * delta))
        errs = [abs(v - 3.0) for v in vals]
        assert errs[0] < 5e-3
        assert errs[1] < 5e-5
        assert errs[2] < 5e-6

    def test_bisected_matches_exact_boundary_curve(self):
        # at finite small delta the bisected threshold approaches the exact
        # neutral curve of the unperturbed-ratio limit, branch by branch
        sys = reference_system()
        delta = 1e-3
        for gamma in (0.5, 1.0, 2.0, 3.0):
            bis = omega_cr_bisected(sys, delta, gamma * delta)
            assert bis == pytest.approx(exact_boundary_gamma(gamma), abs=5e-4)

    def test_vertex_approximation_quality_near_gamma_star(self):
        # the quadratic surface is the local model of the exact limit curve:
        # agreement degrades like (gamma - gamma*)^3 away from the vertex
        data = find_krein_collision(reference_system())
        for gamma, budget in ((1.45, 5e-4), (1.6, 5e-3), (1.8, 2e-2)):
            exact = exact_boundary_gamma(gamma)
            model = omega_cr_surface(data, 1.0, gamma)
            assert abs(model - exact) < budget


class TestMaxwellBloch:
    def test_quartic_coefficients(self):
        p = MaxwellBlochParams(Omega=2.0, delta=1.0, nu=2.0, kappa=1.0)
        q = maxwell_bloch_quartic(p)
        assert q.a1 == pytest.approx(2.0)
        assert q.a2 == pytest.approx(4.0 + 1.0 + 2.0)
        assert q.a3 == pytest.approx(2.0 * (1.0 + 4.0))
        assert q.a4 == pytest.approx(1.0 + 4.0)

    def test_no_circulatory_always_stable(self):
        for Om in (-3.0, 0.0, 1.0, 10.0):
            p = MaxwellBlochParams(Omega=Om, delta=1.0, nu=0.0, kappa=1.0)
            assert maxwell_bloch_verdict(p).is_stable
            assert maxwell_bloch_stable_closed(p)

    def test_threshold_example(self):
        stable = MaxwellBlochParams(Omega=2.0, delta=1.0, nu=2.0, kappa=1.0)
        unstable = MaxwellBlochParams(Omega=1.0, delta=1.0, nu=2.0, kappa=1.0)
        assert maxwell_bloch_verdict(stable).is_stable
        assert not maxwell_bloch_verdict(unstable).is_stable
        # closed test: Omega > nu/delta - (delta/nu) kappa = 2 - 0.5 = 1.5
        assert maxwell_bloch_stable_closed(stable)
        assert not maxwell_bloch_stable_closed(unstable)

    def test_negative_kappa_needs_large_omega(self):
        kappa = -1.0
        for nu in (0.3, 1.0, 2.0):
            for Om in np.linspace(-5.0, 5.0, 41):
                p = MaxwellBlochParams(Omega=float(Om), delta=0.5, nu=nu, kappa=kappa)
                if maxwell_bloch_verdict(p).is_stable:
                    assert abs(Om) >= 2.0 * math.sqrt(-kappa) - 1e-9

    @given(
        Om=st.floats(min_value=-4.0, max_value=4.0),
        nu=st.floats(min_value=0.05, max_value=3.0),
        kappa=st.floats(min_value=-2.0, max_value=2.0),
        delta=st.sampled_from([0.1, 1.0]),
    )
    @settings(max_examples=300, deadline=None)
    def test_closed_form_agrees_with_quartic(self, Om, nu, kappa, delta):
        p = MaxwellBlochParams(Omega=Om, delta=delta, nu=nu, kappa=kappa)
        closed = maxwell_bloch_stable_closed(p)
        verdict = maxwell_bloch_verdict(p)
        # skip the tolerance band around the boundary surface
        margin = nu * nu - delta * Om * nu - delta * delta * kappa
        scale = max(nu * nu, abs(delta * Om * nu), abs(delta * delta * kappa), 1e-30)
        if abs(margin) < 1e-9 * scale:
            return
        assert closed == verdict.is_stable

    def test_nu_zero_falls_back_to_quartic(self):
        p = MaxwellBlochParams(Omega=0.0, delta=1.0, nu=0.0, kappa=-1.0)
        assert not maxwell_bloch_stable_closed(p)
        assert not maxwell_bloch_verdict(p).is_stable


class TestHauger:
    def test_umbrella_tip(self):
        lo, hi = hauger_omega_cr(1.0, 1.0, -1.0)
        assert lo == pytest.approx(2.0)

    def test_branch_value(self):
        lo, hi = hauger_omega_cr(1.0, 2.0, -1.0)
        assert lo == pytest.approx(2.0 + (2.0 - 1.0) ** 2)

    def test_sign_symmetry(self):
        lo_p, hi_p = hauger_omega_cr(1.0, 0.5, -1.0)
        lo_m, hi_m = hauger_omega_cr(1.0, -0.5, -1.0)
        assert lo_p == pytest.approx(-hi_m, rel=1e-12)
        assert hi_p == pytest.approx(-lo_m, rel=1e-12)

    def test_exact_boundary_by_bisection(self):
        # the exact positive branch is Omega = gamma - kappa/gamma at fixed
        # ratio gamma = nu/delta, independent of the magnitude of delta
        from stabkit.sweep import bisect_boundary

        kappa = -1.0
        for gamma in (0.6, 1.0, 2.0):
            for delta in (1e-1, 1e-3):

                def stable(Om):
                    p = MaxwellBlochParams(
                        Omega=Om, delta=delta, nu=gamma * delta, kappa=kappa
                    )
                    return maxwell_bloch_verdict(p).is_stable

                bis = bisect_boundary(stable, (1.7, 6.0), tol=1e-11)
                assert bis == pytest.approx(gamma - kappa / gamma, abs=1e-9)

    def test_expansion_error_is_cubic_in_offset(self):
        # quadratic expansion about the extremum gamma = sqrt(-kappa)
        kappa = -1.0
        for h in (0.1, 0.05, 0.025):
            gamma = 1.0 + h
            up, _ = hauger_omega_cr(1.0, gamma, kappa)
            exact = gamma - kappa / gamma
            assert abs(up - exact) < 1.5 * h**3

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            hauger_omega_cr(1.0, 1.0, 0.5)
        with pytest.raises(DomainError):
            hauger_omega_cr(0.0, 1.0, -1.0)

    def test_parameter_map(self):
        p = hauger_parameters(I0=2.0, I=4.0, b=1.0, r=3.0, mgs=1.0, eta=0.25, T=2.0, k=-1.0)
        omega = -2.0 / -1.0  # -T/k
        assert p.Omega == pytest.approx(2.0 / 4.0)
        assert p.delta == pytest.approx(1.0 / (4.0 * omega))
        assert p.kappa == pytest.approx((3.0 - 1.0) / (4.0 * omega**2))
        assert p.nu == pytest.approx((1.0 - 0.25) * 2.0 / (4.0 * omega**2))
