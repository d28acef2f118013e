"""Two-degree-of-freedom circulatory systems and discrete flutter limits."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stabkit.circulatory import (
    HultenParams,
    SystemMatrices2,
    ZieglerParams,
    first_order_matrix,
    hulten_critical_mu_undamped,
    hulten_quartic,
    hulten_system,
    nu_critical_damped_first_order,
    nu_critical_damped_limit,
    nu_critical_undamped,
    quartic_from_system,
    ziegler_critical_load,
    ziegler_critical_load_bisected,
    ziegler_matrices,
    ziegler_quartic,
    ziegler_verdict,
)
from stabkit.errors import DomainError
from stabkit.quartic import hurwitz_verdict, root_oracle
from stabkit.sweep import bisect_boundary, ray_limit

mat_entry = st.floats(min_value=-3.0, max_value=3.0, allow_nan=False)


def random_spd(rng, scale=1.0):
    A = rng.normal(size=(2, 2))
    return scale * (A @ A.T + 0.1 * np.eye(2))


class TestQuarticFromSystem:
    def test_coefficients_match_characteristic_polynomial(self):
        rng = np.random.default_rng(7)
        worst = 0.0
        for _ in range(10_000):
            K = random_spd(rng)
            D = random_spd(rng)
            s = SystemMatrices2(
                K=K, D=D,
                nu=float(rng.normal()), delta=float(rng.uniform(0, 2)),
                Omega=float(rng.normal()),
            )
            q = quartic_from_system(s)
            eig_poly = np.poly(first_order_matrix(s))
            scale = max(1.0, float(np.max(np.abs(eig_poly))))
            diff = np.max(np.abs(np.array(q.as_poly()) - eig_poly.real)) / scale
            worst = max(worst, diff)
        assert worst < 1e-10

    def test_undamped_symmetric_case(self):
        # pure potential system: a1 = a3 = 0 and the quartic is biquadratic
        s = SystemMatrices2(K=np.diag([1.0, 4.0]), D=np.zeros((2, 2)))
        q = quartic_from_system(s)
        assert q.a1 == 0.0
        assert q.a3 == 0.0
        assert q.a2 == pytest.approx(5.0)
        assert q.a4 == pytest.approx(4.0)

    def test_asymmetry_rejected(self):
        with pytest.raises(DomainError):
            SystemMatrices2(K=np.array([[1.0, 0.5], [0.0, 1.0]]), D=np.eye(2))

    def test_negative_delta_rejected(self):
        with pytest.raises(DomainError):
            SystemMatrices2(K=np.eye(2), D=np.eye(2), delta=-1.0)


class TestCriticalCirculatory:
    def test_undamped_threshold(self):
        nu0 = nu_critical_undamped(np.diag([1.0, 4.0]))
        assert nu0 == pytest.approx(1.5, rel=1e-14)

    def test_undamped_threshold_is_merge_point(self):
        # just below nu0 the undamped spectrum is marginal, just above unstable
        K = np.diag([1.0, 4.0])
        nu0 = nu_critical_undamped(K)

        def unstable(nu):
            s = SystemMatrices2(K=K, D=np.zeros((2, 2)), nu=nu)
            return hurwitz_verdict(quartic_from_system(s)).right_count > 0

        crossing = bisect_boundary(unstable, (0.0, 3.0), tol=1e-12)
        assert crossing == pytest.approx(nu0, abs=1e-10)

    def test_damped_limit_example(self):
        # stiffness diag(1,4) with single-coordinate damping kills the margin
        K = np.diag([1.0, 4.0])
        D = np.diag([1.0, 0.0])
        assert nu_critical_damped_limit(K, D) == pytest.approx(0.0, abs=1e-14)

    def test_damped_limit_gap_identity(self):
        # nu0^2 - nu_cr^2 equals the squared damping shift
        K = np.array([[2.0, 0.3], [0.3, 5.0]])
        D = np.array([[1.0, 0.2], [0.2, 0.7]])
        nu0 = nu_critical_undamped(K)
        nu_cr = nu_critical_damped_limit(K, D)
        tr_kd = float(np.trace(K @ D))
        shift = (2.0 * tr_kd - np.trace(K) * np.trace(D)) / (2.0 * np.trace(D))
        assert nu0 * nu0 - nu_cr * nu_cr == pytest.approx(shift * shift, rel=1e-12)
        # equivalent statement as a difference of thresholds
        assert nu0 - nu_cr == pytest.approx(shift * shift / (nu0 + nu_cr), rel=1e-12)

    def test_first_order_expansion(self):
        K = np.array([[2.0, 0.3], [0.3, 5.0]])
        D = np.array([[1.0, 0.2], [0.2, 0.7]])
        nu0 = nu_critical_undamped(K)
        exact = nu_critical_damped_limit(K, D)
        approx = nu_critical_damped_first_order(K, D)
        tr_kd = float(np.trace(K @ D))
        shift = (2.0 * tr_kd - np.trace(K) * np.trace(D)) / (2.0 * np.trace(D))
        # first-order truncation error is O(shift^4)
        assert abs(approx - exact) < (shift / nu0) ** 4 * nu0

    def test_damped_limit_negative_radicand(self):
        # a positive-semidefinite D keeps the radicand >= 0; an indefinite
        # damping matrix can push the shift past nu0 and must be rejected
        K = np.diag([1.0, 4.0])
        D = np.diag([2.0, -1.0])
        with pytest.raises(DomainError):
            nu_critical_damped_limit(K, D)

    def test_damped_limit_requires_positive_trace(self):
        with pytest.raises(DomainError):
            nu_critical_damped_limit(np.diag([1.0, 4.0]), np.diag([0.0, 0.0]))

    def test_vanishing_damping_limit_is_damped_threshold(self):
        # the bisected threshold at delta -> 0 converges to the damped-limit
        # value, not to the undamped one: the jump survives the limit
        K = np.array([[2.0, 0.3], [0.3, 5.0]])
        D = np.array([[1.0, 0.2], [0.2, 0.7]])
        nu_star = nu_critical_damped_limit(K, D)
        nu0 = nu_critical_undamped(K)

        def critical(direction, delta):
            def unstable(nu):
                s = SystemMatrices2(K=K, D=D, nu=nu, delta=delta)
                return not hurwitz_verdict(quartic_from_system(s)).is_stable

            return bisect_boundary(unstable, (0.0, 3.0), tol=1e-12)

        res = ray_limit(critical, (1.0,), [1e-3, 1e-4, 1e-5])
        assert res.extrapolated_limit == pytest.approx(nu_star, abs=1e-6)
        assert abs(res.extrapolated_limit - nu0) > 0.01

        # convergence toward the limit is first order in delta
        errs = [abs(v - nu_star) for v in res.values]
        assert errs[0] > errs[1] > errs[2]
        rate = math.log(errs[0] / errs[2]) / math.log(1e-3 / 1e-5)
        assert 0.5 < rate < 2.0


class TestZiegler:
    def test_matrix_shapes_and_values(self):
        M, B, K = ziegler_matrices(ZieglerParams(P=1.0, b=0.5))
        assert np.allclose(M, [[3.0, 1.0], [1.0, 1.0]])
        assert np.allclose(B, [[1.0, -0.5], [-0.5, 0.5]])
        assert np.allclose(K, [[1.0, 0.0], [-1.0, 1.0]])

    def test_quartic_coefficients(self):
        q = ziegler_quartic(ZieglerParams(P=1.0, b=1.0))
        assert q.a1 == pytest.approx(3.5)
        assert q.a2 == pytest.approx(-1.0 + 0.5 + 3.5)
        assert q.a3 == pytest.approx(1.0)
        assert q.a4 == pytest.approx(0.5)

    def test_undamped_critical_load(self):
        assert ziegler_critical_load(0.0) == pytest.approx(3.5 - math.sqrt(2.0), abs=1e-12)

    def test_damped_critical_load_formula(self):
        # P(b) = (41/28) + b^2/2 in the unit-parameter instance
        for b in (1e-3, 0.1, 0.5, 1.0):
            assert ziegler_critical_load(b) == pytest.approx(41.0 / 28.0 + b * b / 2.0)

    def test_jump_at_zero_damping(self):
        lim = 41.0 / 28.0
        undamped = ziegler_critical_load(0.0)
        assert undamped - lim > 0.6  # destabilization by ~30 percent

    def test_bisected_matches_analytic(self):
        for b in (1e-4, 1e-2, 0.3, 1.0):
            analytic = ziegler_critical_load(b)
            bisected = ziegler_critical_load_bisected(b, tol=1e-12)
            assert bisected == pytest.approx(analytic, abs=1e-8)

    def test_bisected_undamped(self):
        assert ziegler_critical_load_bisected(0.0) == pytest.approx(
            3.5 - math.sqrt(2.0), abs=1e-9
        )

    def test_verdict_sides(self):
        b = 0.2
        p_cr = ziegler_critical_load(b)
        assert ziegler_verdict(p_cr - 0.05, b).is_stable
        assert not ziegler_verdict(p_cr + 0.05, b).is_stable

    def test_parameter_scaling(self):
        # doubled stiffness doubles the load scale c/l
        p = ZieglerParams(m=1.0, l=1.0, c=2.0)
        assert ziegler_critical_load(0.0, p) == pytest.approx(2.0 * (3.5 - math.sqrt(2.0)))

    def test_negative_damping_rejected(self):
        with pytest.raises(DomainError):
            ziegler_critical_load(-0.1)

    def test_ray_limit_exhibits_jump(self):
        res = ray_limit(
            lambda d, b: ziegler_critical_load(b), (1.0,), [1e-1, 1e-2, 1e-3, 1e-4]
        )
        assert res.extrapolated_limit == pytest.approx(41.0 / 28.0, abs=1e-6)
        assert abs(res.extrapolated_limit - ziegler_critical_load(0.0)) > 0.5


class TestHulten:
    def test_system_split(self):
        p = HultenParams(omega01=1.0, omega02=2.0, eta1=0.1, eta2=0.2, mu=0.3)
        s = hulten_system(p)
        # symmetric part keeps the mean coupling, skew part carries the rest
        assert np.allclose(s.K, [[1.0, 0.3 * 0.5 * (1.0 - 4.0)], [0.3 * 0.5 * (1.0 - 4.0), 4.0]])
        assert s.nu == pytest.approx(-0.3 * 0.5 * (1.0 + 4.0))
        assert np.allclose(s.D, np.diag([0.1, 0.4]))
        assert s.delta == 1.0

    def test_full_stiffness_reconstruction(self):
        # symmetric + nu*N reproduces the original non-symmetric stiffness
        p = HultenParams(omega01=1.3, omega02=0.8, mu=0.25)
        s = hulten_system(p)
        N = np.array([[0.0, 1.0], [-1.0, 0.0]])
        full = s.K + s.nu * N
        w1s, w2s = 1.3**2, 0.8**2
        expected = np.array([[w1s, -0.25 * w2s], [0.25 * w1s, w2s]])
        assert np.allclose(full, expected, atol=1e-14)

    def test_undamped_critical_coupling(self):
        p = HultenParams(omega01=1.0, omega02=2.0)
        assert hulten_critical_mu_undamped(p) == pytest.approx(3.0 / 4.0)

    def test_undamped_threshold_against_verdict(self):
        p0 = HultenParams(omega01=1.0, omega02=2.0)
        mu_c = hulten_critical_mu_undamped(p0)

        def unstable(mu):
            q = hulten_quartic(HultenParams(omega01=1.0, omega02=2.0, mu=mu))
            v = hurwitz_verdict(q)
            return v.right_count > 0

        crossing = bisect_boundary(unstable, (0.0, 2.0), tol=1e-12)
        assert crossing == pytest.approx(mu_c, abs=1e-10)

    def test_damping_destabilizes_below_undamped_threshold(self):
        # single-coordinate damping makes a mu below mu_c unstable
        mu = 0.675  # 90 percent of the undamped threshold
        q_undamped = hulten_quartic(HultenParams(omega01=1.0, omega02=2.0, mu=mu))
        assert hurwitz_verdict(q_undamped).label.value == "MarginallyStable"
        q_damped = hulten_quartic(
            HultenParams(omega01=1.0, omega02=2.0, eta1=0.3, eta2=0.0, mu=mu)
        )
        assert hurwitz_verdict(q_damped).right_count > 0

    def test_proportional_damping_is_safe(self):
        # equal damping ratios scale both frequencies and keep stability
        mu = 0.675
        q = hulten_quartic(
            HultenParams(omega01=1.0, omega02=2.0, eta1=0.2, eta2=0.2, mu=mu)
        )
        v = hurwitz_verdict(q)
        assert v.is_stable

    def test_validation(self):
        with pytest.raises(DomainError):
            HultenParams(omega01=0.0, omega02=1.0)
        with pytest.raises(DomainError):
            HultenParams(omega01=1.0, omega02=1.0, eta1=-0.1)


class TestOracleCrossChecks:
    @given(
        k11=st.floats(min_value=0.5, max_value=4.0),
        k22=st.floats(min_value=0.5, max_value=4.0),
        k12=st.floats(min_value=-0.5, max_value=0.5),
        nu=st.floats(min_value=-2.0, max_value=2.0),
        delta=st.floats(min_value=0.0, max_value=1.0),
    )
    @settings(max_examples=150, deadline=None)
    def test_verdict_agrees_with_roots(self, k11, k22, k12, nu, delta):
        K = np.array([[k11, k12], [k12, k22]])
        s = SystemMatrices2(K=K, D=np.eye(2), nu=nu, delta=delta)
        q = quartic_from_system(s)
        v = hurwitz_verdict(q)
        roots = np.linalg.eigvals(first_order_matrix(s))
        scale = max(1.0, float(np.max(np.abs(roots))))
        if float(np.min(np.abs(roots.real))) < 1e-6 * scale:
            return
        expected_right = int(np.sum(roots.real > 0))
        assert v.right_count == expected_right
