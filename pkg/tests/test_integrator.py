import math

import numpy as np
import pytest
from scipy.linalg import expm
from scipy.optimize import linear_sum_assignment

import drivenwell as dw
from drivenwell.errors import DivergenceError


def multiset_distance(a, b, omega=None):
    a, b = np.asarray(a), np.asarray(b)
    if omega is None:
        cost = np.abs(np.subtract.outer(a, b))
    else:  # real parts compare on the Brillouin circle
        dre = np.subtract.outer(a.real, b.real)
        dre = np.abs(np.remainder(dre + 0.5 * omega, omega) - 0.5 * omega)
        cost = np.hypot(dre, np.abs(np.subtract.outer(a.imag, b.imag)))
    rows, cols = linear_sum_assignment(cost)
    return float(cost[rows, cols].max())


def params(lam=0.5, n=2, ratio=3.0, beta_l=0.2, beta_r=0.2, nu=1.0, omega=50.0):
    return dw.SystemParams.from_drive_ratio(nu, lam, n * omega, omega, ratio,
                                            beta_l, beta_r)


class TestConfig:
    def test_validation(self):
        with pytest.raises(ValueError):
            dw.IntegrationConfig(t_end=-1.0)
        with pytest.raises(ValueError):
            dw.IntegrationConfig(t_end=1.0, steps_per_period=32)
        with pytest.raises(ValueError):
            dw.IntegrationConfig(t_end=1.0, sample_stride=0)


class TestRhs:
    def test_linearity_in_state(self):
        p = params()
        assert np.all(dw.rhs(p, 0.3, np.zeros(4)) == 0)
        u = np.array([0.3 + 0.1j, -0.2, 0.5j, 1.0])
        v = np.array([1.0, 2.0j, -0.7, 0.1 - 0.9j])
        lhs = dw.rhs(p, 0.3, 2.0 * u - 1.5j * v)
        rhs_ = 2.0 * dw.rhs(p, 0.3, u) - 1.5j * dw.rhs(p, 0.3, v)
        assert np.allclose(lhs, rhs_, atol=1e-14)

    def test_pure_zeeman_limit(self):
        p = dw.SystemParams(0.0, 0.5, 100.0, 50.0, 0.0)
        da = dw.rhs(p, 1.7, [1.0, 0.0, 0.0, 0.0])
        assert np.allclose(da, [-1j * 50.0, 0, 0, 0])

    def test_matches_derivative_of_propagate(self):
        # Richardson-extrapolated central difference of the flow
        p = params(lam=0.3, ratio=1.2, beta_l=0.1, beta_r=0.4)
        init = dw.StateVector(np.array([0.6, 0.3j, -0.4, 0.2 + 0.2j]))
        t_eval = 0.5 * p.period

        def flow(t_end):
            cfg = dw.IntegrationConfig(t_end=t_end, steps_per_period=2048,
                                       sample_stride=10**9)
            return dw.propagate(p, init, cfg).amplitudes[-1]

        h = p.period / 2048 * 8
        d1 = (flow(t_eval + h) - flow(t_eval - h)) / (2 * h)
        d2 = (flow(t_eval + h / 2) - flow(t_eval - h / 2)) / h
        richardson = (4 * d2 - d1) / 3
        a_t = flow(t_eval)
        assert np.allclose(dw.rhs(p, t_eval, a_t), richardson, atol=1e-7)


class TestPropagate:
    def test_hermitian_norm_conservation(self):
        p = params(lam=0.5, ratio=1.0, beta_l=0.0, beta_r=0.0)
        cfg = dw.IntegrationConfig(t_end=50 * p.period, sample_stride=4)
        traj = dw.propagate(p, dw.StateVector.basis(1), cfg)
        assert np.max(np.abs(traj.total_probability - 1.0)) < 1e-8

    def test_linearity_of_the_flow(self):
        p = params(lam=0.3, ratio=2.0, beta_l=0.3, beta_r=0.1)
        cfg = dw.IntegrationConfig(t_end=3 * p.period, sample_stride=32)
        u = dw.StateVector(np.array([1.0, 0.0, 0.5j, 0.0]))
        v = dw.StateVector(np.array([0.0, 1.0, 0.0, -0.3]))
        al, be = 0.7 - 0.2j, 1.3j
        combo = dw.StateVector(al * u.a + be * v.a)
        left = dw.propagate(p, combo, cfg).amplitudes
        right = (al * dw.propagate(p, u, cfg).amplitudes
                 + be * dw.propagate(p, v, cfg).amplitudes)
        assert np.max(np.abs(left - right)) <= 1e-9 * np.max(np.abs(right))

    def test_rk4_order(self):
        # halving h shrinks the error vs a fine reference ~16x
        p = params(lam=0.4, ratio=2.0, beta_l=0.0, beta_r=0.0)
        init = dw.StateVector.basis(1)
        t_end = 2 * p.period

        def final(spp):
            cfg = dw.IntegrationConfig(t_end=t_end, steps_per_period=spp,
                                       sample_stride=10**9)
            return dw.propagate(p, init, cfg).amplitudes[-1]

        ref = final(1024)
        err_coarse = np.max(np.abs(final(128) - ref))
        err_fine = np.max(np.abs(final(256) - ref))
        assert 8.0 <= err_coarse / err_fine <= 32.0

    def test_fig1f_unbounded_growth(self):
        # the lossy-well start decays for ~16 periods before the growing mode
        # takes over; the blow-up past 10 lands just inside 50 periods
        p = params(lam=0.5, ratio=1.0, beta_l=0.6, beta_r=0.6)
        cfg = dw.IntegrationConfig(t_end=50 * p.period, sample_stride=8)
        traj = dw.propagate(p, dw.StateVector.basis(1), cfg)
        total = traj.total_probability
        assert total.max() > 10.0
        turnaround = int(np.argmin(total))
        assert np.all(np.diff(total[turnaround:]) > 0)

    def test_divergence_error_carries_time(self):
        p = params(lam=0.5, ratio=1.0, beta_l=10.0, beta_r=10.0, omega=50.0)
        cfg = dw.IntegrationConfig(t_end=50.0, sample_stride=64)
        with pytest.raises(DivergenceError) as err:
            dw.propagate(p, dw.StateVector.basis(1), cfg)
        assert 0.0 < err.value.time <= 50.0

    def test_final_time_within_one_step(self):
        p = params()
        h = p.period / 512
        cfg = dw.IntegrationConfig(t_end=1.0)
        traj = dw.propagate(p, dw.StateVector.basis(2), cfg)
        assert abs(traj.times[-1] - 1.0) < h

    def test_sampling_stride(self):
        p = params()
        cfg = dw.IntegrationConfig(t_end=p.period, sample_stride=7)
        traj = dw.propagate(p, dw.StateVector.basis(1), cfg)
        h = p.period / 512
        assert traj.times[1] == pytest.approx(7 * h)
        assert traj.times[-1] == pytest.approx(p.period)

    def test_bounded_oscillation_in_stable_even_region(self):
        # balanced even-n Case A: generalized Rabi oscillation stays in [1/10, 10]
        for lam, ratio, beta in [(0.5, 3.0, 0.2), (1.0, 1.0, 0.45), (0.8, 1.5, 0.25)]:
            p = params(lam=lam, ratio=ratio, beta_l=beta, beta_r=beta)
            c = dw.effective_couplings(p)
            assert dw.rho_even(c, beta).real < 1e-10, "chosen point must be stable"
            cfg = dw.IntegrationConfig(t_end=50 * p.period, sample_stride=16)
            total = dw.propagate(p, dw.StateVector.basis(1), cfg).total_probability
            assert np.all(total <= 10.0) and np.all(total >= 0.1)


class TestMonodromy:
    def test_identity_for_free_evolution(self):
        p = dw.SystemParams(0.0, 0.0, 0.0, 50.0, 0.0)
        U = dw.monodromy(p, dw.IntegrationConfig(t_end=1.0))
        assert np.allclose(U, np.eye(4), atol=1e-10)

    def test_unitary_in_hermitian_limit(self):
        p = params(lam=0.3, ratio=2.0, beta_l=0.0, beta_r=0.0)
        U = dw.monodromy(p, dw.IntegrationConfig(t_end=1.0))
        assert np.linalg.norm(U.conj().T @ U - np.eye(4)) < 1e-8

    def test_stable_exact_spectrum_is_contractive(self):
        # classify on the exact spectrum is the stability oracle here: any
        # point it calls stable must have Floquet multipliers inside the
        # (slightly fattened) unit circle
        rng = np.random.default_rng(5)
        pts = [params(lam=0.3, ratio=2.0, beta_l=0.0, beta_r=0.0)]
        pts += [params(lam=rng.uniform(0, 2), n=int(rng.integers(1, 3)),
                       ratio=rng.uniform(0, 4),
                       beta_l=(b := rng.uniform(0, 0.4)), beta_r=b)
                for _ in range(6)]
        seen_stable = 0
        for p in pts:
            U = dw.monodromy(p, dw.IntegrationConfig(t_end=1.0))
            exact = dw.numerical_quasienergies(U, p.omega)
            if dw.classify(exact).case.is_stable:
                seen_stable += 1
                assert np.max(np.abs(np.linalg.eigvals(U))) <= 1.0 + 1e-6
        assert seen_stable >= 1  # the Hermitian point always qualifies


class TestNumericalQuasienergies:
    def test_identity_gives_zero(self):
        E = dw.numerical_quasienergies(np.eye(4), 50.0)
        assert np.allclose(E, 0.0)

    def test_recovers_generator_of_static_model(self):
        rng = np.random.default_rng(3)
        tau = 2 * math.pi / 50.0
        for _ in range(20):
            # random complex matrix with eigenvalues inside the Brillouin zone
            m = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
            U = expm(-1j * m * tau)
            E = dw.numerical_quasienergies(U, 50.0)
            assert multiset_distance(E, np.linalg.eigvals(m)) < 1e-8

    def test_real_parts_fold_into_brillouin_zone(self):
        m = np.diag([60.0, -60.0, 10.0, 0.0]).astype(complex)
        tau = 2 * math.pi / 50.0
        E = dw.numerical_quasienergies(expm(-1j * m * tau), 50.0)
        assert np.all(E.real > -25.0) and np.all(E.real <= 25.0)
        assert multiset_distance(E, [10.0, 10.0, -10.0, 0.0]) < 1e-8

    def test_singular_monodromy_rejected(self):
        U = np.zeros((4, 4), dtype=complex)
        with pytest.raises(np.linalg.LinAlgError):
            dw.numerical_quasienergies(U, 50.0)

    def test_fig1a_stable_point_matches_closed_form(self):
        p = params(lam=0.5, ratio=3.0, beta_l=0.2, beta_r=0.2)
        U = dw.monodromy(p, dw.IntegrationConfig(t_end=1.0))
        exact = dw.numerical_quasienergies(U, p.omega)
        assert np.max(np.abs(exact.imag)) < 0.02
        analytic = dw.quasienergy_spectrum(dw.effective_couplings(p), 0.2, 0.2)
        assert multiset_distance(exact, analytic) < 0.05

    def test_odd_order_exponents_shift_by_half_zone(self):
        # anti-periodic rotating-frame phases: the exact exponents sit at the
        # closed-form values offset by omega/2
        p = params(lam=0.3, n=1, ratio=2.0, beta_l=0.2, beta_r=0.2)
        U = dw.monodromy(p, dw.IntegrationConfig(t_end=1.0))
        exact = dw.numerical_quasienergies(U, p.omega)
        raw = dw.quasienergy_spectrum(dw.effective_couplings(p), 0.2, 0.2)
        shifted = dw.canonical_exponents(raw, p.omega, 1)
        assert multiset_distance(exact, np.array(shifted), p.omega) < 0.05
        assert multiset_distance(exact, np.array(raw), p.omega) > 20.0
