"""Lacunary series core: truncation sizing, series values, operator algebra."""

import math

import numpy as np
import pytest

import levywalk as lw
from levywalk._angles import canonical_angle

from conftest import direct_double_cos_sum, ladder_angles, mp_lacunary_cs

PARAM_MATRIX = [(2, 3), (2, 4), (4, 2), (3, 2)]


class TestParams:
    def test_rejects_degenerate_A(self):
        with pytest.raises(lw.ParameterError):
            lw.WalkParams(A=1.0, b=2)
        with pytest.raises(lw.ParameterError):
            lw.WalkParams(A=1.0 + 1e-9, b=2)

    def test_rejects_bad_b(self):
        with pytest.raises(lw.ParameterError):
            lw.WalkParams(A=2.0, b=0)
        with pytest.raises(lw.ParameterError):
            lw.WalkParams(A=2.0, b=2.5)

    def test_mu(self):
        assert lw.WalkParams(A=2.0, b=4).mu() == pytest.approx(0.5)
        with pytest.raises(lw.DomainError, match="NN"):
            lw.WalkParams(A=2.0, b=1).mu()

    def test_budget_validation(self):
        with pytest.raises(lw.ParameterError):
            lw.SeriesBudget(n_terms=0)
        with pytest.raises(lw.ParameterError):
            lw.SeriesBudget(n_terms=4, series_tol=0.0)


class TestAutoTruncation:
    def test_examples(self):
        assert lw.auto_truncation(lw.WalkParams(A=2, b=1), 1e-3) == 10
        assert lw.auto_truncation(lw.WalkParams(A=4, b=1), 1e-12) == 20
        assert lw.auto_truncation(lw.WalkParams(A=3, b=1), 1.0) == 1

    def test_bound_holds(self):
        for A in (1.5, 2.0, 3.7):
            for tol in (1e-2, 1e-8, 1e-14):
                n = lw.auto_truncation(lw.WalkParams(A=A, b=1), tol)
                assert A ** -n <= tol
                assert n == 1 or A ** -(n - 1) > tol

    def test_default_budget_capped(self):
        assert lw.default_budget(lw.WalkParams(A=1.0 + 1e-5, b=2)).n_terms == 64


class TestLacunarySeries:
    def test_k_zero(self):
        p = lw.WalkParams(A=3, b=2)
        bud = lw.SeriesBudget(n_terms=25)
        C, S = lw.lacunary_cs(0.0, p, bud)
        assert C == pytest.approx(np.sum(lw.series_weights(p, 25)), abs=1e-15)
        assert S == 0.0

    def test_resummed_value_at_pi(self):
        # n = 0 gives -3/4, all higher terms +3/4 * sum 4^-n = 1/4
        p = lw.WalkParams(A=4, b=2)
        C, S = lw.lacunary_cs(np.pi, p, lw.SeriesBudget(n_terms=40))
        assert C == pytest.approx(-0.5, abs=1e-12)
        assert S == pytest.approx(0.0, abs=1e-12)

    def test_b1_at_pi(self):
        p = lw.WalkParams(A=3, b=1)
        bud = lw.SeriesBudget(n_terms=30)
        C, _ = lw.lacunary_cs(np.pi, p, bud)
        assert C == pytest.approx(-np.sum(lw.series_weights(p, 30)), abs=1e-14)

    @pytest.mark.parametrize("b,A", PARAM_MATRIX)
    def test_against_mpmath_partial_sums(self, b, A):
        p = lw.WalkParams(A=A, b=b)
        bud = lw.default_budget(p)
        for k in (0.31, -1.7, 2.9):
            C, S = lw.lacunary_cs(k, p, bud)
            C_mp, S_mp = mp_lacunary_cs(k, A, b, bud.n_terms)
            assert C == pytest.approx(C_mp, abs=5e-14)
            assert S == pytest.approx(S_mp, abs=5e-14)

    def test_parity_on_grid(self, rng):
        p = lw.WalkParams(A=3, b=2)
        ks = rng.uniform(0.0, np.pi - 1e-6, size=64)
        C1, S1 = lw.lacunary_cs(ks, p)
        C2, S2 = lw.lacunary_cs(-ks, p)
        np.testing.assert_allclose(C2, C1, atol=1e-14, rtol=0)
        np.testing.assert_allclose(S2, -S1, atol=1e-14, rtol=0)

    def test_canonicalization(self):
        p = lw.WalkParams(A=3, b=2)
        C1, S1 = lw.lacunary_cs(0.4, p)
        C2, S2 = lw.lacunary_cs(0.4 + 2 * np.pi, p)
        assert C1 == pytest.approx(C2, abs=1e-13)
        assert S1 == pytest.approx(S2, abs=1e-13)
        assert canonical_angle(np.pi) == pytest.approx(np.pi)
        assert canonical_angle(-np.pi) == pytest.approx(np.pi)

    @pytest.mark.parametrize("b,A", PARAM_MATRIX)
    def test_collapse_identity(self, b, A):
        # direct double sum over angle differences == C**2 + S**2
        p = lw.WalkParams(A=A, b=b)
        bud = lw.default_budget(p)
        ks = np.linspace(-np.pi, np.pi, 101)
        C, S = lw.lacunary_cs(ks, p, bud)
        for i in range(101):
            direct = direct_double_cos_sum(ks[i], p, bud.n_terms)
            assert direct == pytest.approx(C[i] ** 2 + S[i] ** 2, abs=1e-12)


class TestEigenenergy:
    def test_k_zero(self):
        p = lw.WalkParams(A=2, b=2, Omega=3.0)
        assert lw.eigenenergy(0.0, p) == pytest.approx(0.0, abs=1e-9)

    def test_nn_band_edge(self):
        p = lw.WalkParams(A=2, b=1, Omega=1.0)
        bud = lw.SeriesBudget(n_terms=40)
        assert lw.eigenenergy(np.pi, p, bud) == pytest.approx(2.0, abs=1e-11)

    def test_derived_value(self):
        p = lw.WalkParams(A=4, b=2, Omega=1.0)
        assert lw.eigenenergy(np.pi, p, lw.SeriesBudget(n_terms=40)) == pytest.approx(1.5, abs=1e-12)

    def test_b1_matches_closed_form(self):
        p = lw.WalkParams(A=3, b=1, Omega=2.0)
        bud = lw.SeriesBudget(n_terms=26)
        ks = np.linspace(-np.pi, np.pi, 41)
        np.testing.assert_allclose(lw.eigenenergy(ks, p, bud),
                                   2.0 * (1 - np.cos(ks)), atol=1e-10, rtol=0)


class _Bath:
    def __init__(self, hbar, omega_c):
        self.hbar = hbar
        self.omega_c = omega_c


class TestEffectiveEigenenergy:
    def test_k_zero(self):
        p = lw.WalkParams(A=3, b=2, Omega=1.0)
        bath = _Bath(1.0, 0.7)
        got = lw.effective_eigenenergy(0.0, p, bath, lw.SeriesBudget(n_terms=40))
        assert got == pytest.approx(-0.7, abs=1e-12)

    def test_b1_any_k(self):
        p = lw.WalkParams(A=2, b=1, Omega=1.0)
        bath = _Bath(1.0, 0.5)
        bud = lw.SeriesBudget(n_terms=44)
        for k in (0.3, 1.1, 2.7):
            assert lw.effective_eigenenergy(k, p, bath, bud) == pytest.approx(
                (1 - np.cos(k)) - 0.5, abs=1e-12)

    def test_derived_value_at_pi(self):
        # C(pi) = -1/2 and S(pi) = 0 for (b=2, A=4), so T = 1/4
        p = lw.WalkParams(A=4, b=2, Omega=1.0)
        bath = _Bath(1.0, 1.0)
        got = lw.effective_eigenenergy(np.pi, p, bath, lw.SeriesBudget(n_terms=40))
        assert got == pytest.approx(1.25, abs=1e-12)

    @pytest.mark.parametrize("b,A", PARAM_MATRIX)
    def test_collapse_vs_direct_double_sum(self, b, A):
        p = lw.WalkParams(A=A, b=b, Omega=1.0)
        bath = _Bath(1.0, 1.0)
        bud = lw.default_budget(p)
        for k in (0.37, -2.1):
            direct = direct_double_cos_sum(k, p, bud.n_terms)
            got = lw.effective_eigenenergy(k, p, bath, bud)
            want = lw.eigenenergy(k, p, bud) - direct
            assert got == pytest.approx(want, abs=bud.series_tol)


class TestDerivative:
    def test_k_zero_no_growth(self):
        val, flag = lw.eigenenergy_derivative(0.0, lw.WalkParams(A=2, b=4), 15)
        assert val == 0.0 and not flag

    def test_b1_closed_form(self):
        p = lw.WalkParams(A=3, b=1, Omega=1.0)
        val, flag = lw.eigenenergy_derivative(np.pi / 2, p, 26)
        assert val == pytest.approx(1.0, abs=1e-10)
        assert not flag

    def test_critical_growth_flag(self, rng):
        p = lw.WalkParams(A=2, b=4)
        ks = rng.uniform(0.1, 3.0, size=32)
        _, flags = lw.eigenenergy_derivative(ks, p, 15)
        assert np.count_nonzero(flags) > 16

    def test_smooth_no_flag(self, rng):
        p = lw.WalkParams(A=3, b=2)
        ks = rng.uniform(0.1, 3.0, size=32)
        _, flags = lw.eigenenergy_derivative(ks, p, 15)
        assert np.count_nonzero(flags) == 0


class TestPseudoMomentum:
    def test_k_zero(self):
        p = lw.WalkParams(A=3, b=2, Omega=1.0)
        assert lw.pseudo_momentum_eigenvalue(0.0, p, mass=1.0) == 0.0

    def test_b1_value(self):
        p = lw.WalkParams(A=4, b=1, Omega=1.0)
        got = lw.pseudo_momentum_eigenvalue(np.pi / 2, p, mass=2.0,
                                            budget=lw.SeriesBudget(n_terms=25))
        assert got == pytest.approx(2.0, abs=1e-12)

    def test_threshold(self):
        with pytest.raises(lw.DomainError):
            lw.pseudo_momentum_eigenvalue(0.5, lw.WalkParams(A=2, b=3), mass=1.0)


class TestShiftOperators:
    def test_b1_lowering_element(self):
        p = lw.WalkParams(A=3, b=1)
        got = lw.shift_matrix_element(5, 6, "a", p, lw.SeriesBudget(n_terms=30))
        assert got == pytest.approx(1.0, abs=1e-13)

    def test_diagonal_number_element(self):
        p = lw.WalkParams(A=3, b=2)
        got = lw.shift_matrix_element(7, 7, "a_dagger_a", p)
        assert got == pytest.approx(0.5, abs=1e-10)
        # independent truncated double-sum oracle
        bud = lw.default_budget(p)
        w = lw.series_weights(p, bud.n_terms)
        oracle = math.fsum(w[n] * w[m]
                           for n in range(bud.n_terms) for m in range(bud.n_terms)
                           if p.b ** n == p.b ** m)
        assert got == pytest.approx(oracle, abs=1e-15)

    def test_commutator_elementwise(self, rng):
        p = lw.WalkParams(A=3, b=2)
        for _ in range(20):
            l1, l2 = rng.integers(-40, 40, size=2)
            x = lw.shift_matrix_element(int(l1), int(l2), "a_dagger_a", p)
            y = lw.shift_matrix_element(int(l1), int(l2), "a_a_dagger", p)
            assert x == pytest.approx(y, abs=1e-15)

    @pytest.mark.parametrize("b,A", PARAM_MATRIX)
    def test_commutator_window(self, b, A):
        p = lw.WalkParams(A=A, b=b)
        m1 = lw.shift_matrix_window("a_dagger_a", -64, 64, p)
        m2 = lw.shift_matrix_window("a_a_dagger", -64, 64, p)
        np.testing.assert_allclose(m1, m2, atol=1e-12, rtol=0)

    def test_window_matches_elements(self):
        p = lw.WalkParams(A=2, b=2)
        mat = lw.shift_matrix_window("a", -10, 10, p)
        for l1, l2 in [(-10, -2), (0, 1), (3, 7), (5, 5)]:
            assert mat[l1 + 10, l2 + 10] == pytest.approx(
                lw.shift_matrix_element(l1, l2, "a", p), abs=1e-15)


class TestScalingRelation:
    def test_k_zero(self):
        # untruncated identity is exact; the truncated defect is w0 * A**-N
        p = lw.WalkParams(A=3, b=2)
        bud = lw.default_budget(p)
        assert lw.scaling_residual(0.0, p, bud) <= 2.0 * p.A ** -bud.n_terms

    def test_derived_instance(self):
        res = lw.scaling_residual(0.7, lw.WalkParams(A=3, b=2), lw.SeriesBudget(n_terms=30))
        assert res <= 1e-12

    @pytest.mark.parametrize("b,A", PARAM_MATRIX)
    def test_bound_on_grid(self, b, A):
        p = lw.WalkParams(A=A, b=b)
        bud = lw.default_budget(p)
        ks = np.linspace(-np.pi, np.pi, 101)
        res = lw.scaling_residual(ks, p, bud)
        assert np.max(res) <= 2.0 * A ** -bud.n_terms + 1e-13


class TestB1Degeneration:
    def test_closed_nn_forms(self):
        p = lw.WalkParams(A=3, b=1, Omega=1.0)
        bud = lw.SeriesBudget(n_terms=26)
        ks = np.linspace(-np.pi, np.pi, 31)
        np.testing.assert_allclose(lw.eigenenergy(ks, p, bud), 1 - np.cos(ks),
                                   atol=1e-10, rtol=0)
        dvals = np.array([lw.eigenenergy_derivative(k, p, 26)[0] for k in ks])
        np.testing.assert_allclose(dvals, np.sin(ks), atol=1e-10, rtol=0)
        pvals = np.array([lw.pseudo_momentum_eigenvalue(k, p, 1.0, bud) for k in ks])
        np.testing.assert_allclose(pvals, np.sin(ks), atol=1e-10, rtol=0)


class TestAngleLadder:
    @pytest.mark.parametrize("b", [2, 3, 8])
    def test_angles_match_mpmath(self, b):
        import mpmath
        k = 0.7337519
        theta = ladder_angles(k, b, 40)[:, 0]
        with mpmath.workdps(60):
            for n in range(40):
                ref = float(mpmath.fmod(mpmath.mpf(k) * (b ** n), 2 * mpmath.pi))
                d = abs(math.cos(theta[n]) - math.cos(ref))
                assert d <= 1e-14 + float(b) ** n * 2.0 ** -100
