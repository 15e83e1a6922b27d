"""Density of states, regime classification, box-counting dimension."""

import numpy as np
import pytest

import levywalk as lw
from levywalk.spectral import dos_nn_bin_masses, regime_from_derivative

PARAM_MATRIX = [(1, 7), (2, 3), (2, 4), (4, 2), (3, 2)]


def _l1_vs_nn(est):
    widths = np.diff(est.bin_edges)
    return float(np.sum(np.abs(est.density * widths - dos_nn_bin_masses(est.bin_edges, 1.0))))


class TestDosEstimate:
    def test_nn_matches_analytic(self):
        est = lw.dos_estimate(lw.WalkParams(A=2, b=1), n_samples=300_000,
                              n_bins=150, seed=3)
        assert est.regime == "nn"
        assert _l1_vs_nn(est) < 0.03

    def test_normalization(self):
        for b, A in [(1, 2), (2, 4), (4, 2)]:
            est = lw.dos_estimate(lw.WalkParams(A=A, b=b), n_samples=50_000,
                                  n_bins=50, seed=1)
            assert est.normalization() == pytest.approx(1.0, abs=1e-9)

    def test_regime_flags(self):
        assert lw.dos_estimate(lw.WalkParams(A=4, b=2), n_samples=20_000,
                               n_bins=40, seed=0).regime == "well_defined"
        assert lw.dos_estimate(lw.WalkParams(A=2, b=4), n_samples=20_000,
                               n_bins=40, seed=0).regime == "critical"

    def test_sample_budget_guard(self):
        with pytest.raises(lw.ParameterError):
            lw.dos_estimate(lw.WalkParams(A=2, b=1), n_samples=100, n_bins=50)

    def test_half_zone_equals_full_zone(self):
        # E_k is even in k, so sampling k > 0 alone gives the same density
        p = lw.WalkParams(A=3, b=2)
        rng = np.random.default_rng(11)
        n = 200_000
        E_full = lw.eigenenergy(rng.uniform(-np.pi, np.pi, n), p)
        E_half = lw.eigenenergy(rng.uniform(0.0, np.pi, n), p)
        edges = np.histogram_bin_edges(E_full, bins=60)
        m_full, _ = np.histogram(E_full, bins=edges)
        m_half, _ = np.histogram(E_half, bins=edges)
        l1 = np.sum(np.abs(m_full - m_half)) / n
        assert l1 < 4.0 * 60 / np.sqrt(n)  # few sigma of multinomial noise

    def test_monotone_l1_improvement(self):
        l1s = [_l1_vs_nn(lw.dos_estimate(lw.WalkParams(A=2, b=1), n_samples=n,
                                         n_bins=50, seed=5))
               for n in (10_000, 100_000, 1_000_000)]
        assert l1s[0] > l1s[1] > l1s[2]

    def test_determinism(self):
        a = lw.dos_estimate(lw.WalkParams(A=2, b=1), n_samples=20_000, n_bins=40, seed=9)
        b = lw.dos_estimate(lw.WalkParams(A=2, b=1), n_samples=20_000, n_bins=40, seed=9)
        np.testing.assert_array_equal(a.density, b.density)


class TestDosAnalytic:
    def test_midband(self):
        assert lw.dos_nn_analytic(1.0, 1.0) == pytest.approx(1.0 / np.pi)
        assert lw.dos_nn_analytic(1.5, 1.5) == pytest.approx(1.0 / (1.5 * np.pi))

    def test_integrable_edge(self):
        assert lw.dos_nn_analytic(1e-12, 1.0) > 1e4

    def test_domain(self):
        for bad in (0.0, 2.0, -0.1, 2.5):
            with pytest.raises(lw.DomainError):
                lw.dos_nn_analytic(bad, 1.0)


class TestRegime:
    def test_examples(self):
        assert lw.classify_regime(lw.WalkParams(A=7, b=1)) == "nn"
        assert lw.classify_regime(lw.WalkParams(A=3, b=2)) == "smooth"
        assert lw.classify_regime(lw.WalkParams(A=2, b=4)) == "critical"
        assert lw.classify_regime(lw.WalkParams(A=2, b=2)) == "critical"

    @pytest.mark.parametrize("b,A", PARAM_MATRIX)
    def test_agrees_with_derivative_diagnostic(self, b, A):
        p = lw.WalkParams(A=A, b=b)
        assert regime_from_derivative(p) == lw.classify_regime(p)


class TestBoxCounting:
    def test_smooth_floor(self):
        d, r2 = lw.box_counting_dimension(lw.WalkParams(A=2, b=1), k_samples=1 << 16)
        assert abs(d - 1.0) <= 0.05
        assert r2 > 0.99

    def test_critical_prediction(self):
        d, _ = lw.box_counting_dimension(lw.WalkParams(A=2, b=4), k_samples=1 << 16)
        assert abs(d - 1.5) <= 0.15

    def test_ladder_guard(self):
        with pytest.raises(lw.ParameterError):
            lw.box_counting_dimension(lw.WalkParams(A=2, b=4), k_samples=1 << 16,
                                      scale_ladder=(0.25, 0.125))
        with pytest.raises(lw.ParameterError):
            lw.box_counting_dimension(lw.WalkParams(A=2, b=4), k_samples=128)
