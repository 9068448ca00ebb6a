import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from powchar.characterization import (
    CONSISTENT, INCONSISTENT, estimate_alpha, gof_blocks, power_gof, sample_maxima_chain,
    verify_identity_mc, verify_identity_numeric, verify_maxima_chain,
)
from powchar.distributions import expshape, pareto, power, sample, sinshape, uniform
from powchar.errors import DomainError, InsufficientDataError
from powchar.ks import ks_2samp, ks_2samp_critical, ks_coefficient
from powchar.quadrature import QuadratureConfig
from powchar.rng import McConfig

from conftest import SEEDS

N = 10**5


class TestKs:
    def test_coefficients(self):
        assert ks_coefficient(0.05) == pytest.approx(1.358, abs=5e-4)
        assert ks_coefficient(0.01) == pytest.approx(1.628, abs=5e-4)
        assert ks_2samp_critical(0.05, N, N) == pytest.approx(ks_coefficient(0.05) * math.sqrt(2 / N))

    def test_two_sample_matches_scipy(self):
        from scipy import stats

        rng = np.random.default_rng(4)
        a, b = rng.random(700), rng.random(900) ** 1.1
        assert ks_2samp(a, b)[0] == pytest.approx(stats.ks_2samp(a, b).statistic, abs=1e-15)

    def test_ties_use_right_continuous_steps(self):
        a = np.array([0.1, 0.2, 0.2, 0.3])
        b = np.array([0.2, 0.2, 0.2, 0.4])
        # after 0.2: A = 3/4, B = 3/4; after 0.1: A = 1/4, B = 0; after 0.3: 1 vs 3/4
        assert ks_2samp(a, b)[0] == pytest.approx(0.25)

    def test_identical_samples(self):
        x = np.random.default_rng(0).random(50)
        assert ks_2samp(x, x)[0] == 0.0


class TestNumeric:
    def test_uniform_min_of_two(self):
        r = verify_identity_numeric(power(1), 1, 2, 101)
        assert r.sup_distance <= 1e-8 and r.verdict == CONSISTENT

    def test_power_three_of_six(self):
        assert verify_identity_numeric(power(2.5), 3, 6, 101).consistent

    def test_sin_control(self):
        r = verify_identity_numeric(sinshape(), 1, 3, 101)
        assert r.sup_distance > 1e-3 and r.verdict == INCONSISTENT
        assert r.sup_distance == pytest.approx(0.11234109390000813, abs=1e-9)  # scipy brute force
        x, lhs, rhs = r.diagnostics[0]
        assert abs(lhs - rhs) == pytest.approx(r.sup_distance)

    def test_alpha_invariant_verdict(self):
        verdicts = {verify_identity_numeric(power(a), 2, 5, 101).verdict for a in (0.3, 1, 2, 5)}
        assert verdicts == {CONSISTENT}

    def test_converse_for_controls(self, control):
        best = max(verify_identity_numeric(control, k, n, 101).sup_distance
                   for n in range(2, 5) for k in range(1, n))
        assert best >= 1e-3

    def test_threshold_follows_tolerance(self):
        r = verify_identity_numeric(power(2), 1, 2, 32, QuadratureConfig(abs_tol=1e-7))
        assert r.threshold == pytest.approx(1e-5)

    def test_errors(self):
        with pytest.raises(DomainError):
            verify_identity_numeric(power(2), 1, 2, 10)
        with pytest.raises(DomainError):
            verify_identity_numeric(pareto(2), 1, 2)
        with pytest.raises(DomainError):
            verify_identity_numeric(power(2), 3, 3)


class TestMonteCarlo:
    def test_independent_substreams(self):
        r1 = verify_identity_mc(power(1), 1, 2, McConfig(N, 3))
        r2 = verify_identity_mc(power(1), 1, 2, McConfig(N, 3))
        assert r1.to_dict() == r2.to_dict()
        assert r1.ks_critical == pytest.approx(ks_coefficient(0.05) * math.sqrt(2 / N))

    @pytest.mark.slow
    @pytest.mark.parametrize("alpha,k,n", [(1, 1, 2), (3, 2, 5)])
    def test_power_accepted(self, alpha, k, n):
        ok = sum(verify_identity_mc(power(alpha), k, n, McConfig(N, s)).consistent for s in SEEDS)
        assert ok >= 18

    @pytest.mark.slow
    def test_control_rejected(self):
        bad = sum(not verify_identity_mc(expshape(), 1, 3, McConfig(N, s)).consistent for s in SEEDS)
        assert bad >= 18

    def test_requires_replicates(self):
        with pytest.raises(DomainError):
            verify_identity_mc(power(1), 1, 2, McConfig(50))


class TestMaximaChain:
    def test_uniform_minimum_of_four(self):
        assert verify_maxima_chain(uniform(), 1, 4, McConfig(N, 1)).consistent

    def test_power_two_of_five(self):
        assert verify_maxima_chain(power(2), 2, 5, McConfig(N, 2)).consistent

    def test_single_factor(self):
        r = verify_maxima_chain(sinshape(), 3, 3, McConfig(1000, 9))
        assert r.consistent

    def test_chain_sample_uses_one_stream_per_factor(self):
        cfg = McConfig(10, 5)
        a = sample_maxima_chain(power(1), 2, 4, cfg)
        b = sample_maxima_chain(power(1), 3, 4, cfg)
        # dropping the first factor leaves the remaining factors unchanged
        from powchar.order_stats import OrderStatisticLaw, sample_os

        np.testing.assert_allclose(a, b * sample_os(OrderStatisticLaw(2, 2, power(1)), cfg, 1, 2))


class TestEstimateAlpha:
    def test_examples(self):
        assert estimate_alpha([math.exp(-1)] * 2) == pytest.approx(1.0)
        assert estimate_alpha([math.exp(-2)] * 2) == pytest.approx(0.5)

    def test_consistency(self):
        a = estimate_alpha(sample(power(2), McConfig(N, 3)))
        assert 1.98 <= a <= 2.02
        assert abs(a - 2) <= 3 * 2 / math.sqrt(N)

    @pytest.mark.parametrize("bad", [[0.5, 1.0], [0.0], [], [0.3, -0.1]])
    def test_domain(self, bad):
        with pytest.raises((DomainError, InsufficientDataError)):
            estimate_alpha(bad)


class TestPowerGof:
    def test_insufficient(self):
        with pytest.raises(InsufficientDataError):
            power_gof(np.full(10, 0.5), 1, 3)

    def test_block_structure(self):
        x = np.arange(1, 801) / 1000.0
        lhs, rhs = gof_blocks(x, 1, 3)
        assert lhs.size == 100
        np.testing.assert_allclose(lhs[:2], [0.001, 0.009])
        np.testing.assert_allclose(rhs[:2], [0.004 * 0.008, 0.012 * 0.016])

    def test_block_cap(self):
        x = sample(power(1), McConfig(8000, 1))
        lhs, _ = gof_blocks(x, 1, 3, McConfig(500, 1))
        assert lhs.size == 500

    def test_sorted_file_is_shuffled(self):
        x = np.sort(sample(power(1.7), McConfig(N, 4)))
        assert power_gof(x, 1, 3, McConfig(2**62, 4)).consistent

    @pytest.mark.slow
    def test_examples(self):
        acc = sum(power_gof(sample(power(1.7), McConfig(N, s)), 1, 3, McConfig(2**62, s)).consistent
                  for s in SEEDS)
        rej = sum(not power_gof(sample(sinshape(), McConfig(N, s)), 1, 3, McConfig(2**62, s)).consistent
                  for s in SEEDS)
        assert acc >= 18 and rej >= 18

    @settings(deadline=None, max_examples=25)
    @given(seed=st.integers(0, 2**32), c=st.sampled_from([0.5, 2.0, 3.7]), alpha=st.floats(0.2, 5))
    def test_invariant_under_power_map(self, seed, c, alpha):
        x = sample(power(alpha), McConfig(5000, seed))
        cfg = McConfig(2**62, seed)
        r1 = power_gof(x, 1, 2, cfg)
        r2 = power_gof(x**c, 1, 2, cfg)
        assert r1.verdict == r2.verdict
        assert r1.ks_statistic == pytest.approx(r2.ks_statistic, abs=1e-12)
