"""Frozen reference values for each operation, one small case per behaviour."""

import math
from fractions import Fraction

import numpy as np
import pytest

from motzkin_lab.convergence import (
    kolmogorov_distance,
    local_law_residual,
    moment_fit,
    rate_estimate,
    tv_distance_geometric,
)
from motzkin_lab.gf import Model, base_series, gf_pmf, model_jet, signs_bridge_pmf_series
from motzkin_lab.laws import Geometric, HalfNormal, Rayleigh, half_normal_moments, local_law_density
from motzkin_lab.paths import PathFamily, Statistic, count_family, exhaustive_listing, listing_family
from motzkin_lab.paths import path_statistics, pmf_exact
from motzkin_lab.sampler import SampleConfig, _block_steps, empirical_pmf, sample_walk
from motzkin_lab.series import TruncatedSeries, UJet, ujet_reciprocal
from motzkin_lab.steps import StepWeights, kernel_roots, structural_constants, u1_series

UNIT = StepWeights(1, 1, 1)


class TestStepModel:
    def test_drifts(self):
        assert UNIT.drift == 0 and StepWeights(1, 1, 2).drift == 1

    def test_zero_flat_weight(self):
        with pytest.raises(ValueError, match="p_zero must be positive"):
            StepWeights(1, 0, 1)

    def test_unit_constants(self):
        sc = structural_constants(UNIT)
        assert (sc.tau, sc.rho_one, sc.drift, sc.p_one, sc.p_dd_one) == (1, Fraction(1, 3), 0, 3, 2)
        assert sc.big_c == pytest.approx(math.sqrt(3), rel=1e-14)

    def test_quarter_drift_constants(self):
        sc = structural_constants(StepWeights(1, 1, 4))
        assert sc.tau_exact.rational() == Fraction(1, 2)
        assert sc.rho_exact.rational() == Fraction(1, 5)

    def test_rho_one_below_rho(self):
        sc = structural_constants(StepWeights(1, 1, 2))
        assert float(sc.rho_one) == 0.25 < sc.rho == pytest.approx(1 / (1 + 2 * math.sqrt(2)))

    def test_unit_roots(self):
        u1, u2 = kernel_roots(UNIT, 0.1)
        assert u1 * u2 == pytest.approx(1, rel=1e-14)
        assert u1 + u2 == pytest.approx(9, rel=1e-14)
        assert kernel_roots(UNIT, 1 / 3 - 1e-12)[0] == pytest.approx(1, abs=1e-5)

    def test_root_residual(self):
        w = StepWeights(1, 1, 4)
        u1, _ = kernel_roots(w, 0.05)
        assert abs(1 - 0.05 * float(w.jump(u1))) < 1e-12

    def test_u1_series_values(self):
        u = u1_series(UNIT, 6)
        assert list(u) == [0, 1, 1, 2, 4, 9, 21]
        for triple in [(1, 2, 3), (5, 1, 1)]:
            assert u1_series(StepWeights(*triple), 5)[0] == 0
        long = u1_series(UNIT, 80).to_float()
        assert long.evaluate(0.1) == pytest.approx(kernel_roots(UNIT, 0.1)[0], abs=1e-10)


class TestSeriesCore:
    def test_inverse_pair(self):
        s = TruncatedSeries.geometric(1, 12) * TruncatedSeries.polynomial([1, -1], 12)
        assert s == TruncatedSeries.one(12)

    def test_walk_series(self):
        assert list(TruncatedSeries.geometric(UNIT.p_one, 6)) == [3 ** n for n in range(7)]

    def test_division_by_zero_constant(self):
        with pytest.raises(ZeroDivisionError):
            TruncatedSeries.one(4) / TruncatedSeries.polynomial([0, 1], 4)

    def test_square_roots(self):
        assert TruncatedSeries.one(5).sqrt() == TruncatedSeries.one(5)
        assert TruncatedSeries.polynomial([1, -2, 1], 6).sqrt() == TruncatedSeries.polynomial([1, -1], 6)

    def test_derivatives(self):
        assert list(TruncatedSeries.polynomial([1, 1, 1], 4).derivative()) == [1, 2, 0, 0]
        assert list(TruncatedSeries.constant(7, 4).derivative()) == [0, 0, 0, 0]

    def test_bridge_series(self):
        b = base_series(UNIT, 6).B
        assert list(b) == [1, 1, 3, 7, 19, 51, 141]

    def test_jets(self):
        one = UJet.constant(TruncatedSeries.one(6))
        assert ujet_reciprocal(one) == one
        base = base_series(UNIT, 10)
        jet = model_jet(Model.RETURNS_WALK, base)
        assert jet.at_one() == base.W


class TestPathEnumerator:
    def test_walk_count(self):
        assert count_family(UNIT, 5, "walk") == 243

    def test_height_length_one(self):
        assert pmf_exact(UNIT, 1, "height", "walk").weights == {0: 2, 1: 1}

    def test_bridge_sign_changes_length_three(self):
        pmf = pmf_exact(UNIT, 3, "sign_changes", "bridge")
        brute = {}
        for rec in exhaustive_listing(UNIT, 3):
            if PathFamily.BRIDGE in listing_family(rec.steps):
                k = rec.stats[Statistic.SIGNS]
                brute[k] = brute.get(k, 0) + 1
        assert pmf.total == 7 and pmf.weights == brute
        # a crossing needs altitudes 1, 0, -1, 0: no bridge of length 3 has one
        assert pmf.weights == {0: 7}
        assert pmf_exact(UNIT, 4, "sign_changes", "bridge").weights == {0: 17, 1: 2}

    def test_empty_path(self):
        assert set(path_statistics(()).values()) == {0}
        assert len(list(exhaustive_listing(UNIT, 0))) == 1
        assert len(list(exhaustive_listing(UNIT, 2))) == 9

    def test_crossing_then_zero(self):
        # altitudes 1, 0, -1, 0: one change, the final 0 is neutral
        assert path_statistics((1, -1, -1, 1))[Statistic.SIGNS] == 1


class TestGFModels:
    def test_unit_families(self):
        b = base_series(UNIT, 6)
        assert list(b.E) == [1, 1, 2, 4, 9, 21, 51]
        assert list(b.M)[:6] == [1, 2, 5, 13, 35, 96]

    @pytest.mark.parametrize("triple", [(1, 1, 1), (1, 2, 3), (3, 1, 2)])
    def test_arches(self, triple):
        b = base_series(StepWeights(*triple), 12)
        assert b.A[0] == 0 and b.A == 1 - 1 / b.B

    @pytest.mark.parametrize("model", list(Model))
    def test_telescoping(self, model):
        w = StepWeights(1, 2, 3)
        b = base_series(w, 15)
        for n in range(16):
            pmf = gf_pmf(model, b, n)
            assert sum(pmf.weights.values()) == pmf.total
            if model.family is PathFamily.WALK:
                assert pmf.total == w.p_one ** n

    def test_small_cases(self):
        b = base_series(UNIT, 4)
        assert gf_pmf(Model.RETURNS_WALK, b, 0).weights == {0: 1}
        assert signs_bridge_pmf_series(b, 0)[1] == 1
        assert gf_pmf(Model.SIGNS_WALK, b, 1).weights == {0: 3}
        assert gf_pmf(Model.HEIGHT_WALK, b, 1).weights == {0: 2, 1: 1}
        assert list(sum((signs_bridge_pmf_series(b, k) for k in range(5)),
                        TruncatedSeries.zero(4))) == [1, 1, 3, 7, 19]

    @pytest.mark.parametrize("model", list(Model))
    def test_jet_totals(self, model):
        b = base_series(StepWeights(1, 1, 2), 20)
        assert model_jet(model, b).j0 == b.family_total(model.family)

    def test_height_means_exact(self):
        w = StepWeights(1, 1, 2)
        jet = model_jet(Model.HEIGHT_WALK, base_series(w, 40))
        for n in (1, 10, 25, 40):
            assert jet.mean(n) == pmf_exact(w, n, "height", "walk").mean()


class TestLimitLaws:
    def test_table_values(self):
        assert HalfNormal(1).mean == pytest.approx(math.sqrt(2 / math.pi))
        assert Rayleigh(0.7).cdf(0) == 0
        assert all(Geometric(Fraction(1, 4)).pmf(k) == pytest.approx(0.75 ** k * 0.25)
                   for k in range(10))

    def test_leading_moments(self):
        sigma = math.sqrt(1.5)
        mean, var = half_normal_moments(sigma, 10 ** 4)
        assert mean == pytest.approx(97.72, abs=0.01)
        exact = moment_fit(Model.RETURNS_WALK, UNIT, [10 ** 4])[0].mean
        assert exact / mean == pytest.approx(1, abs=0.02)
        assert half_normal_moments(sigma, 400)[0] / half_normal_moments(sigma, 100)[0] == pytest.approx(2)
        assert var / mean ** 2 == pytest.approx(math.pi / 2 - 1)

    def test_local_density(self):
        assert local_law_density(1.3, 50, 0) == pytest.approx(math.sqrt(2 / (math.pi * 50)) / 1.3)
        d = [local_law_density(1.0, 100, k) for k in range(0, 60)]
        assert all(a > b for a, b in zip(d, d[1:]))

    def test_local_residual_is_order_one_over_n(self):
        base = base_series(UNIT, 2000, numeric=True)
        r = local_law_residual(gf_pmf(Model.RETURNS_WALK, base, 2000), math.sqrt(1.5))
        assert 0.05 < 2000 * r < 1


class TestConvergenceLab:
    def test_discretised_law(self):
        g = Geometric(0.3)
        probs = [g.pmf(k) for k in range(150)]
        assert kolmogorov_distance(probs, g, n=150) < 1e-15
        assert tv_distance_geometric(probs, 0.3) < 1e-15

    def test_distance_shrinks(self):
        base = base_series(UNIT, 1600, numeric=True)
        law = HalfNormal(math.sqrt(1.5))
        k = [kolmogorov_distance(gf_pmf(Model.RETURNS_WALK, base, n), law) for n in (400, 1600)]
        assert k[1] < k[0]

    def test_geometric_trend(self):
        w = StepWeights(1, 1, 2)
        base = base_series(w, 1000, numeric=True)
        tv = [tv_distance_geometric(gf_pmf(Model.RETURNS_WALK, base, n), 0.25) for n in (100, 300, 1000)]
        assert tv[0] > tv[1] > tv[2] and tv[2] < 0.01

    def test_moment_ratio_trend(self):
        rows = moment_fit(Model.RETURNS_WALK, UNIT, [500, 2000, 5000])
        errs = [abs(r.mean_ratio - 1) for r in rows]
        assert errs[0] > errs[1] > errs[2] and errs[2] < 0.02

    def test_rate_exponents(self):
        assert rate_estimate([(n, n ** -0.5) for n in (10, 100, 1000)]) == pytest.approx(-0.5, abs=0.01)
        base = base_series(UNIT, 3200, numeric=True)
        law = HalfNormal(math.sqrt(1.5))
        pts = [(n, kolmogorov_distance(gf_pmf(Model.RETURNS_WALK, base, n), law))
               for n in (400, 800, 1600, 3200)]
        assert rate_estimate(pts) == pytest.approx(-0.5, abs=0.05)
        w = StepWeights(1, 1, 2)
        gb = base_series(w, 200, numeric=True)
        gpts = [(n, tv_distance_geometric(gf_pmf(Model.RETURNS_WALK, gb, n), 0.25))
                for n in (50, 100, 200)]
        assert rate_estimate(gpts) < -1


class TestSampler:
    def test_step_frequencies(self):
        cfg = SampleConfig(UNIT, 1000, 1000, seed=99)
        steps = _block_steps(cfg, 0).ravel()
        m = steps.size
        band = 3 * math.sqrt(m * (1 / 3) * (2 / 3))
        for s in (-1, 0, 1):
            assert abs(np.count_nonzero(steps == s) - m / 3) < band

    def test_empty_walk(self):
        path, stats = sample_walk(SampleConfig(UNIT, 0, 1), 0)
        assert path == () and set(stats.values()) == {0}

    def test_single_rep_is_point_mass(self):
        emp = empirical_pmf(SampleConfig(UNIT, 30, 1, seed=3), "height")
        assert len(emp.weights) == 1 and emp.total == 1
