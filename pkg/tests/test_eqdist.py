import numpy as np
import pytest

from estat.eqdist import (
    eqdist_test,
    eqdist_test_multivariate,
    eqdist_test_univariate,
    iter_permutation_groups,
    permutation_groups,
)
from estat.estimators import energy_distance
from estat.oracle import naive_energy


def _naive_replicates(pooled, n, B, seed):
    N = pooled.shape[0]
    out = []
    for first in iter_permutation_groups(N, n, B, seed):
        mask = np.ones(N, dtype=bool)
        mask[first] = False
        out.append(naive_energy(pooled[first], pooled[mask]))
    return np.array(out)


class TestPermutationGroups:
    def test_shape_and_order(self):
        g = permutation_groups(30, 12, 4, 7)
        assert g.shape == (12,)
        assert np.all(np.diff(g) > 0)
        assert g.min() >= 0 and g.max() < 30

    def test_counter_based(self):
        a = list(iter_permutation_groups(20, 5, 6, 3))
        np.testing.assert_array_equal(a[4], permutation_groups(20, 5, 4, 3))
        assert not np.array_equal(a[0], a[1])

    def test_uniform_membership(self):
        hits = np.zeros(10)
        for b in range(4000):
            hits[permutation_groups(10, 3, b, 0)] += 1
        np.testing.assert_allclose(hits / 4000, 0.3, atol=0.03)


class TestUnivariate:
    def test_naive_agreement(self, rng):
        x = rng.standard_normal(25)
        y = rng.standard_normal(30) * 1.3 + 0.2
        res = eqdist_test_univariate(x, y, 50, seed=8, keep_replicates=True)
        z = np.sort(np.concatenate((x, y)))
        naive = _naive_replicates(z[:, None], 25, 50, 8)
        np.testing.assert_allclose(res.replicates, naive, rtol=1e-10, atol=1e-13)
        assert res.statistic == pytest.approx(energy_distance(x, y), rel=1e-10)

    def test_identical_samples(self, rng):
        x = rng.standard_normal(40)
        res = eqdist_test_univariate(x, x.copy(), 199, seed=1)
        assert res.p_value == 1.0
        assert res.exceed_count == 199

    def test_separated(self, rng):
        res = eqdist_test_univariate(rng.standard_normal(50), rng.standard_normal(50) + 3, 199)
        assert res.exceed_count == 0
        assert res.p_value == 1 / 200

    def test_p_value_support(self, rng):
        res = eqdist_test_univariate(rng.standard_normal(20), rng.standard_normal(25), 99)
        assert res.permutations == 99
        assert res.p_value == (res.exceed_count + 1) / 100
        assert 1 / 100 <= res.p_value <= 1.0

    def test_deterministic(self, rng):
        x, y = rng.standard_normal(30), rng.standard_normal(35)
        a = eqdist_test_univariate(x, y, 99, seed=5, keep_replicates=True)
        b = eqdist_test_univariate(x, y, 99, seed=5, keep_replicates=True, workers=4)
        assert a.exceed_count == b.exceed_count
        np.testing.assert_array_equal(a.replicates, b.replicates)

    def test_scale_factor_irrelevant(self, rng):
        x, y = rng.standard_normal(30), rng.standard_normal(45) + 0.4
        res = eqdist_test_univariate(x, y, 99, seed=2, keep_replicates=True)
        f = 30 * 45 / 75
        assert res.exceed_count == np.count_nonzero(f * res.replicates >= f * res.statistic)

    def test_ties(self):
        x = np.array([0.0, 1.0, 1.0, 2.0, 2.0])
        y = np.array([1.0, 1.0, 2.0, 0.0, 2.0])
        res = eqdist_test_univariate(x, y, 199, seed=0, keep_replicates=True)
        # the observed split recurs among permutations and must count as exceeding
        assert res.exceed_count >= np.count_nonzero(res.replicates == res.statistic) > 0

    def test_errors(self):
        with pytest.raises(ValueError):
            eqdist_test_univariate([1.0], [1.0, 2.0], 9)
        with pytest.raises(ValueError):
            eqdist_test_univariate([1.0, 2.0], [1.0, 2.0], 0)


class TestMultivariate:
    def test_naive_agreement(self, rng):
        X = rng.standard_normal((20, 3))
        Y = rng.standard_normal((15, 3)) + 0.3
        res = eqdist_test_multivariate(X, Y, 40, seed=6, keep_replicates=True)
        naive = _naive_replicates(np.vstack((X, Y)), 20, 40, 6)
        np.testing.assert_allclose(res.replicates, naive, rtol=1e-10, atol=1e-13)
        assert res.statistic == pytest.approx(naive_energy(X, Y), rel=1e-10)

    def test_identical_samples(self, rng):
        X = rng.standard_normal((30, 2))
        assert eqdist_test_multivariate(X, X.copy(), 99).p_value == 1.0

    def test_iris(self, iris):
        res = eqdist_test(iris[:50], iris[50:100], 999, seed=0)
        assert res.exceed_count == 0
        assert res.p_value == pytest.approx(0.001)
        assert 50 * 50 / 100 * res.statistic == pytest.approx(123.5538, abs=5e-5)

    def test_power(self):
        hits = 0
        for s in range(50):
            r = np.random.default_rng(1000 + s)
            X = r.standard_normal((30, 3))
            Y = r.standard_normal((30, 3)) + 2.0
            hits += eqdist_test_multivariate(X, Y, 199, seed=s).p_value == 1 / 200
        assert hits >= 48

    def test_dispatch(self, rng):
        x, y = rng.standard_normal(20), rng.standard_normal(22)
        a = eqdist_test(x, y, 49, seed=3)
        b = eqdist_test_univariate(x, y, 49, seed=3)
        assert a == b
        with pytest.raises(ValueError):
            eqdist_test(rng.standard_normal((5, 2)), rng.standard_normal((5, 3)), 9)


@pytest.mark.slow
def test_multivariate_null_calibration():
    rejections = 0
    for s in range(200):
        r = np.random.default_rng(50_000 + s)
        X = r.standard_normal((100, 3))
        Y = r.standard_normal((100, 3))
        rejections += eqdist_test_multivariate(X, Y, 199, seed=s).p_value <= 0.05
    assert 0.02 <= rejections / 200 <= 0.09
