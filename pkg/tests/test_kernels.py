import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from estat.kernels import (
    cross_pairwise_sum,
    dcov_sums,
    dvar_sums,
    joint_sums,
    pairwise_sum,
    pooled_subset_pairwise_sum,
    row_sums,
    subset_pairwise_sum,
)
from estat.oracle import distance_matrix

from conftest import assert_close


def _cross_matrix(X, Y):
    X = np.atleast_2d(np.asarray(X, float).reshape(len(X), -1))
    Y = np.atleast_2d(np.asarray(Y, float).reshape(len(Y), -1))
    return np.sqrt(((X[:, None, :] - Y[None, :, :]) ** 2).sum(axis=2))


def _matrix_gamma(X):
    A = distance_matrix(X)
    rows = A.sum(axis=1)
    return (A**2).sum(), (rows**2).sum(), A.sum()


class TestPairwiseSum:
    def test_small(self):
        assert pairwise_sum([0.0, 1.0, 3.0]) == 12.0

    def test_single_row(self):
        assert pairwise_sum([[1.0, 2.0]]) == 0.0

    def test_matches_matrix(self, rng):
        X = rng.standard_normal((60, 3))
        assert_close(pairwise_sum(X), distance_matrix(X).sum(), rel=1e-10)


class TestCrossPairwiseSum:
    def test_small(self):
        assert cross_pairwise_sum([0.0, 2.0], [1.0]) == 2.0

    def test_self_equals_pairwise(self, rng):
        X = rng.standard_normal((30, 2))
        assert_close(cross_pairwise_sum(X, X), pairwise_sum(X), rel=1e-12)

    def test_matches_matrix(self, rng):
        X = rng.standard_normal((40, 4))
        Y = rng.standard_normal((55, 4))
        assert_close(cross_pairwise_sum(X, Y), _cross_matrix(X, Y).sum(), rel=1e-10)
        assert_close(cross_pairwise_sum(Y, X), _cross_matrix(X, Y).sum(), rel=1e-10)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            cross_pairwise_sum(np.ones((3, 2)), np.ones((3, 3)))


class TestDvarSums:
    def test_two_points(self):
        g = dvar_sums([0.0, 1.0])
        assert (g.gamma1, g.row_sq, g.total) == (2.0, 2.0, 2.0)

    def test_single_row(self):
        g = dvar_sums([[3.0, 4.0, 5.0]])
        assert (g.gamma1, g.row_sq, g.total) == (0.0, 0.0, 0.0)

    def test_matches_matrix(self, rng):
        X = rng.standard_normal((80, 5))
        g = dvar_sums(X)
        g1, rsq, tot = _matrix_gamma(X)
        assert_close(g.gamma1, g1, rel=1e-10)
        assert_close(g.row_sq, rsq, rel=1e-10)
        assert_close(g.total, tot, rel=1e-10)

    def test_cauchy_schwarz(self, rng):
        X = rng.standard_normal((25, 3))
        g = dvar_sums(X)
        assert g.row_sq >= g.total**2 / 25 * (1 - 1e-12)

    def test_scale_equivariance(self, rng):
        X = rng.standard_normal((30, 2))
        g = dvar_sums(X)
        h = dvar_sums(2.5 * X)
        assert_close(h.total, 2.5 * g.total, rel=1e-12)
        assert_close(h.row_sq, 2.5**2 * g.row_sq, rel=1e-12)
        assert_close(h.gamma1, 2.5**2 * g.gamma1, rel=1e-12)


class TestDcovSums:
    def test_self_case(self):
        c = dcov_sums([0.0, 1.0], [0.0, 1.0])
        assert (c.prod, c.row_prod, c.total_a, c.total_b) == (2.0, 2.0, 2.0, 2.0)

    def test_single_observation(self):
        c = dcov_sums([[1.0]], [[2.0, 3.0]])
        assert (c.prod, c.row_prod, c.total_a, c.total_b) == (0.0, 0.0, 0.0, 0.0)

    def test_matches_matrix(self, rng):
        X = rng.standard_normal((70, 3))
        Y = rng.standard_normal((70, 6))
        c = dcov_sums(X, Y)
        A, B = distance_matrix(X), distance_matrix(Y)
        assert_close(c.prod, (A * B).sum(), rel=1e-10)
        assert_close(c.row_prod, (A.sum(1) * B.sum(1)).sum(), rel=1e-10)
        assert_close(c.total_a, A.sum(), rel=1e-10)
        assert_close(c.total_b, B.sum(), rel=1e-10)

    def test_symmetry(self, rng):
        X = rng.standard_normal((20, 2))
        Y = rng.standard_normal((20, 3))
        a, b = dcov_sums(X, Y), dcov_sums(Y, X)
        assert_close(a.prod, b.prod, rel=1e-13)
        assert_close(a.row_prod, b.row_prod, rel=1e-13)
        assert (a.total_a, a.total_b) == (b.total_b, b.total_a)

    def test_self_consistency_with_dvar(self, rng):
        X = rng.standard_normal((40, 4))
        c, gx, _ = joint_sums(X, X)
        g = dvar_sums(X)
        assert c.prod == g.gamma1 or abs(c.prod - g.gamma1) <= 1e-12 * g.gamma1
        assert_close(c.row_prod, g.row_sq, rel=1e-13)
        assert_close(c.total_a, g.total, rel=1e-13)
        assert_close(gx.gamma1, g.gamma1, rel=1e-13)

    def test_unequal_n(self):
        with pytest.raises(ValueError):
            dcov_sums(np.ones((3, 1)), np.ones((4, 1)))


def test_diagonal_neutrality(rng):
    # summing over i != j and over all (i, j) agree because a_ii = 0
    X = rng.standard_normal((15, 3))
    A = distance_matrix(X)
    off = ~np.eye(15, dtype=bool)
    assert_close(A[off].sum(), A.sum(), rel=1e-14)
    assert_close(dvar_sums(X).total, A[off].sum(), rel=1e-12)


def test_subset_sums(rng):
    X = rng.standard_normal((30, 2))
    Y = rng.standard_normal((20, 2))
    idx = np.array([1, 4, 5, 17, 29])
    assert_close(subset_pairwise_sum(X, idx), pairwise_sum(X[idx]), rel=1e-12)
    pooled = np.vstack([X, Y])
    idx = np.array([0, 3, 29, 30, 41, 49])
    assert_close(pooled_subset_pairwise_sum(X, Y, idx), pairwise_sum(pooled[idx]), rel=1e-12)
    for part in ([2, 7, 11], [31, 40, 45], [33, 5, 48, 0, 21]):
        part = np.array(part)
        assert_close(pooled_subset_pairwise_sum(X, Y, part), pairwise_sum(pooled[part]), rel=1e-12)
    with pytest.raises(IndexError):
        pooled_subset_pairwise_sum(X, Y, np.array([50]))


def test_deterministic(rng):
    X = rng.standard_normal((200, 3))
    Y = rng.standard_normal((200, 2))
    assert dcov_sums(X, Y) == dcov_sums(X, Y)


@settings(max_examples=40, deadline=None)
@given(
    arrays(np.float64, st.tuples(st.integers(1, 12), st.integers(1, 3)),
           elements=st.floats(-1e3, 1e3)),
)
def test_nonnegative_and_oracle(X):
    g = dvar_sums(X)
    assert g.gamma1 >= 0 and g.row_sq >= 0 and g.total >= 0
    g1, rsq, tot = _matrix_gamma(X)
    assert abs(g.total - tot) <= 1e-10 * tot + 1e-9
    assert abs(g.gamma1 - g1) <= 1e-10 * g1 + 1e-9


def test_row_sums(rng):
    X = rng.standard_normal((60, 4))
    np.testing.assert_allclose(row_sums(X), distance_matrix(X).sum(axis=1), rtol=1e-12)
    assert row_sums(np.zeros((1, 3))).tolist() == [0.0]
