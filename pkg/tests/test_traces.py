import math

import numpy as np
import pytest

from hdbf.errors import DataValidationError, EstimatorUndefinedError
from hdbf.traces import (TwoSampleData, center_and_means, trace_functionals_population,
                         trace_summary)

from conftest import random_data, random_orthogonal

FIELDS = ["tr_s1", "tr_s2", "tr_s1sq", "tr_s2sq", "tr_cross", "u_tr2_s1", "u_tr2_s2",
          "u_trsq_s1", "u_trsq_s2", "tr_omega", "u_tr2_omega", "u_trsq_omega"]


def explicit_traces(data):
    s1 = np.cov(data.x1, rowvar=False).reshape(data.p, data.p)
    s2 = np.cov(data.x2, rowvar=False).reshape(data.p, data.p)
    return {"tr_s1": np.trace(s1), "tr_s2": np.trace(s2), "tr_s1sq": np.trace(s1 @ s1),
            "tr_s2sq": np.trace(s2 @ s2), "tr_cross": np.trace(s1 @ s2)}


def triangle_group():
    # three points with sample covariance exactly I_2
    c = math.sqrt(4.0 / 3.0)
    pts = np.array([[1.0, 0.0], [-0.5, math.sqrt(3) / 2], [-0.5, -math.sqrt(3) / 2]])
    return c * pts


def test_center_and_means_example():
    d = TwoSampleData([[1, 0], [0, 1]], [[0, 0], [1, 1], [2, 2]])
    m1, m2, xc1, _ = center_and_means(d)
    assert np.allclose(m1, [0.5, 0.5])
    assert np.allclose(m2, [1, 1])
    assert np.allclose(xc1, [[0.5, -0.5], [-0.5, 0.5]])


def test_center_constant_column_and_sums(rng):
    x = rng.standard_normal((5, 3))
    x[:, 1] = 4.2
    _, _, xc1, _ = center_and_means(TwoSampleData(x, rng.standard_normal((4, 3))))
    assert np.all(xc1[:, 1] == 0.0)
    assert np.all(np.abs(xc1.sum(axis=0)) < 1e-12)


def test_validation():
    with pytest.raises(DataValidationError):
        TwoSampleData([[1.0, np.nan], [0, 1]], [[0, 0], [1, 1]])
    with pytest.raises(DataValidationError):
        TwoSampleData([[1.0, 2.0]], [[0, 0], [1, 1]])
    with pytest.raises(DataValidationError):
        TwoSampleData(np.ones((3, 2)), np.ones((3, 4)))
    with pytest.raises(EstimatorUndefinedError):
        trace_summary(TwoSampleData(np.eye(2), np.ones((5, 2))))


def test_hand_example_identity_covariance():
    g = triangle_group()
    assert np.allclose(np.cov(g, rowvar=False), np.eye(2))
    ts = trace_summary(TwoSampleData(g, g + 1.0))
    assert ts.tr_s1 == pytest.approx(2.0)
    assert ts.tr_s1sq == pytest.approx(2.0)
    assert ts.u_trsq_s1 == pytest.approx(0.0, abs=1e-12)
    assert ts.u_tr2_s1 == pytest.approx(4.0)


def test_identical_groups_cross_equals_square(rng):
    x = rng.standard_normal((6, 4))
    ts = trace_summary(TwoSampleData(x, x))
    assert ts.tr_cross == pytest.approx(ts.tr_s1sq, rel=1e-13)


@pytest.mark.parametrize("shape", [(3, 3, 1), (5, 8, 4), (12, 7, 60), (20, 25, 200)])
def test_gram_matches_explicit(rng, shape):
    data = random_data(rng, *shape)
    ts = trace_summary(data)
    for k, v in explicit_traces(data).items():
        assert getattr(ts, k) == pytest.approx(v, rel=1e-10)


def test_invariants(rng):
    for _ in range(20):
        n1, n2, p = rng.integers(3, 15), rng.integers(3, 15), rng.integers(1, 30)
        data = random_data(rng, n1, n2, p)
        ts = trace_summary(data)
        assert ts.tr_s1sq >= ts.tr_s1 ** 2 / min(n1 - 1, p) * (1 - 1e-12)
        assert ts.tr_s2sq >= ts.tr_s2 ** 2 / min(n2 - 1, p) * (1 - 1e-12)
        n = n1 + n2
        assert ts.tr_omega == pytest.approx(n2 / n * ts.tr_s1 + n1 / n * ts.tr_s2, rel=1e-12)
        for k in ("tr_s1", "tr_s2", "tr_s1sq", "tr_s2sq", "tr_cross"):
            assert getattr(ts, k) >= 0


def test_rotation_invariance(rng):
    data = random_data(rng, 9, 14, 12)
    q = random_orthogonal(rng, 12)
    a, b = trace_summary(data), trace_summary(TwoSampleData(data.x1 @ q, data.x2 @ q))
    for k in FIELDS:
        assert getattr(b, k) == pytest.approx(getattr(a, k), rel=1e-8)


def test_scale_equivariance(rng):
    data = random_data(rng, 8, 11, 6)
    c = 2.7
    a, b = trace_summary(data), trace_summary(TwoSampleData(c * data.x1, c * data.x2))
    for k in FIELDS:
        power = 2 if k in ("tr_s1", "tr_s2", "tr_omega") else 4
        assert getattr(b, k) == pytest.approx(c ** power * getattr(a, k), rel=1e-12)


def test_precomputed_centering_is_used(rng):
    data = random_data(rng, 5, 6, 3)
    _, _, xc1, xc2 = center_and_means(data)
    assert trace_summary(data, centered=(xc1, xc2)) == trace_summary(data)


def test_unbiasedness_monte_carlo():
    rng = np.random.default_rng(77)
    reps, p = 1000, 50
    vals = np.empty(reps)
    tr2 = np.empty(reps)
    for r in range(reps):
        ts = trace_summary(TwoSampleData(rng.standard_normal((30, p)), rng.standard_normal((50, p))))
        vals[r] = ts.u_trsq_s1
        tr2[r] = ts.u_tr2_s1
    se = vals.std(ddof=1) / math.sqrt(reps)
    assert abs(vals.mean() - p) < 3 * se
    se2 = tr2.std(ddof=1) / math.sqrt(reps)
    assert abs(tr2.mean() - p * p) < 4 * se2


# -- population traces ------------------------------------------------------------------

def test_population_identity():
    pt = trace_functionals_population(np.eye(7), np.eye(7), 10, 20)
    assert (pt.tr_omega, pt.tr_omega_sq, pt.tr_omega_cu) == pytest.approx((7, 7, 7))


def test_population_compound_symmetry():
    p, s2, rho = 50, 2.0, 0.5
    sigma = s2 * ((1 - rho) * np.eye(p) + rho * np.ones((p, p)))
    pt = trace_functionals_population(sigma, sigma, 40, 40)
    assert pt.tr_sigma1 == pytest.approx(100.0)
    assert pt.tr_sigma1_sq == pytest.approx(51 ** 2 + 49 * 1 ** 2)
    assert pt.tr_sigma1_sq == pytest.approx(2650.0)


def test_population_omega_weights():
    pt = trace_functionals_population(np.eye(2), 2 * np.eye(2), 30, 50)
    assert pt.tr_omega == pytest.approx(2.75)
    assert pt.tr_omega_sq == pytest.approx(2 * 1.375 ** 2)


def test_population_dimension_mismatch():
    with pytest.raises(DataValidationError):
        trace_functionals_population(np.eye(2), np.eye(3), 5, 5)
