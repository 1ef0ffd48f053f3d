import numpy as np
import pytest

from hdbf.traces import TwoSampleData


@pytest.fixture
def toy():
    # n1 = 2, n2 = 3, p = 2
    return TwoSampleData([[1.0, 0.0], [0.0, 1.0]], [[2.0, 1.0], [1.0, 2.0], [0.0, 0.0]])


def random_data(rng, n1, n2, p, scale2=1.5, shift=0.0):
    x1 = rng.standard_normal((n1, p)) @ np.diag(np.linspace(0.5, 2.0, p))
    x2 = scale2 * rng.standard_normal((n2, p)) + shift
    return TwoSampleData(x1, x2)


def random_orthogonal(rng, p):
    q, r = np.linalg.qr(rng.standard_normal((p, p)))
    return q * np.sign(np.diag(r))


def random_psd(rng, p, k=None):
    a = rng.standard_normal((p, k or p + 2)) * rng.uniform(0.2, 3.0, size=p)[:, None]
    return a @ a.T / a.shape[1]


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
