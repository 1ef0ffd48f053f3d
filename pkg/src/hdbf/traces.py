"""Trace functionals of the two sample covariance matrices.

Every data-side trace is computed from n x n Gram matrices of the centered
observations, so cost is O(n^2 p) and no p x p matrix is ever formed. The
real-data use case has p around 20,000 with n under 100.
"""
from dataclasses import dataclass

import numpy as np

from .errors import DataValidationError, EstimatorUndefinedError

__all__ = [
    "TwoSampleData",
    "TraceSummary",
    "PopulationTraces",
    "center_and_means",
    "trace_summary",
    "trace_functionals_population",
]


@dataclass(frozen=True)
class TwoSampleData:
    """Two observation matrices, rows are observations and columns variables.

    Groups need at least two rows here (one for ``center_and_means``); the
    unbiased trace estimators additionally need three, which
    :func:`trace_summary` enforces.
    """

    x1: np.ndarray
    x2: np.ndarray

    def __post_init__(self):
        x1 = _as_matrix(self.x1, "x1")
        x2 = _as_matrix(self.x2, "x2")
        if x1.shape[1] != x2.shape[1]:
            raise DataValidationError(
                f"groups disagree on dimension: {x1.shape[1]} vs {x2.shape[1]} columns")
        object.__setattr__(self, "x1", x1)
        object.__setattr__(self, "x2", x2)

    @property
    def n1(self):
        return self.x1.shape[0]

    @property
    def n2(self):
        return self.x2.shape[0]

    @property
    def n(self):
        return self.n1 + self.n2

    @property
    def p(self):
        return self.x1.shape[1]

    def swapped(self):
        return TwoSampleData(self.x2, self.x1)


def _as_matrix(x, name):
    try:
        arr = np.array(x, dtype=float)
    except (TypeError, ValueError) as exc:
        raise DataValidationError(f"{name}: not a numeric matrix ({exc})") from None
    if arr.ndim == 1:
        arr = arr[:, None]
    if arr.ndim != 2:
        raise DataValidationError(f"{name}: expected a 2-D matrix, got {arr.ndim} dimensions")
    if arr.shape[0] < 2:
        raise DataValidationError(f"{name}: need at least 2 observations, got {arr.shape[0]}")
    if arr.shape[1] < 1:
        raise DataValidationError(f"{name}: need at least 1 variable")
    if not np.all(np.isfinite(arr)):
        raise DataValidationError(f"{name}: contains non-finite entries")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class TraceSummary:
    n1: int
    n2: int
    tr_s1: float
    tr_s2: float
    tr_s1sq: float
    tr_s2sq: float
    tr_cross: float
    u_tr2_s1: float
    u_tr2_s2: float
    u_trsq_s1: float
    u_trsq_s2: float
    tr_omega: float
    u_tr2_omega: float
    u_trsq_omega: float

    @property
    def n(self):
        return self.n1 + self.n2


def center_and_means(data):
    """Group means and column-centered copies of both groups."""
    if not isinstance(data, TwoSampleData):
        data = TwoSampleData(*data)
    mean1 = data.x1.mean(axis=0)
    mean2 = data.x2.mean(axis=0)
    return mean1, mean2, data.x1 - mean1, data.x2 - mean2


def _unbiased(n, tr_s, tr_ssq):
    # unbiased estimates of tr^2(Sigma) and tr(Sigma^2) from sample traces
    c = (n - 2.0) * (n + 1.0)
    u_tr2 = (n - 1.0) * n / c * (tr_s * tr_s - 2.0 * tr_ssq / n)
    u_trsq = (n - 1.0) ** 2 / c * (tr_ssq - tr_s * tr_s / (n - 1.0))
    return u_tr2, u_trsq


def trace_summary(data, centered=None):
    """All trace functionals needed by the three tests.

    ``centered`` may pass the ``(xc1, xc2)`` pair from an earlier
    :func:`center_and_means` call to avoid recentering.
    """
    if not isinstance(data, TwoSampleData):
        data = TwoSampleData(*data)
    n1, n2 = data.n1, data.n2
    if n1 < 3 or n2 < 3:
        raise EstimatorUndefinedError(
            f"unbiased trace estimators need n_i >= 3, got n1={n1}, n2={n2}")
    if centered is None:
        _, _, xc1, xc2 = center_and_means(data)
    else:
        xc1, xc2 = centered

    g1 = xc1 @ xc1.T
    g2 = xc2 @ xc2.T
    cross = xc1 @ xc2.T
    tr_s1 = float(np.trace(g1)) / (n1 - 1)
    tr_s2 = float(np.trace(g2)) / (n2 - 1)
    tr_s1sq = float(np.einsum("ij,ij->", g1, g1)) / (n1 - 1) ** 2
    tr_s2sq = float(np.einsum("ij,ij->", g2, g2)) / (n2 - 1) ** 2
    tr_cross = float(np.einsum("ij,ij->", cross, cross)) / ((n1 - 1) * (n2 - 1))

    u_tr2_s1, u_trsq_s1 = _unbiased(n1, tr_s1, tr_s1sq)
    u_tr2_s2, u_trsq_s2 = _unbiased(n2, tr_s2, tr_s2sq)

    n = n1 + n2
    w1, w2 = n2 / n, n1 / n
    tr_omega = w1 * tr_s1 + w2 * tr_s2
    u_tr2_omega = w1 * w1 * u_tr2_s1 + 2.0 * w1 * w2 * tr_s1 * tr_s2 + w2 * w2 * u_tr2_s2
    u_trsq_omega = w1 * w1 * u_trsq_s1 + 2.0 * w1 * w2 * tr_cross + w2 * w2 * u_trsq_s2

    return TraceSummary(
        n1=n1, n2=n2,
        tr_s1=tr_s1, tr_s2=tr_s2,
        tr_s1sq=tr_s1sq, tr_s2sq=tr_s2sq, tr_cross=tr_cross,
        u_tr2_s1=u_tr2_s1, u_tr2_s2=u_tr2_s2,
        u_trsq_s1=u_trsq_s1, u_trsq_s2=u_trsq_s2,
        tr_omega=tr_omega, u_tr2_omega=u_tr2_omega, u_trsq_omega=u_trsq_omega,
    )


@dataclass(frozen=True)
class PopulationTraces:
    """Population counterparts of :class:`TraceSummary` for explicit covariances."""

    n1: int
    n2: int
    tr_sigma1: float
    tr_sigma2: float
    tr_sigma1_sq: float
    tr_sigma2_sq: float
    tr_sigma1_cu: float
    tr_sigma2_cu: float
    tr_cross: float
    tr_omega: float
    tr_omega_sq: float
    tr_omega_cu: float

    @property
    def n(self):
        return self.n1 + self.n2


def trace_functionals_population(sigma1, sigma2, n1, n2):
    """Traces of Sigma_i, Sigma_i^2, Sigma_i^3, Sigma_1 Sigma_2 and of Omega_n powers.

    Omega_n = (n2/n) Sigma_1 + (n1/n) Sigma_2. Explicit p x p matrices are
    used, so this is meant for moderate p only.
    """
    s1 = np.asarray(sigma1, dtype=float)
    s2 = np.asarray(sigma2, dtype=float)
    if s1.ndim != 2 or s1.shape[0] != s1.shape[1]:
        raise DataValidationError(f"sigma1 must be square, got shape {s1.shape}")
    if s2.shape != s1.shape:
        raise DataValidationError(f"sigma shapes differ: {s1.shape} vs {s2.shape}")
    if n1 < 2 or n2 < 2:
        raise DataValidationError(f"group sizes must be at least 2, got {n1}, {n2}")
    n = n1 + n2
    omega = (n2 / n) * s1 + (n1 / n) * s2
    s1sq, s2sq, osq = s1 @ s1, s2 @ s2, omega @ omega
    return PopulationTraces(
        n1=n1, n2=n2,
        tr_sigma1=float(np.trace(s1)),
        tr_sigma2=float(np.trace(s2)),
        tr_sigma1_sq=float(np.trace(s1sq)),
        tr_sigma2_sq=float(np.trace(s2sq)),
        tr_sigma1_cu=float(np.einsum("ij,ji->", s1sq, s1)),
        tr_sigma2_cu=float(np.einsum("ij,ji->", s2sq, s2)),
        tr_cross=float(np.einsum("ij,ji->", s1, s2)),
        tr_omega=float(np.trace(omega)),
        tr_omega_sq=float(np.trace(osq)),
        tr_omega_cu=float(np.einsum("ij,ji->", osq, omega)),
    )
