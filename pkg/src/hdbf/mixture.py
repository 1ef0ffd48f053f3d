"""Chi-square-type and F-type mixtures: the Gaussian null reference.

Under normality and the null, the numerator T and denominator S of the F-type
statistic are independent chi-square-type mixtures

    T* = sum_r lam_omega[r] A_r,                   A_r ~ chi2(1)
    S* = [n2/(n1-1) sum_r lam1[r] B1_r + n1/(n2-1) sum_r lam2[r] B2_r] / n,
                                                   Bi_r ~ chi2(n_i - 1)

and F* = T*/S*. This module provides their exact cumulants (leading order
for F*), the population approximation parameters and seeded samplers.

Random streams: a sampler called with ``seed`` and ``stream`` draws from
``numpy.random.default_rng(SeedSequence([seed, stream]))``. Parallel callers
should use distinct ``stream`` indices with one ``seed``.
"""
import math
from dataclasses import dataclass

import numpy as np

from . import special
from .errors import ConfigError

__all__ = [
    "MixtureSpec", "PopulationParams", "FStarCumulants", "KSResult",
    "make_rng", "population_params",
    "cumulants_T_star", "cumulants_S_star", "cumulants_F_star",
    "sample_T_star", "sample_S_star", "sample_F_star", "sample_zeta",
    "ks_statistic", "approximation_quality",
]

_CHUNK = 20_000
_NEG_TOL = 1e-10


def make_rng(seed, stream=0):
    return np.random.default_rng(np.random.SeedSequence([int(seed), int(stream)]))


def _spectrum(values, name):
    lam = np.asarray(values, dtype=float).ravel()
    if lam.size == 0:
        raise ConfigError(f"{name}: empty spectrum")
    if not np.all(np.isfinite(lam)):
        raise ConfigError(f"{name}: non-finite eigenvalues")
    scale = max(1.0, float(np.max(np.abs(lam))))
    if np.min(lam) < -_NEG_TOL * scale:
        raise ConfigError(f"{name}: negative eigenvalue {np.min(lam):.3g}")
    lam = np.clip(lam, 0.0, None)
    return np.sort(lam)[::-1].copy()


@dataclass(frozen=True)
class MixtureSpec:
    """Eigenvalue spectra of Omega_n, Sigma_1 and Sigma_2 plus group sizes."""

    lambda_omega: np.ndarray
    lambda1: np.ndarray
    lambda2: np.ndarray
    n1: int
    n2: int

    def __post_init__(self):
        if int(self.n1) < 2 or int(self.n2) < 2:
            raise ConfigError(f"group sizes must be at least 2, got {self.n1}, {self.n2}")
        lo = _spectrum(self.lambda_omega, "lambda_omega")
        l1 = _spectrum(self.lambda1, "lambda1")
        l2 = _spectrum(self.lambda2, "lambda2")
        n = self.n1 + self.n2
        expected = (self.n2 / n) * l1.sum() + (self.n1 / n) * l2.sum()
        if abs(lo.sum() - expected) > 1e-10 * max(1.0, abs(expected)):
            raise ConfigError(
                f"inconsistent spectra: sum(lambda_omega)={lo.sum():.12g} but "
                f"(n2/n)sum(lambda1)+(n1/n)sum(lambda2)={expected:.12g}")
        for name, arr in (("lambda_omega", lo), ("lambda1", l1), ("lambda2", l2)):
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        object.__setattr__(self, "n1", int(self.n1))
        object.__setattr__(self, "n2", int(self.n2))

    @property
    def n(self):
        return self.n1 + self.n2

    @property
    def p(self):
        return self.lambda_omega.size

    @classmethod
    def from_covariances(cls, sigma1, sigma2, n1, n2):
        s1 = np.asarray(sigma1, dtype=float)
        s2 = np.asarray(sigma2, dtype=float)
        if s1.shape != s2.shape or s1.ndim != 2 or s1.shape[0] != s1.shape[1]:
            raise ConfigError(f"covariances must be square and equal-sized, got {s1.shape}, {s2.shape}")
        n = n1 + n2
        omega = (n2 / n) * s1 + (n1 / n) * s2
        return cls(np.linalg.eigvalsh(omega), np.linalg.eigvalsh(s1), np.linalg.eigvalsh(s2), n1, n2)

    @classmethod
    def from_spectra(cls, lambda1, lambda2, n1, n2):
        """Spectra of two covariances sharing one eigenbasis, listed in matching order."""
        l1 = np.asarray(lambda1, dtype=float).ravel()
        l2 = np.asarray(lambda2, dtype=float).ravel()
        if l1.shape != l2.shape:
            raise ConfigError("lambda1 and lambda2 must have equal length")
        n = n1 + n2
        return cls((n2 / n) * l1 + (n1 / n) * l2, l1, l2, n1, n2)

    def traces(self):
        lo, l1, l2 = self.lambda_omega, self.lambda1, self.lambda2
        return {
            "tr_omega": float(lo.sum()),
            "tr_omega_sq": float(lo @ lo),
            "tr_omega_cu": float(np.sum(lo ** 3)),
            "tr_sigma1_sq": float(l1 @ l1),
            "tr_sigma2_sq": float(l2 @ l2),
            "tr_sigma1_cu": float(np.sum(l1 ** 3)),
            "tr_sigma2_cu": float(np.sum(l2 ** 3)),
        }


@dataclass(frozen=True)
class PopulationParams:
    d1: float
    d2: float
    beta1: float
    beta2: float
    d_star: float


def _s_variance_part(spec, t):
    n1, n2, n = spec.n1, spec.n2, spec.n
    return (n2 ** 2 / (n ** 2 * (n1 - 1))) * t["tr_sigma1_sq"] + (n1 ** 2 / (n ** 2 * (n2 - 1))) * t["tr_sigma2_sq"]


def population_params(spec):
    """Welch-Satterthwaite parameters (beta1, d1) of T* and (beta2, d2) of S*, plus d*."""
    t = spec.traces()
    if not t["tr_omega"] > 0.0:
        raise ConfigError("tr(Omega_n) is zero")
    denom = _s_variance_part(spec, t)
    tr_om = t["tr_omega"]
    return PopulationParams(
        d1=tr_om ** 2 / t["tr_omega_sq"],
        d2=tr_om ** 2 / denom,
        beta1=t["tr_omega_sq"] / tr_om,
        beta2=denom / tr_om,
        d_star=t["tr_omega_sq"] ** 3 / t["tr_omega_cu"] ** 2,
    )


def cumulants_T_star(spec):
    lam = spec.lambda_omega
    return float(lam.sum()), 2.0 * float(lam @ lam), 8.0 * float(np.sum(lam ** 3))


def cumulants_S_star(spec):
    n1, n2, n = spec.n1, spec.n2, spec.n
    t = spec.traces()
    k1 = t["tr_omega"]
    k2 = 2.0 * _s_variance_part(spec, t)
    k3 = 8.0 * ((n2 ** 3 / (n ** 3 * (n1 - 1) ** 2)) * t["tr_sigma1_cu"]
                + (n1 ** 3 / (n ** 3 * (n2 - 1) ** 2)) * t["tr_sigma2_cu"])
    return k1, k2, k3


@dataclass(frozen=True)
class FStarCumulants:
    """Leading-order cumulants of F*; higher-order terms dropped."""

    k1: float
    k2: float
    k3: float
    d_star: float
    skewness: float


def cumulants_F_star(spec):
    t = spec.traces()
    n1, n2, n = spec.n1, spec.n2, spec.n
    tr_om = t["tr_omega"]
    if not tr_om > 0.0:
        raise ConfigError("tr(Omega_n) is zero")
    k2 = 2.0 * (t["tr_omega_sq"] / tr_om ** 2
                + (n2 ** 2 / (n1 - 1) * t["tr_sigma1_sq"] + n1 ** 2 / (n2 - 1) * t["tr_sigma2_sq"])
                / (n ** 2 * tr_om ** 2))
    k3 = 8.0 * (t["tr_omega_cu"] / tr_om ** 3
                + (n2 ** 3 / (n1 - 1) ** 2 * t["tr_sigma1_cu"] + n1 ** 3 / (n2 - 1) ** 2 * t["tr_sigma2_cu"])
                / (n ** 3 * tr_om ** 3))
    d_star = t["tr_omega_sq"] ** 3 / t["tr_omega_cu"] ** 2
    return FStarCumulants(k1=1.0, k2=k2, k3=k3, d_star=d_star, skewness=math.sqrt(8.0 / d_star))


# -- samplers ----------------------------------------------------------------

def _check_draws(n_draws):
    if int(n_draws) < 1:
        raise ConfigError(f"n_draws must be at least 1, got {n_draws}")
    return int(n_draws)


def _chunks(total):
    start = 0
    while start < total:
        stop = min(total, start + _CHUNK)
        yield start, stop
        start = stop


def _draw_T(rng, lam, k):
    z = rng.standard_normal((k, lam.size))
    return (z * z) @ lam


def _draw_S(rng, spec, k):
    n1, n2, n = spec.n1, spec.n2, spec.n
    b1 = rng.chisquare(n1 - 1, size=(k, spec.lambda1.size)) @ spec.lambda1
    b2 = rng.chisquare(n2 - 1, size=(k, spec.lambda2.size)) @ spec.lambda2
    return ((n2 / (n1 - 1)) * b1 + (n1 / (n2 - 1)) * b2) / n


def sample_T_star(spec, n_draws, seed, stream=0):
    n_draws = _check_draws(n_draws)
    rng = make_rng(seed, stream)
    out = np.empty(n_draws)
    for a, b in _chunks(n_draws):
        out[a:b] = _draw_T(rng, spec.lambda_omega, b - a)
    return out


def sample_S_star(spec, n_draws, seed, stream=0):
    n_draws = _check_draws(n_draws)
    rng = make_rng(seed, stream)
    out = np.empty(n_draws)
    for a, b in _chunks(n_draws):
        out[a:b] = _draw_S(rng, spec, b - a)
    return out


def sample_F_star(spec, n_draws, seed, stream=0):
    """Draws of T*/S* with all chi-square components mutually independent."""
    n_draws = _check_draws(n_draws)
    rng = make_rng(seed, stream)
    out = np.empty(n_draws)
    for a, b in _chunks(n_draws):
        k = b - a
        out[a:b] = _draw_T(rng, spec.lambda_omega, k) / _draw_S(rng, spec, k)
    return out


def sample_zeta(weights, n_draws, seed, stream=0):
    """Draws of sum_r w_r (A_r - 1) / sqrt(2) with A_r ~ chi2(1)."""
    w = np.asarray(weights, dtype=float).ravel()
    n_draws = _check_draws(n_draws)
    rng = make_rng(seed, stream)
    out = np.empty(n_draws)
    for a, b in _chunks(n_draws):
        z = rng.standard_normal((b - a, w.size))
        out[a:b] = ((z * z - 1.0) @ w) / math.sqrt(2.0)
    return out


# -- approximation quality ---------------------------------------------------

def ks_statistic(sample, cdf_values_sorted=None, cdf=None):
    """Two-sided Kolmogorov-Smirnov distance between a sample and a continuous cdf."""
    x = np.sort(np.asarray(sample, dtype=float))
    f = cdf_values_sorted if cdf_values_sorted is not None else cdf(x)
    m = x.size
    i = np.arange(1, m + 1)
    return float(max(np.max(i / m - f), np.max(f - (i - 1) / m)))


@dataclass(frozen=True)
class KSResult:
    statistic: float
    d1: float
    d2: float
    n_draws: int


def approximation_quality(spec, n_draws, seed, stream=0):
    """KS distance between sampled F* and F(d1, d2) at the population parameters."""
    pp = population_params(spec)
    draws = np.sort(sample_F_star(spec, n_draws, seed, stream))
    f = special.f_cdf_array(draws, pp.d1, pp.d2)
    return KSResult(statistic=ks_statistic(draws, f), d1=pp.d1, d2=pp.d2, n_draws=int(n_draws))
