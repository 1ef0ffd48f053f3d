"""Normal, chi-square and F distribution functions with real degrees of freedom.

CDFs are evaluated through the regularized incomplete gamma and beta kernels in
``_kernels`` (compiled) or ``_kernels_py`` (fallback). Survival functions are
computed directly in their own tail, not as ``1 - cdf``, so small p-values keep
full relative precision. Quantiles use Newton steps inside a maintained
bracket, falling back to bisection whenever a step leaves it.

Negative arguments to ``chi2_cdf`` and ``f_cdf`` return 0 by convention.
"""
import math
from statistics import NormalDist

import numpy as np

from ._backend import BACKEND, kernels
from .errors import ConvergenceError, DomainError

__all__ = [
    "BACKEND",
    "normal_cdf", "normal_sf", "normal_quantile",
    "chi2_cdf", "chi2_sf", "chi2_pdf", "chi2_quantile", "chi2_cdf_array",
    "f_cdf", "f_sf", "f_pdf", "f_quantile", "f_cdf_array",
    "gamma_p", "gamma_q", "betainc", "lbeta",
]

_STD_NORMAL = NormalDist()
_SQRT2 = math.sqrt(2.0)


def _check_df(*dfs):
    for df in dfs:
        if not (df > 0.0) or math.isnan(df):
            raise DomainError(f"degrees of freedom must be positive, got {df!r}")


def _checked(value, what):
    if math.isnan(value):
        raise ConvergenceError(f"{what} did not converge")
    return value


# -- raw kernels -------------------------------------------------------------

def gamma_p(a, x):
    """Regularized lower incomplete gamma function P(a, x)."""
    _check_df(a)
    return _checked(kernels.gamma_p(float(a), float(x)), "incomplete gamma")


def gamma_q(a, x):
    """Regularized upper incomplete gamma function Q(a, x)."""
    _check_df(a)
    return _checked(kernels.gamma_q(float(a), float(x)), "incomplete gamma")


def betainc(a, b, x):
    """Regularized incomplete beta function I_x(a, b)."""
    _check_df(a, b)
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"incomplete beta argument must lie in [0, 1], got {x!r}")
    return _checked(kernels.beta_i(float(a), float(b), float(x), 1.0 - float(x)), "incomplete beta")


def lbeta(a, b):
    _check_df(a, b)
    return kernels.lbeta(float(a), float(b))


# -- normal ------------------------------------------------------------------

def normal_cdf(x):
    return 0.5 * math.erfc(-x / _SQRT2)


def normal_sf(x):
    return 0.5 * math.erfc(x / _SQRT2)


def normal_quantile(q):
    if not 0.0 < q < 1.0:
        raise DomainError(f"probability must lie in (0, 1), got {q!r}")
    return _STD_NORMAL.inv_cdf(q)


# -- chi-square --------------------------------------------------------------

def chi2_cdf(x, df):
    _check_df(df)
    if x <= 0.0:
        return 0.0
    return _checked(kernels.gamma_p(0.5 * df, 0.5 * x), "chi-square cdf")


def chi2_sf(x, df):
    _check_df(df)
    if x <= 0.0:
        return 1.0
    return _checked(kernels.gamma_q(0.5 * df, 0.5 * x), "chi-square sf")


def chi2_pdf(x, df):
    _check_df(df)
    if x < 0.0:
        return 0.0
    k = 0.5 * df
    if x == 0.0:
        if k < 1.0:
            return math.inf
        return 0.5 if k == 1.0 else 0.0
    return math.exp((k - 1.0) * math.log(x) - 0.5 * x - k * math.log(2.0) - math.lgamma(k))


def chi2_cdf_array(xs, df, upper=False):
    """Vectorized chi-square cdf (or sf when ``upper``)."""
    _check_df(df)
    out = kernels.chi2_cdf_array(np.asarray(xs, dtype=float), float(df), bool(upper))
    if np.isnan(out).any() and not np.isnan(xs).any():
        raise ConvergenceError("chi-square cdf did not converge")
    return out


def chi2_quantile(q, df):
    _check_df(df)
    z = normal_quantile(min(max(q, 1e-300), 1.0 - 1e-16)) if 0.0 < q < 1.0 else 0.0
    h = 2.0 / (9.0 * df)
    x0 = df * (1.0 - h + z * math.sqrt(h)) ** 3
    if not x0 > 0.0:
        x0 = df * 1e-3
    return _invert(q, lambda x: chi2_cdf(x, df), lambda x: chi2_sf(x, df),
                   lambda x: chi2_pdf(x, df), x0, "chi-square")


# -- F -----------------------------------------------------------------------

def _f_beta_args(x, df1, df2):
    num = df1 * x
    den = num + df2
    return num / den, df2 / den


def f_cdf(x, df1, df2):
    _check_df(df1, df2)
    if x <= 0.0:
        return 0.0
    if math.isinf(x):
        return 1.0
    t, u = _f_beta_args(x, df1, df2)
    return _checked(kernels.beta_i(0.5 * df1, 0.5 * df2, t, u), "F cdf")


def f_sf(x, df1, df2):
    _check_df(df1, df2)
    if x <= 0.0:
        return 1.0
    if math.isinf(x):
        return 0.0
    t, u = _f_beta_args(x, df1, df2)
    return _checked(kernels.beta_ic(0.5 * df1, 0.5 * df2, t, u), "F sf")


def f_pdf(x, df1, df2):
    _check_df(df1, df2)
    if x < 0.0:
        return 0.0
    a, b = 0.5 * df1, 0.5 * df2
    if x == 0.0:
        if a < 1.0:
            return math.inf
        return math.exp(-kernels.lbeta(a, b)) * df1 / df2 if a == 1.0 else 0.0
    # (d2/2) log d2 - ((d1+d2)/2) log(d1 x + d2) rewritten to survive d2 ~ 1e9
    log_den = math.log(df1 * x + df2)
    log_pdf = (a * math.log(df1) + (a - 1.0) * math.log(x) - a * log_den
               - b * math.log1p(df1 * x / df2) - kernels.lbeta(a, b))
    return math.exp(log_pdf)


def f_cdf_array(xs, df1, df2, upper=False):
    """Vectorized F cdf (or sf when ``upper``)."""
    _check_df(df1, df2)
    out = kernels.f_cdf_array(np.asarray(xs, dtype=float), float(df1), float(df2), bool(upper))
    if np.isnan(out).any() and not np.isnan(xs).any():
        raise ConvergenceError("F cdf did not converge")
    return out


def f_quantile(q, df1, df2):
    _check_df(df1, df2)
    x0 = chi2_quantile(q, df1) / df1 if 0.0 < q < 1.0 else 1.0
    if not x0 > 0.0:
        x0 = 1.0
    return _invert(q, lambda x: f_cdf(x, df1, df2), lambda x: f_sf(x, df1, df2),
                   lambda x: f_pdf(x, df1, df2), x0, "F")


# -- root finding ------------------------------------------------------------

def _invert(q, cdf, sf, pdf, x0, name, maxiter=400):
    """Solve cdf(x) = q on (0, inf) for a continuous increasing cdf."""
    if not 0.0 <= q <= 1.0 or math.isnan(q):
        raise DomainError(f"probability must lie in [0, 1], got {q!r}")
    if q == 0.0:
        return 0.0
    if q == 1.0:
        return math.inf

    # work in whichever tail is smaller so the residual keeps relative precision
    if q <= 0.5:
        target = q

        def g(x):
            return cdf(x) - target
    else:
        target = 1.0 - q

        def g(x):
            return target - sf(x)

    tol = 1e-14 * target
    lo, hi = 0.0, max(x0, 1e-300)
    while g(hi) < 0.0:
        lo, hi = hi, hi * 4.0
        if hi > 1e300:
            raise ConvergenceError(f"{name} quantile: could not bracket q={q}")
    x = x0 if lo < x0 < hi else 0.5 * (lo + hi)
    for _ in range(maxiter):
        gx = g(x)
        if abs(gx) <= tol:
            return x
        if gx < 0.0:
            lo = x
        else:
            hi = x
        if hi - lo <= 4e-16 * hi:
            return x
        d = pdf(x)
        step_ok = d > 0.0 and math.isfinite(d)
        xn = x - gx / d if step_ok else math.nan
        if not (lo < xn < hi):
            xn = math.sqrt(lo * hi) if lo > 0.0 and hi > 4.0 * lo else 0.5 * (lo + hi)
        x = xn
    raise ConvergenceError(f"{name} quantile did not converge for q={q}")
