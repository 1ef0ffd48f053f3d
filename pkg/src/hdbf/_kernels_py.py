"""Pure-Python regularized incomplete gamma and beta kernels.

This module mirrors ``_kernels.pyx`` operation for operation. It is used when
the compiled extension is unavailable or when ``HDBF_PURE_PYTHON=1`` is set.
Non-convergence is signalled by returning NaN; callers raise.
"""
import math

import numpy as np

EPS = 1e-15
FPMIN = 1e-300
MAXIT = 1_000_000


def _stirling_tail(z):
    z2 = z * z
    return (1.0 / 12.0 - (1.0 / 360.0 - (1.0 / 1260.0 - (1.0 / 1680.0 - 1.0 / (1188.0 * z2)) / z2) / z2) / z2) / z


def lbeta(a, b):
    """log B(a, b), stable when one argument is huge (df2 ~ 1e9)."""
    small = a if a < b else b
    big = b if a < b else a
    if big < 10.0:
        return math.lgamma(a) + math.lgamma(b) - math.lgamma(a + b)
    # lgamma(big) - lgamma(big + small) via Stirling, avoiding cancellation
    diff = (-(big + small - 0.5) * math.log1p(small / big) - small * math.log(big) + small
            + _stirling_tail(big) - _stirling_tail(big + small))
    return math.lgamma(small) + diff


def _gamma_series(a, x):
    ap = a
    s = 1.0 / a
    d = s
    for _ in range(MAXIT):
        ap += 1.0
        d *= x / ap
        s += d
        if abs(d) < abs(s) * EPS:
            return s * math.exp(-x + a * math.log(x) - math.lgamma(a))
    return math.nan


def _gamma_cf(a, x):
    b = x + 1.0 - a
    c = 1.0 / FPMIN
    d = 1.0 / b
    h = d
    for i in range(1, MAXIT):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < FPMIN:
            d = FPMIN
        c = b + an / c
        if abs(c) < FPMIN:
            c = FPMIN
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < EPS:
            return math.exp(-x + a * math.log(x) - math.lgamma(a)) * h
    return math.nan


def gamma_p(a, x):
    """Regularized lower incomplete gamma P(a, x)."""
    if x <= 0.0:
        return 0.0
    if math.isinf(x):
        return 1.0
    if x < a + 1.0:
        return _gamma_series(a, x)
    return 1.0 - _gamma_cf(a, x)


def gamma_q(a, x):
    """Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x)."""
    if x <= 0.0:
        return 1.0
    if math.isinf(x):
        return 0.0
    if x < a + 1.0:
        return 1.0 - _gamma_series(a, x)
    return _gamma_cf(a, x)


def _beta_cf(a, b, x, y):
    # Lentz evaluation of the incomplete beta continued fraction; accurate for
    # x < (a + 1) / (a + b + 2).
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < FPMIN:
        d = FPMIN
    d = 1.0 / d
    h = d
    for m in range(1, MAXIT):
        m2 = 2.0 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < FPMIN:
            d = FPMIN
        c = 1.0 + aa / c
        if abs(c) < FPMIN:
            c = FPMIN
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < FPMIN:
            d = FPMIN
        c = 1.0 + aa / c
        if abs(c) < FPMIN:
            c = FPMIN
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < EPS:
            front = math.exp(a * math.log(x) + b * math.log(y) - lbeta(a, b)) / a
            return front * h
    return math.nan


def beta_i(a, b, x, y):
    """Regularized incomplete beta I_x(a, b); ``y`` must equal 1 - x."""
    if x <= 0.0:
        return 0.0
    if y <= 0.0:
        return 1.0
    if x < (a + 1.0) / (a + b + 2.0):
        return _beta_cf(a, b, x, y)
    return 1.0 - _beta_cf(b, a, y, x)


def beta_ic(a, b, x, y):
    """Complement 1 - I_x(a, b) = I_y(b, a), computed directly in its own tail."""
    if x <= 0.0:
        return 1.0
    if y <= 0.0:
        return 0.0
    if x < (a + 1.0) / (a + b + 2.0):
        return 1.0 - _beta_cf(a, b, x, y)
    return _beta_cf(b, a, y, x)


def chi2_cdf_array(xs, df, upper):
    xs = np.asarray(xs, dtype=float)
    out = np.empty_like(xs)
    a = 0.5 * df
    fn = gamma_q if upper else gamma_p
    for i, v in enumerate(xs.flat):
        out.flat[i] = fn(a, 0.5 * v)
    return out


def f_cdf_array(xs, df1, df2, upper):
    xs = np.asarray(xs, dtype=float)
    out = np.empty_like(xs)
    a = 0.5 * df1
    b = 0.5 * df2
    fn = beta_ic if upper else beta_i
    for i, v in enumerate(xs.flat):
        if v <= 0.0:
            out.flat[i] = 1.0 if upper else 0.0
            continue
        if math.isinf(v):
            out.flat[i] = 0.0 if upper else 1.0
            continue
        num = df1 * v
        den = num + df2
        out.flat[i] = fn(a, b, num / den, df2 / den)
    return out
