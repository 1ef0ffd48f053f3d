"""Size and power simulations under the factor model y = mu_i + Sigma_i^{1/2} z.

Two covariance families are supported:

* compound symmetry, Sigma_i = sigma_i^2 [(1 - rho_i) I + rho_i J];
* ``DRD``, Sigma_i = D R_i D with D = diag((p - k + 1) / p) and
  R_i[k, l] = (-1)^(k + l) rho_i^(0.1 |k - l|).

Innovations z are i.i.d. standardized N(0, 1), t_4 / sqrt(2) or
(chi2_1 - 1) / sqrt(2). Replication ``r`` of a cell draws from
``default_rng(SeedSequence([seed, r]))``, so serial and parallel runs give
identical results.
"""
import enum
import functools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, replace

import numpy as np

from . import special
from .errors import ConfigError
from .mixture import MixtureSpec, make_rng, population_params, sample_zeta
from .stat_tests import Method, run_all
from .traces import TwoSampleData, trace_summary

__all__ = [
    "Innovation", "CovFamily", "SimConfig", "CellResult", "CovarianceRoot",
    "covariance_sqrt", "mean_shift", "innovations", "generate_two_samples",
    "mixture_spec", "run_cell", "are_metric",
    "theoretical_power", "theoretical_power_mixture",
]


class Innovation(str, enum.Enum):
    NORMAL = "normal"
    T4 = "t4"
    CHI1 = "chi1"

    @classmethod
    def from_model(cls, model):
        """Accept 1/2/3 (model number) or a member name/value."""
        if isinstance(model, cls):
            return model
        numbered = {1: cls.NORMAL, 2: cls.T4, 3: cls.CHI1}
        if isinstance(model, (int, np.integer)) or (isinstance(model, str) and model.isdigit()):
            try:
                return numbered[int(model)]
            except KeyError:
                raise ConfigError(f"model number must be 1, 2 or 3, got {model}") from None
        try:
            return cls(str(model).lower())
        except ValueError:
            raise ConfigError(f"unknown innovation model {model!r}") from None

    @property
    def number(self):
        return {"normal": 1, "t4": 2, "chi1": 3}[self.value]


class CovFamily(str, enum.Enum):
    CS = "cs"
    DRD = "drd"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        aliases = {"cs": cls.CS, "compound": cls.CS, "compoundsymmetry": cls.CS,
                   "compound_symmetry": cls.CS, "drd": cls.DRD}
        key = str(value).lower().replace("-", "_")
        if key not in aliases:
            raise ConfigError(f"unknown covariance family {value!r}")
        return aliases[key]


@dataclass(frozen=True)
class SimConfig:
    model: Innovation = Innovation.NORMAL
    cov_family: CovFamily = CovFamily.CS
    p: int = 50
    n1: int = 30
    n2: int = 50
    rho1: float = 0.1
    rho2: float = 0.1
    sigma1_sq: float = 1.0
    sigma2_sq: float = 2.0
    delta: float = 0.0
    n_reps: int = 1000
    alpha: float = 0.05
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "model", Innovation.from_model(self.model))
        object.__setattr__(self, "cov_family", CovFamily.parse(self.cov_family))
        for name in ("p", "n1", "n2", "n_reps", "seed"):
            object.__setattr__(self, name, int(getattr(self, name)))
        if self.p < 1:
            raise ConfigError(f"p must be positive, got {self.p}")
        if self.n1 < 3 or self.n2 < 3:
            raise ConfigError(f"group sizes must be at least 3, got {self.n1}, {self.n2}")
        for name in ("rho1", "rho2"):
            if not 0.0 <= getattr(self, name) < 1.0:
                raise ConfigError(f"{name} must lie in [0, 1), got {getattr(self, name)}")
        for name in ("sigma1_sq", "sigma2_sq"):
            if not getattr(self, name) > 0.0:
                raise ConfigError(f"{name} must be positive, got {getattr(self, name)}")
        if not self.delta >= 0.0:
            raise ConfigError(f"delta must be nonnegative, got {self.delta}")
        if self.n_reps < 1:
            raise ConfigError(f"n_reps must be at least 1, got {self.n_reps}")
        if not 0.0 < self.alpha < 1.0:
            raise ConfigError(f"alpha must lie in (0, 1), got {self.alpha}")

    def to_dict(self):
        d = asdict(self)
        d["model"] = self.model.number
        d["cov_family"] = self.cov_family.value
        return d

    def with_(self, **changes):
        return replace(self, **changes)


# -- covariance square roots -------------------------------------------------

class CovarianceRoot:
    """Symmetric square root M of a covariance, applied to rows: y = z @ M."""

    def __init__(self, p, *, cs=None, matrix=None, eigenvalues=None):
        self.p = p
        self._cs = cs
        self._matrix = matrix
        self._eigenvalues = eigenvalues

    @classmethod
    def compound_symmetry(cls, p, sigma_sq, rho):
        sigma = math.sqrt(sigma_sq)
        a = sigma * math.sqrt(1.0 - rho)
        b = (sigma / p) * (math.sqrt(1.0 - rho + p * rho) - math.sqrt(1.0 - rho))
        eig = np.full(p, sigma_sq * (1.0 - rho))
        eig[0] = sigma_sq * (1.0 - rho + p * rho)
        return cls(p, cs=(a, b), eigenvalues=eig)

    def apply(self, z):
        z = np.asarray(z, dtype=float)
        if self._cs is not None:
            a, b = self._cs
            return a * z + b * z.sum(axis=1, keepdims=True)
        return z @ self._matrix

    def matrix(self):
        if self._cs is not None:
            a, b = self._cs
            return a * np.eye(self.p) + b * np.ones((self.p, self.p))
        return self._matrix.copy()

    def covariance(self):
        m = self.matrix()
        return m @ m.T

    @property
    def eigenvalues(self):
        """Covariance eigenvalues, descending."""
        return np.sort(self._eigenvalues)[::-1]


def drd_covariance(p, rho):
    k = np.arange(1, p + 1)
    d = (p - k + 1) / p
    lag = np.abs(k[:, None] - k[None, :])
    sign = np.where((k[:, None] + k[None, :]) % 2 == 0, 1.0, -1.0)
    r = sign * np.power(rho, 0.1 * lag)
    return r, d[:, None] * r * d[None, :]


@functools.lru_cache(maxsize=32)
def _drd_root(p, rho):
    r, sigma = drd_covariance(p, rho)
    r_min = float(np.linalg.eigvalsh(r).min())
    if r_min < -1e-8:
        raise ConfigError(f"DRD correlation matrix is not PSD (min eigenvalue {r_min:.3g})")
    w, v = np.linalg.eigh(sigma)
    w = np.clip(w, 0.0, None)
    m = (v * np.sqrt(w)) @ v.T
    m = 0.5 * (m + m.T)
    m.setflags(write=False)
    w.setflags(write=False)
    return m, w


def covariance_sqrt(config, group):
    """Square root of Sigma_1 (``group=1``) or Sigma_2 (``group=2``) for a cell."""
    if group not in (1, 2):
        raise ConfigError(f"group must be 1 or 2, got {group}")
    rho = config.rho1 if group == 1 else config.rho2
    if config.cov_family is CovFamily.CS:
        sigma_sq = config.sigma1_sq if group == 1 else config.sigma2_sq
        return CovarianceRoot.compound_symmetry(config.p, sigma_sq, rho)
    m, w = _drd_root(config.p, float(rho))
    return CovarianceRoot(config.p, matrix=m, eigenvalues=w)


def mean_shift(p, delta):
    if delta < 0:
        raise ConfigError(f"delta must be nonnegative, got {delta}")
    u = np.arange(1, p + 1, dtype=float)
    return delta * u / np.linalg.norm(u)


def innovations(rng, shape, model):
    """Standardized i.i.d. innovations (mean 0, variance 1)."""
    model = Innovation.from_model(model)
    if model is Innovation.NORMAL:
        return rng.standard_normal(shape)
    if model is Innovation.T4:
        num = rng.standard_normal(shape)
        chi = rng.chisquare(4.0, size=shape)
        return num / np.sqrt(chi / 4.0) / math.sqrt(2.0)
    z = rng.standard_normal(shape)
    return (z * z - 1.0) / math.sqrt(2.0)


def generate_two_samples(config, rep_index, roots=None):
    rng = make_rng(config.seed, rep_index)
    if roots is None:
        roots = (covariance_sqrt(config, 1), covariance_sqrt(config, 2))
    z1 = innovations(rng, (config.n1, config.p), config.model)
    z2 = innovations(rng, (config.n2, config.p), config.model)
    y1 = roots[0].apply(z1)
    y2 = roots[1].apply(z2)
    if config.delta > 0.0:
        y2 += mean_shift(config.p, config.delta)
    return TwoSampleData(y1, y2)


def mixture_spec(config):
    """Population mixture spectra for a cell (Gaussian null reference)."""
    if config.cov_family is CovFamily.CS:
        # both compound-symmetry matrices share the eigenbasis {1/sqrt(p), complement}
        l1 = covariance_sqrt(config, 1).eigenvalues
        l2 = covariance_sqrt(config, 2).eigenvalues
        return MixtureSpec.from_spectra(l1, l2, config.n1, config.n2)
    s1 = covariance_sqrt(config, 1).covariance()
    s2 = covariance_sqrt(config, 2).covariance()
    return MixtureSpec.from_covariances(s1, s2, config.n1, config.n2)


# -- experiment runner -------------------------------------------------------

METHODS = (Method.TCQ, Method.TNP, Method.FNP)


@dataclass(frozen=True)
class CellResult:
    config: SimConfig
    rejection_rate: dict
    n_valid: dict
    n_failed: dict
    mean_d1_hat: float
    mean_d2_hat: float
    n_reps: int
    failures: dict = field(default_factory=dict, repr=False)

    @property
    def n_failed_reps(self):
        return max(self.n_failed.values(), default=0)

    def rate(self, method):
        return self.rejection_rate[Method(method)]


def _run_reps(config, start, stop):
    roots = (covariance_sqrt(config, 1), covariance_sqrt(config, 2))
    records = []
    for rep in range(start, stop):
        data = generate_two_samples(config, rep, roots)
        try:
            ts = trace_summary(data)
        except Exception as exc:  # noqa: BLE001
            records.append((rep, {m: None for m in METHODS}, None, None,
                            {m: type(exc).__name__ for m in METHODS}))
            continue
        outcome = {}
        errs = {}
        d1 = d2 = None
        for res in run_all(data, config.alpha, methods=METHODS, ts=ts):
            if res.report is None:
                outcome[res.method] = None
                errs[res.method] = res.error_type
            else:
                outcome[res.method] = res.reject
                if res.method is Method.FNP:
                    d1, d2 = res.report.d1_hat, res.report.d2_hat
        records.append((rep, outcome, d1, d2, errs))
    return records


def _split(n, parts):
    edges = np.linspace(0, n, parts + 1).astype(int)
    return [(int(a), int(b)) for a, b in zip(edges[:-1], edges[1:]) if b > a]


def run_cell(config, n_jobs=1):
    """Run all replications of one cell and tabulate rejection proportions.

    Replications where a method fails are excluded from that method's
    proportion and counted in ``n_failed``.
    """
    if n_jobs is None or n_jobs <= 1:
        records = _run_reps(config, 0, config.n_reps)
    else:
        ranges = _split(config.n_reps, min(n_jobs * 4, config.n_reps))
        with ProcessPoolExecutor(max_workers=n_jobs) as pool:
            chunks = pool.map(_run_reps, [config] * len(ranges),
                              [a for a, _ in ranges], [b for _, b in ranges])
            records = [r for chunk in chunks for r in chunk]
    records.sort(key=lambda r: r[0])

    rejections = {m: 0 for m in METHODS}
    valid = {m: 0 for m in METHODS}
    failed = {m: 0 for m in METHODS}
    failures = {}
    d1s, d2s = [], []
    for _, outcome, d1, d2, errs in records:
        for m in METHODS:
            if outcome[m] is None:
                failed[m] += 1
                key = (m, errs.get(m))
                failures[key] = failures.get(key, 0) + 1
            else:
                valid[m] += 1
                rejections[m] += bool(outcome[m])
        if d1 is not None:
            d1s.append(d1)
            d2s.append(d2)
    rates = {m: (rejections[m] / valid[m] if valid[m] else math.nan) for m in METHODS}
    return CellResult(
        config=config, rejection_rate=rates, n_valid=valid, n_failed=failed,
        mean_d1_hat=float(np.mean(d1s)) if d1s else math.nan,
        mean_d2_hat=float(np.mean(d2s)) if d2s else math.nan,
        n_reps=config.n_reps, failures=failures,
    )


def are_metric(sizes, alpha):
    """Average relative error 100/M sum |size_j - alpha| / alpha (sizes as proportions)."""
    sizes = list(sizes)
    if not sizes:
        raise ValueError("ARE needs at least one empirical size")
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha}")
    return 100.0 * sum(abs(s - alpha) for s in sizes) / (len(sizes) * alpha)


# -- asymptotic power ----------------------------------------------------------

def _omega_limit(p, n1, n2, sigma1, sigma2):
    n = n1 + n2
    tau = n1 / n
    if not 0.0 < tau < 1.0:
        raise ConfigError("n1 / n must lie in (0, 1)")
    s1 = np.asarray(sigma1, dtype=float)
    s2 = np.asarray(sigma2, dtype=float)
    if s1.shape != (p, p) or s2.shape != (p, p):
        raise ConfigError(f"covariances must be {p}x{p}, got {s1.shape} and {s2.shape}")
    omega = (1.0 - tau) * s1 + tau * s2
    tr_sq = float(np.einsum("ij,ji->", omega, omega))
    if not tr_sq > 0.0:
        raise ConfigError("tr(Omega^2) is zero")
    return n, tau, omega, tr_sq


def theoretical_power(delta, p, n1, n2, sigma1, sigma2, alpha):
    """Normal-limit power Phi(-z_alpha + n tau (1 - tau) delta^2 / sqrt(2 tr(Omega^2)))."""
    n, tau, _, tr_sq = _omega_limit(p, n1, n2, sigma1, sigma2)
    shift = n * tau * (1.0 - tau) * delta ** 2 / math.sqrt(2.0 * tr_sq)
    return special.normal_cdf(-special.normal_quantile(1.0 - alpha) + shift)


def theoretical_power_mixture(delta, p, n1, n2, sigma1, sigma2, alpha, n_draws=200_000, seed=0):
    """Non-normal-limit power P(zeta >= [F_{d1,d2}(alpha) - 1]/sqrt(2/d1) - shift).

    zeta = sum_r rho_r (A_r - 1) / sqrt(2) over the p eigenvalues of Omega,
    estimated by Monte Carlo.
    """
    n, tau, omega, tr_sq = _omega_limit(p, n1, n2, sigma1, sigma2)
    spec = MixtureSpec.from_covariances(sigma1, sigma2, n1, n2)
    pp = population_params(spec)
    crit = (special.f_quantile(1.0 - alpha, pp.d1, pp.d2) - 1.0) / math.sqrt(2.0 / pp.d1)
    shift = n * tau * (1.0 - tau) * delta ** 2 / math.sqrt(2.0 * tr_sq)
    rho = np.clip(np.linalg.eigvalsh(omega), 0.0, None) / math.sqrt(tr_sq)
    zeta = sample_zeta(rho, n_draws, seed)
    return float(np.mean(zeta >= crit - shift))
