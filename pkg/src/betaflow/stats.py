"""Goodness-of-fit checks: Kolmogorov-Smirnov, analytic moments, empirical characteristic functions.

Critical values are the asymptotic Kolmogorov ones, c(alpha) = sqrt(-ln(alpha/2)/2),
which are accurate for the sample sizes used here (n >= 10^4).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


class UnsortedInputError(ValueError):
    pass


@dataclass(frozen=True)
class KsReport:
    test: str
    statistic: float
    n: int
    m: int
    alpha: float
    critical: float
    passed: bool

    def to_json(self) -> dict:
        return {"test": self.test, "statistic": self.statistic, "critical": self.critical,
                "n": self.n, "m": self.m, "alpha": self.alpha, "pass": self.passed}

    def summary(self) -> str:
        verdict = "pass" if self.passed else "FAIL"
        return f"{self.test}: D={self.statistic:.5f} crit={self.critical:.5f} {verdict}"


@dataclass(frozen=True)
class CfReport:
    t_grid: tuple
    max_abs_gap: float
    mc_error_bound: float
    tolerance: float
    passed: bool

    def to_json(self) -> dict:
        return {"t_grid": list(self.t_grid), "max_abs_gap": self.max_abs_gap,
                "mc_error_bound": self.mc_error_bound, "pass": self.passed}


def ingest(x) -> np.ndarray:
    """Float copy, sorted once, for the KS routines."""
    return np.sort(np.asarray(x, dtype=np.float64).ravel())


def ks_critical(alpha: float) -> float:
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha!r}")
    return math.sqrt(-math.log(alpha / 2.0) / 2.0)


def _check_sorted(x, name):
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 1:
        raise ValueError(f"{name} must be one-dimensional")
    if x.size > 1 and np.any(np.diff(x) < 0):
        raise UnsortedInputError(f"{name} must be sorted ascending")
    if not np.all(np.isfinite(x)):
        raise ValueError(f"{name} contains non-finite values")
    return x


def ecdf(sorted_x, points) -> np.ndarray:
    """Right-continuous empirical CDF of ``sorted_x`` evaluated at ``points``."""
    sorted_x = np.asarray(sorted_x)
    return np.searchsorted(sorted_x, points, side="right") / sorted_x.size


def ks_one_sample(samples, cdf, alpha: float, test: str = "ks_one_sample",
                  min_n: int = 10) -> KsReport:
    """D = max_i max(i/n - F(x_i), F(x_i) - (i-1)/n) against a vectorized ``cdf``."""
    x = _check_sorted(samples, "samples")
    n = x.size
    if n < min_n:
        raise ValueError(f"need at least {min_n} samples, got {n}")
    f = np.asarray(cdf(x), dtype=np.float64)
    i = np.arange(1, n + 1)
    d = max(float(np.max(i / n - f)), float(np.max(f - (i - 1) / n)))
    d = min(max(d, 0.0), 1.0)
    crit = ks_critical(alpha) / math.sqrt(n)
    return KsReport(test, d, n, 0, float(alpha), crit, d <= crit)


def ks_two_sample(a, b, alpha: float, test: str = "ks_two_sample",
                  min_n: int = 10) -> KsReport:
    """D = sup |F_a - F_b| over the pooled sample."""
    a = _check_sorted(a, "a")
    b = _check_sorted(b, "b")
    n, m = a.size, b.size
    if min(n, m) < min_n:
        raise ValueError(f"need at least {min_n} samples per side, got {n} and {m}")
    pooled = np.concatenate([a, b])
    d = float(np.max(np.abs(ecdf(a, pooled) - ecdf(b, pooled))))
    crit = ks_critical(alpha) * math.sqrt((n + m) / (n * m))
    return KsReport(test, d, n, m, float(alpha), crit, d <= crit)


def beta_moments(a: float, b: float, k_max: int) -> list[float]:
    """[E X, E X^2, ..., E X^k_max] for X ~ Beta(a, b)."""
    if not (a > 0 and b > 0):
        raise ValueError("a and b must be > 0")
    if not 1 <= k_max <= 8:
        raise ValueError("k_max must lie in 1..8")
    out, m = [], 1.0
    for j in range(k_max):
        m *= (a + j) / (a + b + j)
        out.append(m)
    return out


def gamma_moments(a: float, k_max: int) -> list[float]:
    """[E V, ..., E V^k_max] for V ~ Gamma(a) with unit scale."""
    if not a > 0:
        raise ValueError("a must be > 0")
    if not 1 <= k_max <= 8:
        raise ValueError("k_max must lie in 1..8")
    out, m = [], 1.0
    for j in range(k_max):
        m *= a + j
        out.append(m)
    return out


def moment_z_scores(samples, a: float, b: float, k_max: int = 4) -> list[float]:
    """(empirical - exact) / MC standard error of E X^k, k = 1..k_max, for Beta(a, b)."""
    x = np.asarray(samples, dtype=np.float64)
    exact = beta_moments(a, b, 2 * k_max)
    z = []
    for k in range(1, k_max + 1):
        sd = math.sqrt((exact[2 * k - 1] - exact[k - 1] ** 2) / x.size)
        z.append((float(np.mean(x ** k)) - exact[k - 1]) / sd)
    return z


def empirical_cf_compare(samples, shape_a: float, t_grid, tolerance: float = 0.0,
                         min_n: int = 10_000) -> CfReport:
    """Compare (1/n) sum exp(i t X_j) with (1 - i t)^(-shape_a) on ``t_grid``."""
    x = np.asarray(samples, dtype=np.float64).ravel()
    t = np.asarray(t_grid, dtype=np.float64).ravel()
    if x.size < min_n:
        raise ValueError(f"need at least {min_n} samples, got {x.size}")
    if not np.all(np.isfinite(t)) or np.any(np.abs(t) > 2):
        raise ValueError("t_grid must be finite with |t| <= 2")
    emp = np.array([np.mean(np.exp(1j * tk * x)) for tk in t])
    target = np.exp(-shape_a * np.log(1.0 - 1j * t))
    gap = float(np.max(np.abs(emp - target))) if t.size else 0.0
    bound = 2.0 / math.sqrt(x.size)
    return CfReport(tuple(float(v) for v in t), gap, bound, float(tolerance),
                    gap <= 3.0 * bound + tolerance)
