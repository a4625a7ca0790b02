"""Probability integral transforms and uniformity / independence statistics.

The PIT of observation X_t is the one-step-ahead forecast cdf evaluated at
X_t, i.e. the cdf estimated on data through t-1 only.  If the forecast is
correct the PITs are iid uniform on [0, 1]: the statistics below measure
departures from uniformity (ks_uniform), from lagged independence
(ks_lagged), and aggregate both into a size-adapted criterion (d_nu), with
a subinterval-uniformity alternative (d_nu_alt).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .dynamic_density import exact_weights
from .errors import DataError, ParameterError
from .kernels import KernelSpec, kernel_cdf

__all__ = [
    "PitSeries",
    "CriterionConfig",
    "compute_pits",
    "ks_uniform",
    "ks_lagged",
    "d_nu",
    "d_nu_alt",
]


@dataclass(frozen=True)
class PitSeries:
    """PITs Z_{t0+1}, ..., Z_T, all in [0, 1]."""

    values: np.ndarray
    t0: int

    def __post_init__(self) -> None:
        vals = np.asarray(self.values, dtype=float)
        if vals.ndim != 1 or vals.size < 1:
            raise DataError("PIT series must be a nonempty 1-D array")
        if np.any(vals < 0.0) or np.any(vals > 1.0):
            raise DataError("PIT values must lie in [0, 1]")
        object.__setattr__(self, "values", vals)

    def __len__(self) -> int:
        return self.values.size

    @property
    def T(self) -> int:
        return self.t0 + self.values.size


@dataclass(frozen=True)
class CriterionConfig:
    """Maximal lag (d_nu) or minimal window (d_nu_alt) and variant switch.

    ``ks_normalization`` selects the ecdf divisor: ``as_printed`` divides the
    n indicator terms by n+1, ``ecdf`` divides by n.
    """

    nu: int = 22
    variant: str = "d_nu"
    ks_normalization: str = "as_printed"

    def __post_init__(self) -> None:
        if self.variant not in ("d_nu", "d_nu_alt"):
            raise ParameterError(f"unknown criterion variant: {self.variant!r}")
        # d_nu degenerates gracefully at nu = 0 (lag-0 term only); a
        # window of minimum length 0 does not.
        min_nu = 1 if self.variant == "d_nu_alt" else 0
        if self.nu < min_nu:
            raise ParameterError(f"nu must be >= {min_nu} for {self.variant}")
        if self.ks_normalization not in ("as_printed", "ecdf"):
            raise ParameterError(
                f"unknown ks normalization: {self.ks_normalization!r}")


def compute_pits(returns, t0: int, h: float, omega: float,
                 kernel: KernelSpec) -> PitSeries:
    """Strict out-of-sample PITs Z_t = F_{t-1}(X_t) for t = t0+1 .. T.

    The density is updated with X_t only after Z_t is recorded.
    """
    x = np.asarray(returns, dtype=float)
    if t0 < 2:
        raise DataError("t0 must be >= 2")
    if x.size <= t0:
        raise DataError("need at least one observation beyond t0")
    if not np.all(np.isfinite(x)):
        raise DataError("returns must be finite")

    # Single weight buffer, discounted in place: equivalent to
    # init_dynamic(x[:t0], ...) followed by alternating cdf_at / update.
    w = np.empty(x.size)
    w[:t0] = exact_weights(t0, omega)
    z = np.empty(x.size - t0)
    for j, t in enumerate(range(t0, x.size)):
        u = (x[t] - x[:t]) / h
        z[j] = float(w[:t] @ kernel_cdf(kernel, u))
        if omega == 1.0:
            w[: t + 1] = 1.0 / (t + 1)
        else:
            w[:t] *= omega
            w[t] = 1.0 - omega
    # dot-product roundoff can overshoot [0, 1] by a few ulp
    np.clip(z, 0.0, 1.0, out=z)
    return PitSeries(values=z, t0=t0)


def _divisor(n: int, normalization: str) -> float:
    return float(n + 1) if normalization == "as_printed" else float(n)


def _k_values(z: np.ndarray, normalization: str) -> float:
    """max_s |z_s - (#{u: z_u <= z_s}) / divisor| via one sort."""
    n = z.size
    zs = np.sort(z)
    counts = np.searchsorted(zs, zs, side="right")
    return float(np.max(np.abs(zs - counts / _divisor(n, normalization))))


def ks_uniform(pits: PitSeries, normalization: str = "as_printed") -> float:
    """Uniformity statistic k: the maximum gap between each PIT and the
    empirical cdf of the PITs evaluated at that PIT."""
    return _k_values(pits.values, normalization)


def _k_lagged_values(z: np.ndarray, tau: int, normalization: str) -> float:
    if tau < 1:
        raise ParameterError("lag tau must be >= 1")
    if z.size <= tau:
        raise DataError("series too short for the requested lag")
    a = z[:-tau]
    b = z[tau:]
    m = a.size
    joint = np.count_nonzero(
        (a[None, :] <= a[:, None]) & (b[None, :] <= b[:, None]), axis=1)
    return float(np.max(np.abs(a * b - joint / _divisor(m, normalization))))


def ks_lagged(pits: PitSeries, tau: int,
              normalization: str = "as_printed") -> float:
    """Lag-tau independence statistic k_tau: empirical copula of the pairs
    (Z_s, Z_{s+tau}) against the independence product Z_s * Z_{s+tau}."""
    return _k_lagged_values(pits.values, tau, normalization)


def d_nu(pits: PitSeries, cfg: CriterionConfig = CriterionConfig()) -> float:
    """Size-adapted criterion: max over lags 0..nu of sqrt(n - tau) * k'_tau,
    where k'_0 is the univariate k and k'_tau the lagged statistic."""
    z = pits.values
    n = z.size
    if cfg.nu >= n:
        raise ParameterError("nu must be smaller than the series length")
    best = np.sqrt(n) * _k_values(z, cfg.ks_normalization)
    for tau in range(1, cfg.nu + 1):
        val = np.sqrt(n - tau) * _k_lagged_values(z, tau, cfg.ks_normalization)
        if val > best:
            best = val
    return float(best)


def d_nu_alt(pits: PitSeries, cfg: CriterionConfig = CriterionConfig()) -> float:
    """Subinterval criterion: the worst sqrt(len)-scaled uniformity statistic
    over all PIT subintervals of length >= nu."""
    z = pits.values
    n = z.size
    if cfg.nu > n:
        raise ParameterError("nu must not exceed the series length")
    best = 0.0
    for start in range(0, n - cfg.nu + 1):
        for stop in range(start + cfg.nu, n + 1):
            length = stop - start
            val = np.sqrt(length) * _k_values(z[start:stop],
                                              cfg.ks_normalization)
            if val > best:
                best = val
    return float(best)
