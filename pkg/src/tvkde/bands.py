"""Monte Carlo confidence bands for divergence series under an iid-Gaussian
null.

Each simulated path of returns runs through the identical density and
divergence pipeline; the band at level p for a given date is the empirical
p-quantile across paths (order statistic at 1-based index ceil(p * n)).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .divergence import DIVERGENCE_KINDS, batch_divergence_series
from .errors import ParameterError
from .kernels import EPANECHNIKOV, KernelSpec

__all__ = [
    "NullSimConfig",
    "ConfidenceBands",
    "simulate_null_paths",
    "confidence_bands",
]

DEFAULT_LEVELS = (0.95, 0.99, 0.999)


@dataclass(frozen=True)
class NullSimConfig:
    """Simulation setup for the iid-Gaussian null hypothesis."""

    n_paths: int = 1000
    path_length: int = 400
    t0: int = 100
    sigma: float = 0.01
    h: float = 0.005
    omega: float = 0.97
    kernel: KernelSpec = EPANECHNIKOV
    levels: tuple[float, ...] = DEFAULT_LEVELS
    seed: int = 0
    n_grid: int = 2048

    def __post_init__(self) -> None:
        if self.n_paths < 100:
            raise ParameterError("n_paths must be >= 100")
        if not all(0.0 < p < 1.0 for p in self.levels):
            raise ParameterError("levels must lie in (0, 1)")
        if self.sigma <= 0:
            raise ParameterError("sigma must be positive")
        if not (2 <= self.t0 < self.path_length):
            raise ParameterError("need 2 <= t0 < path_length")


@dataclass(frozen=True)
class ConfidenceBands:
    """Per-date quantile curves of one divergence kind under the null."""

    kind: str
    dates: np.ndarray
    levels: tuple[float, ...]
    curves: dict = field(repr=False, default_factory=dict)


def simulate_null_paths(cfg: NullSimConfig) -> np.ndarray:
    """(n_paths, path_length) matrix of iid N(0, sigma^2) returns.

    Path i is drawn from its own spawned stream, so row i is a fixed
    function of (seed, i) regardless of n_paths.
    """
    streams = np.random.SeedSequence(cfg.seed).spawn(cfg.n_paths)
    out = np.empty((cfg.n_paths, cfg.path_length))
    for i, ss in enumerate(streams):
        out[i] = np.random.default_rng(ss).normal(0.0, cfg.sigma,
                                                  cfg.path_length)
    return out


def empirical_quantile(values: np.ndarray, p: float, axis: int = 0):
    """Order statistic at 1-based index ceil(p * n) along axis."""
    n = values.shape[axis]
    idx = int(np.ceil(p * n)) - 1
    return np.take(np.sort(values, axis=axis), idx, axis=axis)


def confidence_bands(cfg: NullSimConfig,
                     kinds=DIVERGENCE_KINDS) -> list[ConfidenceBands]:
    """Quantile curves across simulated null paths, one set per kind."""
    paths = simulate_null_paths(cfg)
    series = batch_divergence_series(paths, cfg.t0, cfg.h, cfg.omega,
                                     cfg.kernel, kinds, n_grid=cfg.n_grid)
    dates = np.arange(cfg.t0, cfg.path_length + 1)
    out = []
    for kind in kinds:
        curves = {p: empirical_quantile(series[kind], p, axis=0)
                  for p in cfg.levels}
        out.append(ConfidenceBands(kind=kind, dates=dates,
                                   levels=tuple(cfg.levels), curves=curves))
    return out
