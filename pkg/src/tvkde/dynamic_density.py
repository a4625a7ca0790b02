"""Exponentially discounted kernel density / cdf with O(1)-state updates.

The estimator keeps the full observation history together with one scalar
weight per observation.  At initialization the weights are the exact
geometric weights (1-omega)/(1-omega^t0) * omega^(t0-i); each subsequent
update multiplies all weights by omega and gives the new observation
weight (1-omega), which keeps the weights summing to one exactly and makes
the pdf/cdf satisfy the pointwise recursions

    f_{t+1}(x) = omega * f_t(x) + (1-omega)/h * K((x - x_new)/h)
    F_{t+1}(x) = omega * F_t(x) + (1-omega) * KCDF((x - x_new)/h)

omega = 1 is the static equal-weight estimator and is handled as the
continuous limit: updates renormalize to equal weights 1/(t+1).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DataError, GridError, ParameterError
from .kernels import KernelSpec, kernel_cdf, kernel_eval

__all__ = [
    "DynamicDensity",
    "StaticDensity",
    "init_dynamic",
    "static_pdf_cdf",
    "default_grid",
]

# Weights below this may be pruned when pruning is switched on.
WEIGHT_FLOOR = 1e-15


def exact_weights(t0: int, omega: float) -> np.ndarray:
    """Exact initialization weights, oldest observation first."""
    if omega == 1.0:
        return np.full(t0, 1.0 / t0)
    ages = np.arange(t0 - 1, -1, -1, dtype=float)  # t0 - i for i = 1..t0
    return (1.0 - omega) / (1.0 - omega**t0) * omega**ages


def _check_params(h: float, omega: float) -> None:
    if not (np.isfinite(h) and h > 0.0):
        raise ParameterError(f"bandwidth must be positive, got {h}")
    if not (0.0 < omega <= 1.0):
        raise ParameterError(f"discount factor must be in (0, 1], got {omega}")


class DynamicDensity:
    """State of the time-varying kernel density estimator."""

    def __init__(self, observations, h: float, omega: float,
                 kernel: KernelSpec, prune: bool = False):
        _check_params(h, omega)
        obs = np.asarray(observations, dtype=float)
        if obs.ndim != 1 or obs.size < 2:
            raise DataError("need at least 2 observations to initialize")
        if not np.all(np.isfinite(obs)):
            raise DataError("observations must be finite")
        self.h = float(h)
        self.omega = float(omega)
        self.kernel = kernel
        self.prune = prune
        self._obs = obs.copy()
        self._w = exact_weights(obs.size, self.omega)
        self.t = obs.size

    @property
    def observations(self) -> np.ndarray:
        return self._obs

    @property
    def weights(self) -> np.ndarray:
        return self._w

    def update(self, x_new: float) -> "DynamicDensity":
        """Absorb one new observation; returns self for chaining."""
        if not np.isfinite(x_new):
            raise DataError(f"observation must be finite, got {x_new}")
        self.t += 1
        if self.omega == 1.0:
            self._obs = np.append(self._obs, x_new)
            self._w = np.full(self._obs.size, 1.0 / self._obs.size)
            return self
        self._w = self._w * self.omega
        self._obs = np.append(self._obs, x_new)
        self._w = np.append(self._w, 1.0 - self.omega)
        if self.prune:
            keep = self._w >= WEIGHT_FLOOR
            if not keep.all():
                self._obs = self._obs[keep]
                self._w = self._w[keep]
        return self

    def pdf_at(self, x):
        """(1/h) * sum_i w_i K((x - X_i)/h); scalar in, scalar out."""
        arr = np.asarray(x, dtype=float)
        u = (arr[..., None] - self._obs) / self.h
        out = kernel_eval(self.kernel, u) @ self._w / self.h
        return out if arr.ndim else float(out)

    def cdf_at(self, x):
        """sum_i w_i KCDF((x - X_i)/h) in [0, 1], nondecreasing in x."""
        arr = np.asarray(x, dtype=float)
        u = (arr[..., None] - self._obs) / self.h
        out = kernel_cdf(self.kernel, u) @ self._w
        return out if arr.ndim else float(out)

    def evaluate_on_grid(self, grid) -> tuple[np.ndarray, np.ndarray]:
        grid = np.asarray(grid, dtype=float)
        if grid.ndim != 1 or grid.size < 2:
            raise GridError("grid must be 1-D with at least 2 points")
        if not np.all(np.diff(grid) > 0):
            raise GridError("grid must be strictly increasing")
        return self.pdf_at(grid), self.cdf_at(grid)


def init_dynamic(observations, h: float, omega: float, kernel: KernelSpec,
                 prune: bool = False) -> DynamicDensity:
    """Build the estimator on the first t0 >= 2 observations."""
    return DynamicDensity(observations, h, omega, kernel, prune=prune)


@dataclass(frozen=True)
class StaticDensity:
    """Equal-weight kernel density on a fixed sample."""

    observations: np.ndarray
    h: float
    kernel: KernelSpec

    def __post_init__(self) -> None:
        _check_params(self.h, 1.0)
        obs = np.asarray(self.observations, dtype=float)
        if obs.ndim != 1 or obs.size < 1:
            raise DataError("need at least 1 observation")
        object.__setattr__(self, "observations", obs)

    def pdf_at(self, x):
        arr = np.asarray(x, dtype=float)
        u = (arr[..., None] - self.observations) / self.h
        out = kernel_eval(self.kernel, u).mean(axis=-1) / self.h
        return out if arr.ndim else float(out)

    def cdf_at(self, x):
        arr = np.asarray(x, dtype=float)
        u = (arr[..., None] - self.observations) / self.h
        out = kernel_cdf(self.kernel, u).mean(axis=-1)
        return out if arr.ndim else float(out)


def static_pdf_cdf(s: StaticDensity, x) -> tuple:
    """Evaluate the static pdf and cdf at x."""
    return s.pdf_at(x), s.cdf_at(x)


def default_grid(observations, h: float, n_points: int = 2048,
                 pad: float = 5.0) -> np.ndarray:
    """Equally spaced grid spanning the data range padded by pad * h."""
    obs = np.asarray(observations, dtype=float)
    return np.linspace(obs.min() - pad * h, obs.max() + pad * h, n_points)
