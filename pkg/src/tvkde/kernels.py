"""Smoothing kernels and their antiderivatives.

Each kernel K integrates to one, is symmetric around zero, and comes with
its primitive (the kernel cdf) normalized so that it tends to 1 at +inf.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import ndtr

from .errors import ParameterError

__all__ = [
    "KernelSpec",
    "EPANECHNIKOV",
    "GAUSSIAN",
    "kernel_by_name",
    "kernel_eval",
    "kernel_cdf",
]

_SQRT_2PI = math.sqrt(2.0 * math.pi)


@dataclass(frozen=True)
class KernelSpec:
    """Immutable description of a smoothing kernel.

    ``support_radius`` is 1 for the Epanechnikov kernel and ``inf`` for the
    Gaussian one; it bounds how far a single observation can influence the
    estimated density (in bandwidth units).
    """

    kind: str
    support_radius: float = field(init=False)

    def __post_init__(self) -> None:
        kind = self.kind.lower()
        if kind not in ("epanechnikov", "gaussian"):
            raise ParameterError(f"unknown kernel kind: {self.kind!r}")
        object.__setattr__(self, "kind", kind)
        radius = 1.0 if kind == "epanechnikov" else math.inf
        object.__setattr__(self, "support_radius", radius)


EPANECHNIKOV = KernelSpec("epanechnikov")
GAUSSIAN = KernelSpec("gaussian")

_BY_NAME = {"epanechnikov": EPANECHNIKOV, "gaussian": GAUSSIAN}


def kernel_by_name(name: str) -> KernelSpec:
    try:
        return _BY_NAME[name.lower()]
    except KeyError:
        raise ParameterError(f"unknown kernel kind: {name!r}") from None


def _as_finite_array(u) -> np.ndarray:
    arr = np.asarray(u, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise ParameterError("kernel argument must be finite")
    return arr


def kernel_eval(spec: KernelSpec, u):
    """Evaluate K(u). Accepts scalars or arrays; returns the same shape."""
    arr = _as_finite_array(u)
    if spec.kind == "epanechnikov":
        out = 0.75 * np.maximum(0.0, 1.0 - arr * arr)
    else:
        out = np.exp(-0.5 * arr * arr) / _SQRT_2PI
    return out if arr.ndim else float(out)


def kernel_cdf(spec: KernelSpec, u):
    """Evaluate the kernel primitive at u, clamped into [0, 1].

    Epanechnikov: 1/2 + (3/4)(u - u^3/3) inside [-1, 1], 0/1 outside.
    Gaussian: the standard normal cdf (erf-based, abs error < 1e-15).
    """
    arr = _as_finite_array(u)
    if spec.kind == "epanechnikov":
        clipped = np.clip(arr, -1.0, 1.0)
        out = 0.5 + 0.75 * (clipped - clipped**3 / 3.0)
        out = np.clip(out, 0.0, 1.0)
    else:
        out = ndtr(arr)
    return out if arr.ndim else float(out)
