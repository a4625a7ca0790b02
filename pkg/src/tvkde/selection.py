"""Bandwidth / discount-factor selection.

All criteria are minimized: the PIT criteria directly, the likelihood
criterion through its negation.  The search is a deterministic two-stage
scheme: a coarse grid over (h, omega) followed by Nelder-Mead refinement
in (log h, logit of rescaled omega) from the best grid node.  The
objective is a max of order statistics and therefore not smooth, which
rules out gradient methods.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize
from scipy.special import logsumexp

from .dynamic_density import StaticDensity, exact_weights
from .errors import DataError, ParameterError, SelectionError
from .kernels import EPANECHNIKOV, KernelSpec, kernel_eval
from .pit import CriterionConfig, PitSeries, compute_pits, d_nu, d_nu_alt

__all__ = [
    "SelectionProblem",
    "SelectionResult",
    "objective",
    "select",
    "select_static",
]

CRITERIA = ("pit_d_nu", "pit_D_nu", "likelihood")

GRID_H_POINTS = 21
GRID_OMEGA_POINTS = 21
NM_MAX_ITER = 200
NM_XATOL = 1e-4


@dataclass(frozen=True)
class SelectionProblem:
    """Data, criterion, and search box for the (h, omega) selection."""

    returns: np.ndarray
    t0: int
    criterion: str = "pit_d_nu"
    constrained: bool = False
    nu: int = 22
    h_bounds: tuple[float, float] | None = None
    omega_bounds: tuple[float, float] = (0.01, 1.0)
    kernel: KernelSpec = EPANECHNIKOV
    ks_normalization: str = "as_printed"

    def __post_init__(self) -> None:
        x = np.asarray(self.returns, dtype=float)
        if x.ndim != 1:
            raise DataError("returns must be a 1-D series")
        object.__setattr__(self, "returns", x)
        if self.criterion not in CRITERIA:
            raise ParameterError(f"unknown criterion: {self.criterion!r}")
        if self.nu < 1:
            raise ParameterError("nu must be >= 1")
        if self.h_bounds is None:
            scale = float(np.std(x)) or 1.0
            object.__setattr__(self, "h_bounds", (1e-5 * scale, 1e-1 * scale))
        lo, hi = self.h_bounds
        if not (0.0 < lo < hi):
            raise ParameterError("h bounds must satisfy 0 < low < high")
        wlo, whi = self.omega_bounds
        if self.constrained:
            wlo = max(wlo, 1.0 - 1.0 / self.nu)
        if not (0.0 <= wlo < whi <= 1.0):
            raise ParameterError("omega bounds must lie within (0, 1]")
        object.__setattr__(self, "omega_bounds", (wlo, whi))


@dataclass(frozen=True)
class SelectionResult:
    h_opt: float
    omega_opt: float
    criterion_value: float
    evaluations: int
    search_trace: list = field(default_factory=list, repr=False)


def _neg_log_likelihood(x: np.ndarray, t0: int, h: float, omega: float,
                        kernel: KernelSpec) -> float:
    """Negated sum of one-step-ahead predictive log densities.

    Returns +inf as soon as an observation falls outside the support of the
    current density (possible with compact kernels), which is the mechanism
    that pushes likelihood selection toward heavy smoothing.  The Gaussian
    kernel is never exactly zero, so it is evaluated in log space (the
    plain density underflows for observations far from the history).
    """
    if kernel.kind == "gaussian":
        return _neg_log_likelihood_gaussian(x, t0, h, omega)
    w = np.empty(x.size)
    w[:t0] = exact_weights(t0, omega)
    total = 0.0
    for t in range(t0, x.size):
        u = (x[t] - x[:t]) / h
        dens = float(w[:t] @ kernel_eval(kernel, u)) / h
        if dens <= 0.0 or not math.isfinite(dens):
            return math.inf
        total += math.log(dens)
        if omega == 1.0:
            w[: t + 1] = 1.0 / (t + 1)
        else:
            w[:t] *= omega
            w[t] = 1.0 - omega
    return -total


def _neg_log_likelihood_gaussian(x: np.ndarray, t0: int, h: float,
                                 omega: float) -> float:
    """Log-space variant: log weights stay finite even when the discounted
    weights themselves underflow."""
    const = math.log(h) + 0.5 * math.log(2.0 * math.pi)
    logw = np.empty(x.size)
    logw[:t0] = np.log(exact_weights(t0, omega))
    log_omega = math.log(omega) if omega < 1.0 else 0.0
    total = 0.0
    for t in range(t0, x.size):
        u = (x[t] - x[:t]) / h
        total += float(logsumexp(logw[:t] - 0.5 * u * u)) - const
        if omega == 1.0:
            logw[: t + 1] = -math.log(t + 1)
        else:
            logw[:t] += log_omega
            logw[t] = math.log1p(-omega)
    return -total


def objective(problem: SelectionProblem, h: float, omega: float) -> float:
    """Criterion value at (h, omega); +inf outside the search box."""
    lo, hi = problem.h_bounds
    wlo, whi = problem.omega_bounds
    if not (lo <= h <= hi) or not (wlo < omega <= whi):
        return math.inf
    if problem.criterion == "likelihood":
        return _neg_log_likelihood(problem.returns, problem.t0, h, omega,
                                   problem.kernel)
    pits = compute_pits(problem.returns, problem.t0, h, omega, problem.kernel)
    cfg = CriterionConfig(nu=problem.nu,
                          variant="d_nu" if problem.criterion == "pit_d_nu"
                          else "d_nu_alt",
                          ks_normalization=problem.ks_normalization)
    if problem.criterion == "pit_d_nu":
        return d_nu(pits, cfg)
    return d_nu_alt(pits, cfg)


def _grid_axes(problem: SelectionProblem) -> tuple[np.ndarray, np.ndarray]:
    h_lo, h_hi = problem.h_bounds
    hs = np.geomspace(h_lo, h_hi, GRID_H_POINTS)
    w_lo, w_hi = problem.omega_bounds
    # omega's lower bound is open: drop the first linspace node.
    omegas = np.linspace(w_lo, w_hi, GRID_OMEGA_POINTS + 1)[1:]
    return hs, omegas


def _sigmoid(y: float) -> float:
    if y >= 0:
        return 1.0 / (1.0 + math.exp(-y))
    e = math.exp(y)
    return e / (1.0 + e)


def _logit(s: float) -> float:
    s = min(max(s, 1e-9), 1.0 - 1e-9)
    return math.log(s / (1.0 - s))


def _pick_best(trace: list[tuple[float, float, float]]):
    finite = [entry for entry in trace if math.isfinite(entry[2])]
    if not finite:
        raise SelectionError("criterion is +inf on every probed point")
    return min(finite, key=lambda e: (e[2], e[0], e[1]))


def select(problem: SelectionProblem) -> SelectionResult:
    """Two-stage search over (h, omega); deterministic given the problem."""
    if problem.returns.size - problem.t0 < problem.nu + 2:
        raise DataError("evaluation window too short for the chosen nu")
    trace: list[tuple[float, float, float]] = []

    hs, omegas = _grid_axes(problem)
    for h in hs:
        for omega in omegas:
            trace.append((float(h), float(omega),
                          objective(problem, float(h), float(omega))))
    h_best, w_best, _ = _pick_best(trace)

    w_lo, w_hi = problem.omega_bounds
    span = w_hi - w_lo

    def nm_objective(params) -> float:
        h = math.exp(params[0])
        omega = w_lo + span * _sigmoid(params[1])
        val = objective(problem, h, omega)
        trace.append((h, omega, val))
        return val

    x0 = np.array([math.log(h_best), _logit((w_best - w_lo) / span)])
    # infinite objective values trip a harmless invalid-subtract warning
    # inside the simplex convergence check
    with np.errstate(invalid="ignore"):
        minimize(nm_objective, x0, method="Nelder-Mead",
                 options={"maxiter": NM_MAX_ITER, "xatol": NM_XATOL,
                          "fatol": 1e-10})

    h_opt, w_opt, value = _pick_best(trace)
    return SelectionResult(h_opt=h_opt, omega_opt=w_opt,
                           criterion_value=value, evaluations=len(trace),
                           search_trace=trace)


def static_objective(returns, t0: int, h: float, criterion: str, nu: int,
                     kernel: KernelSpec,
                     ks_normalization: str = "as_printed") -> float:
    """Static-framework criterion: density fixed on the first t0 points."""
    x = np.asarray(returns, dtype=float)
    dens = StaticDensity(observations=x[:t0], h=h, kernel=kernel)
    tail = x[t0:]
    if criterion == "likelihood":
        if kernel.kind == "gaussian":
            u = (tail[:, None] - x[None, :t0]) / h
            const = math.log(t0) + math.log(h) + 0.5 * math.log(2.0 * math.pi)
            return -float(np.sum(logsumexp(-0.5 * u * u, axis=1) - const))
        vals = dens.pdf_at(tail)
        if np.any(vals <= 0.0):
            return math.inf
        return -float(np.sum(np.log(vals)))
    pits = PitSeries(values=dens.cdf_at(tail), t0=t0)
    cfg = CriterionConfig(nu=nu,
                          variant="d_nu" if criterion == "pit_d_nu"
                          else "d_nu_alt",
                          ks_normalization=ks_normalization)
    return d_nu(pits, cfg) if criterion == "pit_d_nu" else d_nu_alt(pits, cfg)


def select_static(returns, t0: int, criterion: str = "pit_d_nu",
                  nu: int = 22, kernel: KernelSpec = EPANECHNIKOV,
                  h_bounds: tuple[float, float] | None = None,
                  ks_normalization: str = "as_printed") -> SelectionResult:
    """One-dimensional bandwidth search in the static framework.

    omega plays no role; the result reports omega_opt = 1 by convention.
    """
    x = np.asarray(returns, dtype=float)
    if criterion not in CRITERIA:
        raise ParameterError(f"unknown criterion: {criterion!r}")
    if x.size - t0 < nu + 2:
        raise DataError("evaluation window too short for the chosen nu")
    if h_bounds is None:
        scale = float(np.std(x)) or 1.0
        h_bounds = (1e-5 * scale, 1e-1 * scale)
    h_lo, h_hi = h_bounds
    if not (0.0 < h_lo < h_hi):
        raise ParameterError("h bounds must satisfy 0 < low < high")

    trace: list[tuple[float, float, float]] = []

    def eval_h(h: float) -> float:
        if not (h_lo <= h <= h_hi):
            return math.inf
        val = static_objective(x, t0, h, criterion, nu, kernel,
                               ks_normalization)
        trace.append((h, 1.0, val))
        return val

    for h in np.geomspace(h_lo, h_hi, GRID_H_POINTS):
        eval_h(float(h))
    h_best, _, _ = _pick_best(trace)
    with np.errstate(invalid="ignore"):
        minimize(lambda p: eval_h(math.exp(p[0])),
                 np.array([math.log(h_best)]), method="Nelder-Mead",
                 options={"maxiter": NM_MAX_ITER, "xatol": NM_XATOL,
                          "fatol": 1e-10})
    h_opt, _, value = _pick_best(trace)
    return SelectionResult(h_opt=h_opt, omega_opt=1.0, criterion_value=value,
                           evaluations=len(trace), search_trace=trace)
