"""A first look at the discounted kernel density estimator.

We build the estimator on a synthetic return series whose volatility
doubles halfway through, and watch the estimated density widen as the
discounting forgets the quiet early sample.  A plain equal-weight density
on the same data barely reacts.
"""

import numpy as np

from tvkde import EPANECHNIKOV, StaticDensity, default_grid, init_dynamic

rng = np.random.default_rng(0)

# --- a regime change: 250 quiet days, then 250 volatile ones -------------

quiet = rng.normal(0.0, 0.01, 250)
volatile = rng.normal(0.0, 0.02, 250)
returns = np.concatenate([quiet, volatile])

h, omega = 0.004, 0.97

# Initialize on the quiet half, then feed the volatile days one at a time.
density = init_dynamic(returns[:250], h=h, omega=omega, kernel=EPANECHNIKOV)
print(f"initialized on {density.t} observations, "
      f"sum of weights = {density.weights.sum():.6f}")

for x in returns[250:]:
    density.update(x)

# The most recent observations dominate: show the weight attached to the
# newest, a 20-day-old, and a 100-day-old observation.
w = density.weights
print(f"weight of newest observation:   {w[-1]:.4f}")
print(f"weight 20 days back:            {w[-21]:.6f}")
print(f"weight 100 days back:           {w[-101]:.10f}")

# --- compare the spread against an equal-weight density ------------------

static = StaticDensity(observations=returns, h=h, kernel=EPANECHNIKOV)
grid = default_grid(returns, h)

pdf_dyn, cdf_dyn = density.evaluate_on_grid(grid)
pdf_sta = static.pdf_at(grid)

# interquartile width as a simple spread summary
def iqr(grid, cdf):
    lo = grid[np.searchsorted(cdf, 0.25)]
    hi = grid[np.searchsorted(cdf, 0.75)]
    return hi - lo

print(f"\ndiscounted density IQR: {iqr(grid, cdf_dyn):.4f}")
print(f"equal-weight density IQR: {iqr(grid, static.cdf_at(grid)):.4f}")
print("the discounted estimate has adapted to the volatile regime;")
print("the equal-weight one still averages the two regimes together")

print(f"\nmass check: trapezoid integral of the discounted pdf = "
      f"{np.trapezoid(pdf_dyn, grid):.4f}")
