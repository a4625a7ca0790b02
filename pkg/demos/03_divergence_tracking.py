"""Tracking how far today's density has drifted from a reference date.

We freeze the density estimated at t0 as the reference, keep updating a
second copy day by day, and record four divergences between them.  A
synthetic crisis (ten days of -10 sigma returns) shows the signature the
library is built to expose: the body-sensitive divergences (Wasserstein-1,
Hellinger, KL) jump hard while the KS distance barely moves.
"""

from pathlib import Path

import numpy as np

from tvkde import EPANECHNIKOV, divergence_series, peak_date
from tvkde.svg import line_chart

rng = np.random.default_rng(42)

sigma, T, t0 = 0.01, 400, 100
returns = rng.normal(0.0, sigma, T)
returns[300:310] = -10 * sigma  # the crisis block

h, omega = 0.005, 0.98
series = divergence_series(returns, t0, h, omega, EPANECHNIKOV)

print(f"reference density frozen at t0 = {t0}; tracking through t = {T}\n")
print(f"{'kind':<14}{'pre-crisis':>12}{'post-crisis':>13}{'rel change':>12}")
pre_idx = 300 - t0
post_idx = 310 - t0 + 5
rel = {}
for s in series:
    pre, post = s.values[pre_idx], s.values[post_idx]
    rel[s.kind] = (post - pre) / pre
    print(f"{s.kind:<14}{pre:>12.4f}{post:>13.4f}{rel[s.kind]:>11.1f}x")

print(f"\nW1 reacted {rel['wasserstein1'] / rel['ks']:.1f} times more "
      f"strongly than KS:")
print("the crisis moved probability mass in the body of the distribution,")
print("which cdf-gap statistics like KS are nearly blind to")

for s in series:
    if s.kind == "hellinger":
        date, value = peak_date(s)
        print(f"\nhellinger peak: t = {date}, value = {value:.3f} "
              f"(crisis block was t = 300..309)")

# --- export an SVG chart of all four series --------------------------------

out = Path("demo_output")
out.mkdir(exist_ok=True)
xs = np.arange(series[0].values.size)
svg = line_chart([(s.kind, xs, s.values) for s in series],
                 title="divergence from the day-100 reference density",
                 x_label="days since reference", y_label="divergence")
(out / "divergence_tracking.svg").write_text(svg)
print(f"\nchart written to {out / 'divergence_tracking.svg'}")
