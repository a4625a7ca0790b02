"""Acceptance gate: one test per criterion, one printed PASS/FAIL line each.

Tolerances, sample sizes, and runtime budgets are pinned in the assertions.
The two ten-seed studies dominate the runtime; everything else is seconds.
"""

import time

import numpy as np
import pytest
import scipy.stats

from tvkde import (
    EPANECHNIKOV,
    GAUSSIAN,
    CauchyStudyConfig,
    CriterionConfig,
    GriddedDistribution,
    NullSimConfig,
    PitSeries,
    SelectionProblem,
    confidence_bands,
    d_nu_alt,
    divergence_series,
    hellinger,
    init_dynamic,
    kl_divergence,
    ks_distance,
    ks_lagged,
    ks_uniform,
    peak_date,
    run_method_comparison,
    run_static_comparison,
    select,
    wasserstein1,
)
from tvkde.bands import simulate_null_paths
from tvkde.divergence import batch_divergence_series

from oracles import (
    brute_d_nu_alt_prefix,
    brute_k,
    brute_k_lagged,
    closed_form_weights,
    direct_pdf_cdf,
)


def report(num: int, name: str, ok: bool, detail: str) -> None:
    verdict = "PASS" if ok else "FAIL"
    line = f"ACCEPTANCE {num:02d} {name}: {verdict} ({detail})"
    print(line)
    assert ok, line


# ------------------------------------------------ shared crisis construction

CRISIS = dict(sigma=0.01, T=400, t0=100, block=(300, 310), shock=-0.1,
              h=0.005, omega=0.98, path_seed=42, bands_seed=7,
              n_paths=1000, n_grid=512)


def crisis_series_and_bands():
    """Steady Gaussian returns with a 10-day block of -10 sigma shocks,
    tracked against the t0 density, plus 99% null bands."""
    c = CRISIS
    x = np.random.default_rng(c["path_seed"]).normal(0.0, c["sigma"], c["T"])
    bs, be = c["block"]
    x[bs:be] = c["shock"]
    series = {
        s.kind: s for s in divergence_series(
            x, c["t0"], c["h"], c["omega"], EPANECHNIKOV,
            n_grid=c["n_grid"])
    }
    cfg = NullSimConfig(n_paths=c["n_paths"], path_length=c["T"],
                        t0=c["t0"], sigma=c["sigma"], h=c["h"],
                        omega=c["omega"], kernel=EPANECHNIKOV,
                        seed=c["bands_seed"], n_grid=c["n_grid"])
    bands = {b.kind: b for b in confidence_bands(cfg)}
    return series, bands


@pytest.fixture(scope="module")
def crisis():
    return crisis_series_and_bands()


# -------------------------------------------------------------- criterion 1


def test_criterion_01_recursion_oracle():
    start = time.perf_counter()
    gen = np.random.default_rng(101)
    worst = 0.0
    for _ in range(100):
        total = int(gen.integers(10, 501))
        t0 = int(gen.integers(2, total))
        h = float(gen.uniform(0.05, 2.0))
        omega = 1.0 if gen.random() < 0.1 else float(gen.uniform(0.3, 0.999))
        kernel = EPANECHNIKOV if gen.random() < 0.5 else GAUSSIAN
        x = gen.normal(0.0, 1.0, total)
        d = init_dynamic(x[:t0], h=h, omega=omega, kernel=kernel)
        for xi in x[t0:]:
            d.update(xi)
        w = closed_form_weights(t0, total, omega)
        for q in np.linspace(x.min(), x.max(), 20):
            pdf_o, cdf_o = direct_pdf_cdf(x, w, h, float(q), kernel.kind)
            worst = max(worst, abs(d.pdf_at(float(q)) - pdf_o),
                        abs(d.cdf_at(float(q)) - cdf_o))
    elapsed = time.perf_counter() - start
    report(1, "recursion-vs-direct-weights", worst <= 1e-10 and elapsed < 10,
           f"max_abs_err={worst:.2e} <= 1e-10, {elapsed:.1f}s < 10s")


# -------------------------------------------------------------- criterion 2


def test_criterion_02_statistic_oracles():
    start = time.perf_counter()
    gen = np.random.default_rng(202)
    worst = 0.0
    for _ in range(100):
        n = int(gen.integers(30, 201))
        z = gen.random(n)
        pits = PitSeries(values=z, t0=5)
        worst = max(worst, abs(ks_uniform(pits) - brute_k(z)))
        for tau in (1, 5, 22):
            worst = max(worst, abs(ks_lagged(pits, tau)
                                   - brute_k_lagged(z, tau)))
    for _ in range(100):
        n = int(gen.integers(12, 101))
        z = gen.random(n)
        nu = int(gen.integers(1, 11))
        got = d_nu_alt(PitSeries(values=z, t0=5),
                       CriterionConfig(nu=nu, variant="d_nu_alt"))
        worst = max(worst, abs(got - brute_d_nu_alt_prefix(z, nu)))
    elapsed = time.perf_counter() - start
    report(2, "statistic-brute-force-oracles",
           worst <= 1e-12 and elapsed < 30,
           f"max_abs_err={worst:.2e} <= 1e-12, {elapsed:.1f}s < 30s")


# -------------------------------------------------------------- criterion 3


def test_criterion_03_divergence_closed_forms():
    start = time.perf_counter()
    grid = np.linspace(-10, 11, 40001)
    a = GriddedDistribution(grid=grid, pdf=scipy.stats.norm.pdf(grid),
                            cdf=scipy.stats.norm.cdf(grid))
    b = GriddedDistribution(grid=grid, pdf=scipy.stats.norm.pdf(grid, 1),
                            cdf=scipy.stats.norm.cdf(grid, 1))
    ks = ks_distance(a, b)
    he = hellinger(a, b)
    w1 = wasserstein1(a, b)
    kl = kl_divergence(a, b)
    elapsed = time.perf_counter() - start
    ok = (abs(ks - 0.38292) <= 1e-3 and abs(he - 0.34256) <= 1e-3
          and abs(w1 - 1.0) <= 2e-3 and abs(kl - 0.5) <= 5e-3
          and elapsed < 5)
    report(3, "divergence-closed-forms", ok,
           f"ks={ks:.5f}(0.38292±1e-3) hellinger={he:.5f}(0.34256±1e-3) "
           f"w1={w1:.5f}(1±2e-3) kl={kl:.5f}(0.5±5e-3), {elapsed:.1f}s < 5s")


# -------------------------------------------------------------- criterion 4


def test_criterion_04_dynamic_cauchy_study_ten_seeds():
    start = time.perf_counter()
    n_h = n_w = n_ks = 0
    for seed in range(10):
        cfg = CauchyStudyConfig(n=2000, t0=1000, seed=seed)
        rep = run_method_comparison(cfg, include_static=False)
        n_h += rep.dynamic_pit.h_opt < rep.dynamic_likelihood.h_opt
        n_w += rep.dynamic_pit.omega_opt < rep.dynamic_likelihood.omega_opt
        n_ks += (rep.dynamic_averages["pit"]["ks"]
                 < rep.dynamic_averages["likelihood"]["ks"])
    elapsed = time.perf_counter() - start
    ok = n_h >= 8 and n_w >= 8 and n_ks >= 8 and elapsed < 1200
    report(4, "dynamic-cauchy-orderings", ok,
           f"h_pit<h_lik in {n_h}/10, omega_pit<omega_lik in {n_w}/10, "
           f"avg-ks pit<lik in {n_ks}/10 (all need >=8), "
           f"{elapsed:.0f}s < 1200s")


# -------------------------------------------------------------- criterion 5


def test_criterion_05_static_cauchy_study_ten_seeds():
    start = time.perf_counter()
    n_sweep = 0
    for seed in range(10):
        cfg = CauchyStudyConfig(n=2000, t0=1000, seed=seed)
        _, _, div = run_static_comparison(cfg)
        n_sweep += all(div["pit"][k] < div["likelihood"][k]
                       for k in ("ks", "hellinger", "wasserstein1", "kl"))
    elapsed = time.perf_counter() - start
    ok = n_sweep >= 8 and elapsed < 600
    report(5, "static-cauchy-all-divergences", ok,
           f"pit h beats likelihood h on all 4 divergences in "
           f"{n_sweep}/10 seeds (needs >=8), {elapsed:.0f}s < 600s")


# -------------------------------------------------------------- criterion 6


def test_criterion_06_constrained_omega_bound():
    start = time.perf_counter()
    gen = np.random.default_rng(606)
    x = gen.normal(0.0, 0.01, 220)
    res = select(SelectionProblem(returns=x, t0=150, criterion="pit_d_nu",
                                  constrained=True, nu=22))
    elapsed = time.perf_counter() - start
    floor = 1 - 1 / 22
    ok = res.omega_opt > floor and res.omega_opt > 0.954545
    report(6, "constrained-selection-omega-floor", ok,
           f"omega_opt={res.omega_opt:.6f} > 1-1/22={floor:.6f} "
           f"and > 0.954545, {elapsed:.0f}s")


# -------------------------------------------------------------- criterion 7


def test_criterion_07_band_monotonicity_and_coverage():
    start = time.perf_counter()
    cfg = NullSimConfig(n_paths=1000, path_length=400, t0=100, sigma=0.01,
                        h=0.005, omega=0.97, kernel=EPANECHNIKOV, seed=0,
                        n_grid=512)
    bands = confidence_bands(cfg)
    monotone = all(
        np.all(b.curves[0.99] >= b.curves[0.95])
        and np.all(b.curves[0.999] >= b.curves[0.99]) for b in bands)

    fresh_cfg = NullSimConfig(n_paths=500, path_length=400, t0=100,
                              sigma=0.01, h=0.005, omega=0.97,
                              kernel=EPANECHNIKOV, seed=1234, n_grid=512)
    fresh = simulate_null_paths(fresh_cfg)
    fresh_series = batch_divergence_series(
        fresh, cfg.t0, cfg.h, cfg.omega, cfg.kernel,
        ("ks", "hellinger", "wasserstein1", "kl"), n_grid=cfg.n_grid)
    rates = {}
    for b in bands:
        # skip the reference date itself, where everything is exactly 0
        exceed = fresh_series[b.kind][:, 1:] > b.curves[0.95][None, 1:]
        rates[b.kind] = float(np.mean(exceed))
    elapsed = time.perf_counter() - start
    coverage_ok = all(0.03 <= r <= 0.07 for r in rates.values())
    detail = " ".join(f"{k}={v:.3f}" for k, v in rates.items())
    report(7, "band-monotonicity-and-95-coverage",
           monotone and coverage_ok and elapsed < 300,
           f"monotone={monotone}, exceedance in [0.03, 0.07]: {detail}, "
           f"{elapsed:.0f}s < 300s")


# -------------------------------------------------------------- criterion 8


def test_criterion_08_crisis_mechanism(crisis):
    start = time.perf_counter()
    series, bands = crisis
    c = CRISIS
    bs, be = c["block"]
    t0 = c["t0"]
    window = slice(bs - t0, be - t0 + 15 + 1)  # block through +15 days

    exceeds = {}
    for kind in ("hellinger", "wasserstein1", "kl"):
        band99 = bands[kind].curves[0.99]
        exceeds[kind] = bool(np.any(series[kind].values[window]
                                    > band99[window]))

    pre = bs - t0       # last pre-block date
    post = be - t0 + 5  # shortly after the block
    rel = {}
    for kind in ("ks", "wasserstein1"):
        v = series[kind].values
        rel[kind] = (v[post] - v[pre]) / v[pre]
    factor = rel["wasserstein1"] / rel["ks"]
    elapsed = time.perf_counter() - start
    ok = all(exceeds.values()) and factor >= 5 and elapsed < 300
    report(8, "crisis-mechanism", ok,
           f"99%-band exceeded within 15 days: {exceeds}, "
           f"W1-vs-KS relative-change factor={factor:.2f} >= 5, "
           f"{elapsed:.0f}s < 300s")


# -------------------------------------------------------------- criterion 9


def test_criterion_09_peak_detection(crisis):
    series, _ = crisis
    bs, be = CRISIS["block"]
    date, value = peak_date(series["hellinger"])
    ok = bs <= date <= be + 20
    report(9, "crisis-peak-date", ok,
           f"hellinger peak at t={date} (value {value:.3f}), "
           f"required in [{bs}, {be + 20}]")


# ------------------------------------------------------------- criterion 10


def test_criterion_10_cli_determinism(tmp_path, price_csv):
    from tvkde.cli import main

    start = time.perf_counter()
    out = tmp_path / "det"
    args = ["track", "--input", str(price_csv), "--t0", "150",
            "--h", "0.004", "--omega", "0.97", "--peak", "--bands",
            "--n-paths", "100", "--seed", "9", "--nu", "3",
            "--out", str(out)]
    code1 = main(args)
    first = {p.name: p.read_bytes() for p in sorted(out.iterdir())}
    code2 = main(args)
    second = {p.name: p.read_bytes() for p in sorted(out.iterdir())}
    elapsed = time.perf_counter() - start
    ok = code1 == 0 and code2 == 0 and first == second and len(first) >= 9
    report(10, "cli-byte-identical-reruns", ok,
           f"{len(first)} output files identical across reruns, "
           f"{elapsed:.0f}s")
