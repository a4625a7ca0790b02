"""Command-line interface: select, snapshot, track, bands, peak, simstudy,
report.

Every output file starts with a metadata header (tool version, hash of the
resolved configuration, seed) and contains no timestamps, so repeated runs
with the same configuration are byte-identical.

Exit codes: 0 ok, 2 data/format error, 3 optimization failure, 4 internal
invariant violation.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .bands import DEFAULT_LEVELS, NullSimConfig, confidence_bands
from .data import load_prices, resolve_t0, to_returns
from .divergence import DIVERGENCE_KINDS, divergence_series, peak_date
from .dynamic_density import default_grid, init_dynamic
from .errors import DataError, ParameterError, SelectionError, TvkdeError
from .kernels import kernel_by_name
from .selection import SelectionProblem, select
from .simstudy import CauchyStudyConfig, run_method_comparison, true_density_on_grid
from .svg import line_chart

CRITERION_NAMES = {"pit": "pit_d_nu", "pit-alt": "pit_D_nu",
                   "likelihood": "likelihood"}
VARIANT_LABELS = {"pit_d_nu": "d_nu", "pit_D_nu": "D_nu",
                  "likelihood": "likelihood"}


def _config_hash(resolved: dict) -> str:
    blob = json.dumps(resolved, sort_keys=True, default=str)
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


def _meta(resolved: dict, seed: int) -> dict:
    return {"tool": "tvkde", "version": __version__,
            "config_hash": _config_hash(resolved), "seed": seed}


def _meta_comment(meta: dict) -> str:
    return (f"tvkde {meta['version']} config_hash={meta['config_hash']} "
            f"seed={meta['seed']}")


def _write_csv(path: Path, meta: dict, header: list[str],
               rows) -> None:
    lines = [f"# tvkde {meta['version']}",
             f"# config_hash={meta['config_hash']}",
             f"# seed={meta['seed']}",
             ",".join(header)]
    for row in rows:
        lines.append(",".join(
            f"{v:.12g}" if isinstance(v, float) else str(v) for v in row))
    path.write_text("\n".join(lines) + "\n")


def _write_json(path: Path, meta: dict, payload: dict) -> None:
    path.write_text(json.dumps({"meta": meta, **payload}, indent=2,
                               sort_keys=True, default=str) + "\n")


def _load_return_series(args):
    prices = load_prices(args.input, date_col=args.date_col,
                         close_col=args.close_col)
    return to_returns(prices, kind=args.return_kind)


def _resolve_t0_arg(series, raw: str) -> int:
    try:
        return resolve_t0(series, int(raw))
    except ValueError:
        pass
    return resolve_t0(series, raw)


def _resolved_config(args) -> dict:
    skip = {"func"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


# ---------------------------------------------------------------- select


def cmd_select(args) -> int:
    series = _load_return_series(args)
    t0 = _resolve_t0_arg(series, args.t0)
    kernel = kernel_by_name(args.kernel)
    h_bounds = None
    if args.h_min is not None or args.h_max is not None:
        scale = float(np.std(series.returns)) or 1.0
        h_bounds = (args.h_min if args.h_min is not None else 1e-5 * scale,
                    args.h_max if args.h_max is not None else 1e-1 * scale)
    criterion = CRITERION_NAMES[args.criterion]
    problem = SelectionProblem(
        returns=series.returns, t0=t0, criterion=criterion,
        constrained=args.constrained, nu=args.nu, h_bounds=h_bounds,
        omega_bounds=(args.omega_min, args.omega_max), kernel=kernel)
    result = select(problem)

    meta = _meta(_resolved_config(args), args.seed)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    _write_json(out / "select_report.json", meta, {
        "h_opt": result.h_opt,
        "omega_opt": result.omega_opt,
        "criterion_value": result.criterion_value,
        "evaluations": result.evaluations,
        "criterion": args.criterion,
        "variant": VARIANT_LABELS[criterion],
        "constrained": args.constrained,
        "nu": args.nu,
        "kernel": kernel.kind,
        "t0_index": t0,
    })
    _write_csv(out / "select_trace.csv", meta, ["h", "omega", "value"],
               ((h, w, v) for h, w, v in result.search_trace))
    print(f"h_opt={result.h_opt:.6g} omega_opt={result.omega_opt:.6g} "
          f"criterion_value={result.criterion_value:.6g}")
    return 0


# -------------------------------------------------------------- snapshot


def cmd_snapshot(args) -> int:
    series = _load_return_series(args)
    t0 = _resolve_t0_arg(series, args.t0)
    kernel = kernel_by_name(args.kernel)
    dens = init_dynamic(series.returns[:t0], args.h, args.omega, kernel)
    for x in series.returns[t0:]:
        dens.update(x)
    grid = default_grid(series.returns, args.h)
    pdf, cdf = dens.evaluate_on_grid(grid)

    meta = _meta(_resolved_config(args), args.seed)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    _write_csv(out / "density_snapshot.csv", meta, ["x", "pdf", "cdf"],
               zip(grid.tolist(), pdf.tolist(), cdf.tolist()))
    _write_json(out / "density_snapshot.json", meta, {
        "h": args.h, "omega": args.omega, "kernel": kernel.kind,
        "t": dens.t, "grid": grid.tolist(), "pdf": pdf.tolist(),
        "cdf": cdf.tolist(),
    })
    return 0


# ----------------------------------------------------------------- track


def _band_config(args, series, t0: int) -> NullSimConfig:
    sigma = args.sigma
    if sigma is None:
        sigma = float(np.std(series.returns[:t0]))
    return NullSimConfig(n_paths=args.n_paths, path_length=len(series),
                         t0=t0, sigma=sigma, h=args.h, omega=args.omega,
                         kernel=kernel_by_name(args.kernel),
                         levels=DEFAULT_LEVELS, seed=args.seed)


def cmd_track(args) -> int:
    series = _load_return_series(args)
    t0 = _resolve_t0_arg(series, args.t0)
    kernel = kernel_by_name(args.kernel)
    kinds = tuple(args.kinds.split(","))
    dates = [series.dates[t0 - 1 + i].isoformat()
             for i in range(len(series) - t0 + 1)]
    all_series = divergence_series(series.returns, t0, args.h, args.omega,
                                   kernel, kinds=kinds)

    band_curves = {}
    if args.bands:
        cfg = _band_config(args, series, t0)
        for band in confidence_bands(cfg, kinds=kinds):
            band_curves[band.kind] = band

    meta = _meta(_resolved_config(args), args.seed)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    peaks = {}
    for dseries in all_series:
        kind = dseries.kind
        _write_csv(out / f"track_{kind}.csv", meta, ["date", "value"],
                   zip(dates, dseries.values.tolist()))
        xs = np.arange(dseries.values.size)
        curves = [(kind, xs, dseries.values)]
        bands = []
        if kind in band_curves:
            band = band_curves[kind]
            bands = [(f"q{int(p * 1000) / 10:g}%", xs, band.curves[p])
                     for p in band.levels]
        svg = line_chart(curves, title=f"{kind} divergence vs reference",
                         x_label="days since reference", y_label=kind,
                         bands=bands, comment=_meta_comment(meta))
        (out / f"track_{kind}.svg").write_text(svg)
        if args.peak:
            idx, value = peak_date(dseries)
            pos = int(idx) - t0
            peaks[kind] = {
                "value_at_start": float(dseries.values[0]),
                "value_early": float(dseries.values[min(5, len(dates) - 1)]),
                "peak_date": dates[pos],
                "peak_value": value,
                "value_at_end": float(dseries.values[-1]),
            }
    if args.peak:
        _write_json(out / "peaks.json", meta, {"peaks": peaks})
    return 0


# ----------------------------------------------------------------- bands


def cmd_bands(args) -> int:
    series = _load_return_series(args)
    t0 = _resolve_t0_arg(series, args.t0)
    kinds = tuple(args.kinds.split(","))
    cfg = _band_config(args, series, t0)
    meta = _meta(_resolved_config(args), args.seed)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for band in confidence_bands(cfg, kinds=kinds):
        header = ["date"] + [f"q{int(p * 1000) / 10:g}" for p in band.levels]
        rows = zip(band.dates.tolist(),
                   *[band.curves[p].tolist() for p in band.levels])
        _write_csv(out / f"bands_{band.kind}.csv", meta, header, rows)
    return 0


# ------------------------------------------------------------------ peak


def cmd_peak(args) -> int:
    path = Path(args.series)
    if not path.exists():
        raise DataError(f"input file not found: {path}")
    dates, values = [], []
    for line in path.read_text().splitlines():
        if line.startswith("#") or line.startswith("date"):
            continue
        date, value = line.split(",")
        dates.append(date)
        values.append(float(value))
    if not values:
        raise DataError(f"no data rows in {path}")
    arr = np.asarray(values)
    idx = int(np.argmax(arr))
    meta = _meta(_resolved_config(args), args.seed)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    _write_json(out / "peak.json", meta, {
        "peak_date": dates[idx], "peak_value": float(arr[idx]),
        "peak_index": idx,
    })
    print(f"peak {dates[idx]} value={arr[idx]:.6g}")
    return 0


# -------------------------------------------------------------- simstudy


def cmd_simstudy(args) -> int:
    kernel = kernel_by_name(args.kernel)
    meta = _meta(_resolved_config(args), args.seed)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    reports = []
    for k in range(args.seeds):
        cfg = CauchyStudyConfig(n=args.n, t0=args.t0, seed=args.seed + k)
        reports.append((cfg, run_method_comparison(cfg, kernel=kernel,
                                                   nu=args.nu)))

    per_seed = []
    for cfg, rep in reports:
        per_seed.append({
            "seed": cfg.seed,
            "dynamic": {
                "pit": {"h": rep.dynamic_pit.h_opt,
                        "omega": rep.dynamic_pit.omega_opt},
                "likelihood": {"h": rep.dynamic_likelihood.h_opt,
                               "omega": rep.dynamic_likelihood.omega_opt},
                "averages": rep.dynamic_averages,
            },
            "static": {
                "pit_h": rep.static_pit.h_opt,
                "likelihood_h": rep.static_likelihood.h_opt,
                "divergences": rep.static_divergences,
            },
        })
    n_h = sum(r.dynamic_pit.h_opt < r.dynamic_likelihood.h_opt
              for _, r in reports)
    n_w = sum(r.dynamic_pit.omega_opt < r.dynamic_likelihood.omega_opt
              for _, r in reports)
    n_ks = sum(r.dynamic_averages["pit"]["ks"]
               < r.dynamic_averages["likelihood"]["ks"] for _, r in reports)
    _write_json(out / "simstudy_report.json", meta, {
        "seeds": args.seeds,
        "orderings": {"h_pit_below_likelihood": n_h,
                      "omega_pit_below_likelihood": n_w,
                      "ks_avg_pit_below_likelihood": n_ks},
        "per_seed": per_seed,
    })

    # figure analogues from the first seed
    cfg, rep = reports[0]
    steps = np.arange(cfg.t0, cfg.n)
    rows = []
    for j, t in enumerate(steps):
        row = [int(t)]
        for method in ("pit", "likelihood"):
            row.extend(float(rep.dynamic_series[method][kind][j])
                       for kind in DIVERGENCE_KINDS)
        rows.append(tuple(row))
    header = ["t"] + [f"{m}_{k}" for m in ("pit", "likelihood")
                      for k in DIVERGENCE_KINDS]
    _write_csv(out / "simstudy_series.csv", meta, header, rows)
    for kind in DIVERGENCE_KINDS:
        svg = line_chart(
            [("pit", steps, rep.dynamic_series["pit"][kind]),
             ("likelihood", steps, rep.dynamic_series["likelihood"][kind])],
            title=f"{kind} divergence vs true density",
            x_label="t", y_label=kind, comment=_meta_comment(meta))
        (out / f"simstudy_{kind}.svg").write_text(svg)

    # final-date density overlay, forecast at the last step vs truth
    from .simstudy import sample_cauchy_path
    x = sample_cauchy_path(cfg)
    grid = np.linspace(cfg.n * cfg.drift_rate - 15.0,
                       cfg.n * cfg.drift_rate + 15.0, 800)
    truth = true_density_on_grid(cfg, cfg.n, grid)
    curves = [("true", grid, truth.pdf)]
    for method, res in (("pit", rep.dynamic_pit),
                        ("likelihood", rep.dynamic_likelihood)):
        dens = init_dynamic(x[: cfg.n - 1], res.h_opt, res.omega_opt, kernel)
        curves.append((method, grid, dens.pdf_at(grid)))
    svg = line_chart(curves, title="forecast density at the final date",
                     x_label="x", y_label="pdf",
                     comment=_meta_comment(meta))
    (out / "simstudy_density.svg").write_text(svg)
    return 0


# ---------------------------------------------------------------- report


def cmd_report(args) -> int:
    if not args.reports:
        raise DataError("need at least one selection report")
    entries = []
    for path in args.reports:
        p = Path(path)
        if not p.exists():
            raise DataError(f"input file not found: {p}")
        doc = json.loads(p.read_text())
        entries.append({"path": str(p), "h_opt": doc["h_opt"],
                        "omega_opt": doc["omega_opt"],
                        "criterion_value": doc["criterion_value"],
                        "constrained": doc.get("constrained"),
                        "source_meta": doc.get("meta", {})})
    common_h = max(e["h_opt"] for e in entries)
    common_omega = min(e["omega_opt"] for e in entries)
    meta = _meta(_resolved_config(args), args.seed)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    _write_json(out / "combined_report.json", meta, {
        "common_pair": {"h": common_h, "omega": common_omega},
        "sources": entries,
    })
    print(f"common pair h={common_h:.6g} omega={common_omega:.6g}")
    return 0


# ------------------------------------------------------------------ main


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--kernel", default="epanechnikov",
                        choices=["epanechnikov", "gaussian"])
    parser.add_argument("--nu", type=int, default=22)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--out", default="tvkde_out")
    parser.add_argument("--config", default=None,
                        help="key=value file; flags override it")


def _add_input(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--input", required=True, help="price CSV")
    parser.add_argument("--date-col", default="Date")
    parser.add_argument("--close-col", default="Close")
    parser.add_argument("--return-kind", default="log",
                        choices=["log", "simple"])
    parser.add_argument("--t0", required=True,
                        help="reference date (ISO) or 1-based return index")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tvkde")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("select", help="select (h, omega)")
    _add_common(p)
    _add_input(p)
    p.add_argument("--criterion", default="pit",
                   choices=["pit", "pit-alt", "likelihood"])
    p.add_argument("--constrained", action="store_true")
    p.add_argument("--h-min", type=float, default=None)
    p.add_argument("--h-max", type=float, default=None)
    p.add_argument("--omega-min", type=float, default=0.01)
    p.add_argument("--omega-max", type=float, default=1.0)
    p.set_defaults(func=cmd_select)

    p = sub.add_parser("snapshot", help="export the current density")
    _add_common(p)
    _add_input(p)
    p.add_argument("--h", type=float, required=True)
    p.add_argument("--omega", type=float, required=True)
    p.set_defaults(func=cmd_snapshot)

    p = sub.add_parser("track", help="daily divergences vs the t0 density")
    _add_common(p)
    _add_input(p)
    p.add_argument("--h", type=float, required=True)
    p.add_argument("--omega", type=float, required=True)
    p.add_argument("--kinds", default=",".join(DIVERGENCE_KINDS))
    p.add_argument("--peak", action="store_true")
    p.add_argument("--bands", action="store_true")
    p.add_argument("--sigma", type=float, default=None)
    p.add_argument("--n-paths", type=int, default=1000)
    p.set_defaults(func=cmd_track)

    p = sub.add_parser("bands", help="Monte Carlo null confidence bands")
    _add_common(p)
    _add_input(p)
    p.add_argument("--h", type=float, required=True)
    p.add_argument("--omega", type=float, required=True)
    p.add_argument("--kinds", default=",".join(DIVERGENCE_KINDS))
    p.add_argument("--sigma", type=float, default=None)
    p.add_argument("--n-paths", type=int, default=1000)
    p.set_defaults(func=cmd_bands)

    p = sub.add_parser("peak", help="peak of a tracked divergence series")
    _add_common(p)
    p.add_argument("--series", required=True, help="a track_*.csv file")
    p.set_defaults(func=cmd_peak)

    p = sub.add_parser("simstudy", help="drifting-Cauchy method comparison")
    _add_common(p)
    p.add_argument("--seeds", type=int, default=1)
    p.add_argument("--n", type=int, default=2000)
    p.add_argument("--t0", type=int, default=1000)
    p.set_defaults(func=cmd_simstudy)
    p.set_defaults(kernel="gaussian")

    p = sub.add_parser("report", help="aggregate selection reports")
    _add_common(p)
    p.add_argument("reports", nargs="*")
    p.set_defaults(func=cmd_report)

    return parser


def _apply_config_file(parser: argparse.ArgumentParser, argv) -> list[str]:
    """key=value config file: applied as defaults, overridden by flags."""
    if "--config" not in argv:
        return argv
    idx = argv.index("--config")
    path = Path(argv[idx + 1])
    if not path.exists():
        raise DataError(f"config file not found: {path}")
    overrides = {}
    for line in path.read_text().splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        key, _, value = line.partition("=")
        overrides[key.strip().replace("-", "_")] = value.strip()
    parser.set_defaults(**overrides)
    # a config value satisfies options that are otherwise required
    for action in parser._actions:
        if isinstance(action, argparse._SubParsersAction):
            for sub in action.choices.values():
                for sub_action in sub._actions:
                    if sub_action.dest in overrides:
                        sub_action.default = overrides[sub_action.dest]
                        sub_action.required = False
    return argv


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        argv = _apply_config_file(parser, argv)
        args = parser.parse_args(argv)
        # config-file values arrive as strings; coerce the numeric ones
        for name in ("nu", "seed", "n_paths", "seeds", "n"):
            if hasattr(args, name) and isinstance(getattr(args, name), str):
                setattr(args, name, int(getattr(args, name)))
        for name in ("h", "omega", "sigma", "h_min", "h_max",
                     "omega_min", "omega_max"):
            if hasattr(args, name) and isinstance(getattr(args, name), str):
                setattr(args, name, float(getattr(args, name)))
        return args.func(args)
    except (DataError, ParameterError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SelectionError as exc:
        print(f"selection failed: {exc}", file=sys.stderr)
        return 3
    except TvkdeError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
