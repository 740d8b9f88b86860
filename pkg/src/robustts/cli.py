"""Command-line front end: ingest the data files, run each analysis, render tables.

Subcommands
-----------
unitroot   battery + bootstrap p-values, one two-line row per country and
           difference order (d1, d2)
tailindex  Hill and rank-size curve files over the truncation grid
predict    predictive-regression table: grouped t per q and starred HAC t
factors    factor-model table (CAPM..6-F) with stacked t-statistic lines

Price files are named ``<Country>_<Index>.csv``; the country part pairs the
index with the matching counts series for predictive regressions.  Exit
codes: 0 ok, 2 usage, 3 data error, 4 numerical failure.  Every run writes a
``key=value`` manifest recording seed, B and input hashes next to the output.
"""

from __future__ import annotations

import argparse
import hashlib
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__
from .bootstrap import BootstrapResult, UnitRootReport, unit_root_report
from .errors import DataError, NumericalError
from .ingest import ingest_counts, ingest_factors, ingest_prices, ingest_rates
from .regression import factor_report, predictive_report
from .report import emit_tail_curve, factor_table, predict_table, render_table, unitroot_table
from .series import (
    Series,
    align_predictive,
    difference,
    excess_returns,
    positive_part,
    positive_window,
    simple_returns,
)
from .tailindex import k_grid, tail_curve
from .unitroot import UnitRootConfig, unit_root_battery

DEFAULT_B = 999
DEFAULT_QS = (4, 8, 12, 16)
DEFAULT_GRID = (0.025, 0.15, 20)


@dataclass
class RunConfig:
    command: str
    counts: Path | None = None
    prices_dir: Path | None = None
    rates: Path | None = None
    factors: Path | None = None
    countries: list[str] = field(default_factory=list)
    indices: list[str] = field(default_factory=list)
    regressor: str | None = None
    target: str = "infections"
    B: int = 0
    seed: int | None = None
    qs: tuple[int, ...] = DEFAULT_QS
    grid_lo: float = DEFAULT_GRID[0]
    grid_hi: float = DEFAULT_GRID[1]
    grid_steps: int = DEFAULT_GRID[2]
    fmt: str = "csv"
    out: Path | None = None
    workers: int = 1

    def validate(self, parser: argparse.ArgumentParser) -> None:
        if self.B > 0 and self.seed is None:
            parser.error("--seed is required when B > 0")
        if self.seed is not None and self.seed < 0:
            parser.error("--seed must be non-negative")
        if any(q < 2 for q in self.qs):
            parser.error("q values must be >= 2")
        if self.workers < 1:
            parser.error("--workers must be >= 1")


def _parse_qs(raw: str) -> tuple[int, ...]:
    try:
        return tuple(int(p) for p in raw.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad q list {raw!r}")


def _parse_list(raw: str) -> list[str]:
    return [p for p in raw.split(",") if p]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="robustts", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"robustts {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, bootstrap=False):
        p.add_argument("--format", choices=("csv", "md", "tex"), default="csv")
        p.add_argument("--out", type=Path, default=None)
        p.add_argument("--workers", type=int, default=1)
        p.add_argument("--q", type=_parse_qs, default=DEFAULT_QS, metavar="4,8,12,16")
        if bootstrap:
            p.add_argument("--B", type=int, default=DEFAULT_B)
            p.add_argument("--seed", type=int, default=None)

    p_ur = sub.add_parser("unitroot", help="unit-root battery with bootstrap p-values")
    p_ur.add_argument("--counts", type=Path, required=True)
    p_ur.add_argument("--target", choices=("infections", "deaths"), default="infections")
    p_ur.add_argument("--country", type=_parse_list, default=[], action="extend")
    common(p_ur, bootstrap=True)

    p_tail = sub.add_parser("tailindex", help="tail-index curve files")
    p_tail.add_argument("--counts", type=Path, required=True)
    p_tail.add_argument("--target", choices=("infections", "deaths"), default="infections")
    p_tail.add_argument("--country", type=_parse_list, default=[], action="extend")
    p_tail.add_argument("--grid-lo", type=float, default=DEFAULT_GRID[0])
    p_tail.add_argument("--grid-hi", type=float, default=DEFAULT_GRID[1])
    p_tail.add_argument("--grid-steps", type=int, default=DEFAULT_GRID[2])
    p_tail.add_argument("--out", type=Path, required=True, help="output directory")
    p_tail.add_argument("--workers", type=int, default=1)

    p_pred = sub.add_parser("predict", help="predictive-regression table")
    p_pred.add_argument("--counts", type=Path, required=True)
    p_pred.add_argument("--prices-dir", type=Path, required=True)
    p_pred.add_argument("--rates", type=Path, required=True)
    p_pred.add_argument("--target", choices=("infections", "deaths"), default="infections")
    p_pred.add_argument("--country", type=_parse_list, default=[], action="extend")
    p_pred.add_argument("--index", type=_parse_list, default=[], action="extend")
    p_pred.add_argument("--regressor", choices=("d1", "d2"), default=None,
                        help="difference order of the lagged regressor (default: both)")
    common(p_pred)

    p_fac = sub.add_parser("factors", help="factor-model table (CAPM..6-F)")
    p_fac.add_argument("--prices-dir", type=Path, required=True)
    p_fac.add_argument("--index", type=_parse_list, default=[], action="extend")
    p_fac.add_argument("--factors", type=Path, required=True)
    common(p_fac)

    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(command=args.command)
    mapping = {
        "counts": "counts", "prices_dir": "prices_dir", "rates": "rates",
        "factors": "factors", "country": "countries", "index": "indices",
        "regressor": "regressor", "target": "target", "B": "B", "seed": "seed",
        "q": "qs", "grid_lo": "grid_lo", "grid_hi": "grid_hi",
        "grid_steps": "grid_steps", "format": "fmt", "out": "out", "workers": "workers",
    }
    for arg_name, cfg_name in mapping.items():
        if hasattr(args, arg_name):
            setattr(cfg, cfg_name, getattr(args, arg_name))
    return cfg


def _sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def _write_manifest(path: Path, cfg: RunConfig, inputs: dict[str, Path]) -> None:
    lines = {
        "command": cfg.command,
        "version": __version__,
        "format": cfg.fmt,
        "B": str(cfg.B) if cfg.command == "unitroot" else "",
        "seed": str(cfg.seed) if cfg.seed is not None else "",
        "q": ",".join(str(q) for q in cfg.qs),
    }
    for label, p in sorted(inputs.items()):
        lines[f"input.{label}.sha256"] = _sha256(p)
    text = "".join(f"{k}={v}\n" for k, v in sorted(lines.items()))
    path.write_text(text, encoding="utf-8")


def _emit(cfg: RunConfig, payload: bytes, inputs: dict[str, Path]) -> None:
    if cfg.out is None:
        sys.stdout.write(payload.decode("utf-8"))
        return
    cfg.out.parent.mkdir(parents=True, exist_ok=True)
    cfg.out.write_bytes(payload)
    _write_manifest(cfg.out.with_name(cfg.out.name + ".manifest"), cfg, inputs)


def _select_countries(counts: dict[str, Series], wanted: list[str]) -> list[str]:
    if not wanted:
        return list(counts)
    missing = [c for c in wanted if c not in counts]
    if missing:
        raise DataError(f"countries not in counts file: {', '.join(missing)}")
    return [c for c in counts if c in set(wanted)]


def _run_jobs(jobs, fn, workers: int):
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(fn, jobs))
    return [fn(j) for j in jobs]


def cmd_unitroot(cfg: RunConfig) -> None:
    counts = ingest_counts(cfg.counts)
    names = _select_countries(counts, cfg.countries)
    jobs = []
    for name in names:
        window = positive_window(counts[name])
        for order, label in ((1, "d1"), (2, "d2")):
            jobs.append((f"{name} {label}", difference(window, order)))

    def one(indexed):
        idx, (label, series) = indexed
        if cfg.B > 0:
            report = unit_root_report(
                series, UnitRootConfig(), B=cfg.B, seed=(cfg.seed, idx), workers=1
            )
        else:
            stats = unit_root_battery(series, UnitRootConfig())
            report = UnitRootReport(stats, BootstrapResult(p_values={}, B=0, seed=()))
        return label, report

    entries = _run_jobs(list(enumerate(jobs)), one, cfg.workers)
    table = unitroot_table(entries, title=f"Unit root battery ({cfg.target})")
    _emit(cfg, render_table(table, cfg.fmt), {"counts": cfg.counts})


def cmd_tailindex(cfg: RunConfig) -> None:
    counts = ingest_counts(cfg.counts)
    names = _select_countries(counts, cfg.countries)
    cfg.out.mkdir(parents=True, exist_ok=True)
    jobs = []
    for name in names:
        sample = positive_part(difference(positive_window(counts[name]), 2))
        grid = k_grid(len(sample), cfg.grid_lo, cfg.grid_hi, cfg.grid_steps)
        for method in ("hill", "rank_size"):
            jobs.append((name, method, sample, grid))

    def one(job):
        name, method, sample, grid = job
        return name, method, emit_tail_curve(tail_curve(sample, method, grid))

    results = _run_jobs(jobs, one, cfg.workers)
    for name, method, payload in results:
        safe = name.replace(" ", "_").replace("/", "-")
        (cfg.out / f"{safe}_{cfg.target}_{method}.csv").write_bytes(payload)
    _write_manifest(cfg.out / "run.manifest", cfg, {"counts": cfg.counts})


def _price_files(cfg: RunConfig) -> list[tuple[str, str, Path]]:
    """(country, index, path) per price file, filtered by the selections."""
    files = sorted(cfg.prices_dir.glob("*.csv"))
    if not files:
        raise DataError(f"no price files in {cfg.prices_dir}")
    out = []
    for f in files:
        stem = f.stem
        if "_" not in stem:
            raise DataError(
                "price file name must be <Country>_<Index>.csv", path=f, field="file name"
            )
        country, index = stem.split("_", 1)
        if cfg.indices and index not in cfg.indices:
            continue
        if cfg.countries and country not in cfg.countries:
            continue
        out.append((country, index, f))
    if not out:
        raise DataError("no price files match the --index/--country selection")
    return out


def cmd_predict(cfg: RunConfig) -> None:
    counts = ingest_counts(cfg.counts)
    rates = ingest_rates(cfg.rates)
    selected = _price_files(cfg)
    orders = {"d1": (1,), "d2": (2,)}.get(cfg.regressor, (1, 2))
    jobs = []
    for country, index, path in selected:
        if country not in counts:
            raise DataError(f"no counts series for country {country!r}", path=path)
        excess = excess_returns(simple_returns(ingest_prices(path)), rates)
        window = positive_window(counts[country])
        for order in orders:
            regressor = difference(window, order)
            jobs.append((f"{country} {index} d{order}", excess, regressor))

    def one(job):
        label, excess, regressor = job
        pair = align_predictive_checked(excess, regressor, cfg.qs)
        return label, predictive_report(pair, cfg.qs)

    entries = _run_jobs(jobs, one, cfg.workers)
    table = predict_table(entries, cfg.qs, title=f"Predictive regressions ({cfg.target})")
    inputs = {"counts": cfg.counts, "rates": cfg.rates}
    inputs.update({f"prices.{index}": path for _, index, path in selected})
    _emit(cfg, render_table(table, cfg.fmt), inputs)


def align_predictive_checked(excess, regressor, qs):
    pair = align_predictive(excess, regressor)
    if 2 * max(qs) > pair.T:
        raise DataError(
            f"sample of {pair.T} paired observations cannot support q={max(qs)}"
        )
    return pair


def cmd_factors(cfg: RunConfig) -> None:
    selected = _price_files(cfg)
    if len(selected) != 1:
        raise DataError("factors needs exactly one --index selection")
    country, index, path = selected[0]
    panel = ingest_factors(cfg.factors)
    returns = simple_returns(ingest_prices(path))
    rf_by_date = dict(zip(panel.dates, panel.columns["RF"]))
    dates, values = [], []
    for d, r in zip(returns.dates, returns.values):
        if d in rf_by_date:
            dates.append(d)
            values.append(r - rf_by_date[d])
    if len(dates) < 8:
        raise DataError(f"only {len(dates)} return dates covered by the factor panel")
    excess = Series(tuple(dates), values)

    q0 = cfg.qs[0]
    reports = [
        factor_report(excess, panel, name, qs=(q0,))
        for name in ("CAPM", "3F", "4F", "5F", "6F")
    ]
    schemes = ["classical", "hac", f"grouped-{q0}"]
    table = factor_table(reports, schemes, title=f"Factor models ({country} {index})")
    _emit(cfg, render_table(table, cfg.fmt), {"factors": cfg.factors, f"prices.{index}": path})


COMMANDS = {
    "unitroot": cmd_unitroot,
    "tailindex": cmd_tailindex,
    "predict": cmd_predict,
    "factors": cmd_factors,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = _config_from_args(args)
    cfg.validate(parser)
    try:
        COMMANDS[cfg.command](cfg)
    except DataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 4
    return 0


if __name__ == "__main__":
    sys.exit(main())
