"""Command-line entry point.

Subcommands:

* ``decompose``   — multiresolution analysis of one series to CSV files
* ``measure``     — compute a single named core measure
* ``select``      — run the wavelet screening pipeline, write the audit trail
* ``evaluate``    — full battery over all configured measures
* ``gen-critical-values`` — regenerate the simulated critical-value tables
* ``fetch``       — download a CSV into the data archive (convenience only)

Exit codes: 0 success, 2 configuration error, 3 data error, 4 numerical
failure.
"""
from __future__ import annotations

import argparse
import sys
import urllib.request
from pathlib import Path

from .. import econometrics as em
from ..errors import ConfigError, DataError, IoError, NumericalError
from ..estimators import (
    arma11_core,
    exp_smooth_core,
    moving_average_core,
    trimmed_mean_core,
    wavelet_core,
    weighted_median_core,
    yoy_log_inflation,
)
from ..selection import audit_rows, run_selection
from ..wavelet import (
    WaveletSpec,
    decompose,
    reconstruct_approximation,
    reconstruct_details,
)
from ..series import MonthlySeries
from .config import load_config, parse_wavelet_name
from .evaluate import run_evaluation
from .io import archive_dir, load_panel_csv, load_series_csv, write_series_csv
from .report import emit_report


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="corewave",
        description="wavelet-based core inflation measurement and evaluation",
    )
    parser.add_argument("--config", default=None, help="path to key=value config file")
    parser.add_argument("--seed", type=int, default=0, help="RNG seed override")
    parser.add_argument("--out", default=".", help="output directory")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", help="multiresolution analysis of a series")
    p.add_argument("input", help="CSV with header date,value")
    p.add_argument("--wavelet", required=True, help="e.g. haar, db4, sym5")
    p.add_argument("--level", type=int, required=True)

    p = sub.add_parser("measure", help="compute one named core measure")
    p.add_argument("name", help="e.g. weighted_median, trim_9, ma_long, db3-L5")

    p = sub.add_parser("select", help="screen the wavelet candidate grid")

    p = sub.add_parser("evaluate", help="run the full evaluation battery")
    p.add_argument("--format", choices=("tsv", "jsonl"), default="tsv")

    p = sub.add_parser("gen-critical-values", help="re-simulate test tables")
    p.add_argument("--reps", type=int, default=200_000)

    p = sub.add_parser("fetch", help="download a CSV into the data archive")
    p.add_argument("url")
    p.add_argument("--name", required=True, help="archive file name")
    return parser


def _parse_wavelet_arg(text: str):
    text = text.strip().lower()
    if text == "haar":
        return "haar", 1
    for family, prefix in (("daubechies", "db"), ("symlet", "sym")):
        if text.startswith(prefix) and text[len(prefix):].isdigit():
            return family, int(text[len(prefix):])
    raise ConfigError(f"cannot parse wavelet name: {text!r}")


def _cmd_decompose(args, out: Path) -> None:
    series = load_series_csv(Path(args.input))
    family, order = _parse_wavelet_arg(args.wavelet)
    spec = WaveletSpec(family, order, args.level)
    dec = decompose(series.values, spec)
    for j in range(1, args.level + 1):
        smooth = reconstruct_approximation(dec, j)
        write_series_csv(out / f"smooth_L{j}.csv", MonthlySeries(series.start, smooth))
        detail = reconstruct_details(dec, j)
        write_series_csv(out / f"detail_L{j}.csv", MonthlySeries(series.start, detail))
    print(f"wrote {2 * args.level} files to {out}")


def _load_parent(cfg):
    index = load_series_csv(cfg.resolve(cfg.parent_index))
    return yoy_log_inflation(index).window(cfg.sample_start, cfg.sample_end)


def _cmd_measure(args, cfg, out: Path) -> None:
    name = args.name.strip()
    parent = _load_parent(cfg)
    if name in ("weighted_median",) or name.startswith("trim_"):
        if not cfg.panel:
            raise ConfigError(f"[{name}/ingestion] measure requires a component panel")
        panel = load_panel_csv(cfg.resolve(cfg.panel))
        if name == "weighted_median":
            core = weighted_median_core(panel)
        else:
            core = trimmed_mean_core(panel, float(name[len("trim_"):]))
    elif name in ("ma_long", "ma_short"):
        window = cfg.ma_windows[0 if name == "ma_long" else 1]
        full = yoy_log_inflation(load_series_csv(cfg.resolve(cfg.parent_index)))
        core = moving_average_core(full, window)
    elif name == "exp_smooth":
        full = yoy_log_inflation(load_series_csv(cfg.resolve(cfg.parent_index)))
        core = exp_smooth_core(full, cfg.smoother)
    elif name == "arma11":
        full = yoy_log_inflation(load_series_csv(cfg.resolve(cfg.parent_index)))
        core = arma11_core(full).core
    elif name in cfg.published_cores:
        core = yoy_log_inflation(load_series_csv(cfg.resolve(cfg.published_cores[name])))
    else:
        spec = parse_wavelet_name(name)
        core = wavelet_core(parent, spec)
    core = core.window(cfg.sample_start, cfg.sample_end)
    path = out / f"{name}.csv"
    write_series_csv(path, core)
    print(f"wrote {path}")


def _cmd_select(args, cfg, out: Path) -> None:
    parent = _load_parent(cfg)
    candidates = run_selection(parent, **cfg.selection)
    path = out / "selection_audit.tsv"
    path.write_text("\n".join(audit_rows(candidates)) + "\n")
    kept = sum(1 for c in candidates if c.status == "kept")
    print(f"{kept} of {len(candidates)} candidates kept; audit at {path}")


def _cmd_evaluate(args, cfg, out: Path) -> None:
    report = run_evaluation(cfg)
    written = emit_report(report, out, fmt=args.format)
    print(f"wrote {len(written)} files to {out}")


def _cmd_gen_critical_values(args, out: Path) -> None:
    path = out / "critical_values.txt"
    em.generate_critical_value_tables(path, reps=args.reps, seed=args.seed)
    print(f"wrote {path}")


def _cmd_fetch(args, out: Path) -> None:
    target = archive_dir() / args.name
    target.parent.mkdir(parents=True, exist_ok=True)
    try:
        with urllib.request.urlopen(args.url) as resp:
            data = resp.read()
    except OSError as exc:
        raise IoError(f"fetch failed: {exc}") from exc
    target.write_bytes(data)
    print(f"wrote {target} ({len(data)} bytes)")


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    out = Path(args.out)
    try:
        out.mkdir(parents=True, exist_ok=True)
        if args.command in ("measure", "select", "evaluate"):
            cfg = load_config(args.config, archive_dir(), seed=args.seed)
        if args.command == "decompose":
            _cmd_decompose(args, out)
        elif args.command == "measure":
            _cmd_measure(args, cfg, out)
        elif args.command == "select":
            _cmd_select(args, cfg, out)
        elif args.command == "evaluate":
            _cmd_evaluate(args, cfg, out)
        elif args.command == "gen-critical-values":
            args.seed = args.seed or 20020131
            _cmd_gen_critical_values(args, out)
        elif args.command == "fetch":
            _cmd_fetch(args, out)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except DataError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return 3
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 4
    except OSError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
