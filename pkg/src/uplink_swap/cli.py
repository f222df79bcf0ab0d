"""Command-line front end.

Exit codes: 0 success, 1 invalid configuration, 2 model/runtime failure,
3 optimizer did not converge (results are still written).
"""
from __future__ import annotations

import argparse
import dataclasses
import json
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import presets
from .config import ConfigError, defaults_text, parse_config, to_document
from .errors import ModelError
from .optimize import OptimizeResult, optimize
from .output import emit_results, fmt_number
from .scenario import evaluate_scenario
from .sweep import SweepResult, SweepRow, run_sweep

log = logging.getLogger("uplink_swap")

EXIT_OK, EXIT_CONFIG, EXIT_MODEL, EXIT_NOT_CONVERGED = 0, 1, 2, 3


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror or exc}") from None


def _write(text: str, out: Optional[str]) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    try:
        Path(out).write_text(text)
    except OSError as exc:
        raise OSError(f"cannot write results to {out}: {exc.strerror or exc}") from exc
    log.info("wrote %s", out)


def _cmd_eval(args: argparse.Namespace) -> int:
    params = parse_config(_read(args.config), "scenario", args.config)
    result = SweepResult((), (SweepRow((), evaluate_scenario(params)),))
    _write(emit_results(result, args.format), args.out)
    return EXIT_OK


def _cmd_sweep(args: argparse.Namespace) -> int:
    spec = parse_config(_read(args.config), "sweep", args.config)
    result = run_sweep(spec, workers=args.workers)
    n_err = sum(r.error is not None for r in result.rows)
    if n_err:
        log.warning("%d of %d grid points failed; see the error column", n_err, len(result.rows))
    _write(emit_results(result, args.format), args.out)
    return EXIT_OK


def _optimize_document(res: OptimizeResult, paths: Sequence[str]) -> dict:
    def num(x: float) -> float:
        return float(fmt_number(x))

    return {
        "converged": res.converged,
        "n_evaluations": res.n_evaluations,
        "objective": num(res.objective),
        "best_values": {p: num(v) for p, v in zip(paths, res.best_values)},
        "metrics": {k: num(v) for k, v in res.metrics.as_row().items()},
        "best": to_document(res.best_params),
        "trace": [
            {
                "values": {p: num(v) for p, v in zip(paths, e.values)},
                "objective": num(e.objective),
                "F": num(e.metrics.fidelity) if e.metrics else None,
                "eta_tot": num(e.metrics.eta_tot) if e.metrics else None,
                "error": e.error,
            }
            for e in res.trace
        ],
    }


def _cmd_optimize(args: argparse.Namespace) -> int:
    spec = parse_config(_read(args.config), "optimize", args.config)
    if args.seed is not None:
        spec = dataclasses.replace(spec, seed=args.seed)
    res = optimize(spec)
    paths = [fp.path for fp in spec.free]
    if args.format == "csv":
        trace = SweepResult(tuple(paths), tuple(SweepRow(e.values, e.metrics, e.error) for e in res.trace))
        text = emit_results(trace, "csv")
    else:
        text = json.dumps(_optimize_document(res, paths), indent=2) + "\n"
    _write(text, args.out)
    log.info("best F=%.6g eta_tot=%.6g after %d evaluations", res.metrics.fidelity, res.metrics.eta_tot, res.n_evaluations)
    if not res.converged:
        log.warning("optimizer stopped before reaching its tolerance")
        return EXIT_NOT_CONVERGED
    return EXIT_OK


def _cmd_figure(args: argparse.Namespace) -> int:
    spec = presets.PRESETS[args.preset](args.regime)
    result = run_sweep(spec, workers=args.workers)
    _write(emit_results(result, args.format), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="uplink-swap", description="Dual-uplink satellite entanglement-swapping simulator.")
    p.add_argument("--defaults", action="store_true", help="print the shipped defaults document and exit")
    p.add_argument("-v", "--verbose", action="count", default=0)
    sub = p.add_subparsers(dest="cmd")

    e = sub.add_parser("eval", help="evaluate one scenario")
    e.add_argument("--config", required=True)
    e.add_argument("--format", choices=("csv", "json"), default="csv")
    e.add_argument("--out")
    e.set_defaults(func=_cmd_eval)

    s = sub.add_parser("sweep", help="evaluate a parameter grid")
    s.add_argument("--config", required=True)
    s.add_argument("--out", required=True)
    s.add_argument("--format", choices=("csv", "json"), default="csv")
    s.add_argument("--workers", type=int, default=1)
    s.set_defaults(func=_cmd_sweep)

    o = sub.add_parser("optimize", help="search for the best-performing parameters")
    o.add_argument("--config", required=True)
    o.add_argument("--out", required=True)
    o.add_argument("--format", choices=("csv", "json"), default="json")
    o.add_argument("--seed", type=int, default=None)
    o.set_defaults(func=_cmd_optimize)

    f = sub.add_parser("figure", help="regenerate figure data from a preset")
    f.add_argument("--preset", choices=sorted(presets.PRESETS), required=True)
    f.add_argument("--out", required=True)
    f.add_argument("--format", choices=("csv", "json"), default="csv")
    f.add_argument("--regime", choices=("night", "day"), default="night")
    f.add_argument("--workers", type=int, default=1)
    f.set_defaults(func=_cmd_figure)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.WARNING - 10 * min(args.verbose, 2), format="%(levelname)s: %(message)s", stream=sys.stderr
    )
    if args.defaults:
        sys.stdout.write(defaults_text())
        return EXIT_OK
    if args.cmd is None:
        parser.print_usage(sys.stderr)
        return EXIT_CONFIG
    try:
        return args.func(args)
    except ConfigError as exc:
        log.error("%s", exc)
        return EXIT_CONFIG
    except (ModelError, ValueError, OSError) as exc:
        log.error("%s", exc)
        return EXIT_MODEL


if __name__ == "__main__":
    sys.exit(main())
