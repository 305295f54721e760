"""Command-line experiment runner.

Every subcommand resolves its full parameter set (flags, then an optional
JSON config that overrides them), runs a seeded experiment, and writes a
canonical JSON report plus fixed-name CSV artifacts into --out-dir. Reports
are byte-identical across re-runs and worker counts once the timing section
is dropped.

Exit codes: 0 success, 2 usage or domain error, 3 threshold violation when
--assert is given.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from .curves import curve_length, sample_brownian, write_path_csv
from .errors import WindAreaError
from .experiments import (
    STOKES_BUILTINS,
    dn_scan,
    poisson_cauchy,
    position_vs_levy,
    stokes_check,
    young_check,
)
from .integrals import shoelace_area
from .poisson_mc import write_ensemble_csv
from .report import ExperimentReport

_FMT = "%.17g"  # round-trip precision for CSV floats


def _env_workers() -> int:
    raw = os.environ.get("WINDAREA_WORKERS", "")
    try:
        return max(1, int(raw)) if raw else 1
    except ValueError:
        return 1


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--seed", type=int, default=1, help="master RNG seed")
    sub.add_argument(
        "--workers",
        type=int,
        default=None,
        help="parallel workers (default: WINDAREA_WORKERS or 1); never changes results",
    )
    sub.add_argument("--out-dir", default=".", help="artifact directory")
    sub.add_argument(
        "--config",
        default=None,
        help="JSON file whose entries override the flags of this invocation",
    )
    sub.add_argument(
        "--assert",
        dest="assert_mode",
        action="store_true",
        help="exit 3 when any recorded assertion fails",
    )


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="windarea",
        description="Winding-number fields, winding area measures, and their "
        "heavy-tail Monte Carlo estimators.",
    )
    sp = ap.add_subparsers(dest="command", required=True)

    s = sp.add_parser("simulate", help="sample a Brownian path to CSV")
    s.add_argument("--steps", type=int, required=True)
    s.add_argument("--out", default="path.csv", help="CSV name inside --out-dir")
    _add_common(s)

    s = sp.add_parser("dn-scan", help="ensemble tail-area scan against 1/(2*pi)")
    s.add_argument("--steps", type=int, default=2**16)
    s.add_argument("--paths", type=int, default=200)
    s.add_argument("--grid", type=int, default=2048)
    s.add_argument("--n-max", type=int, default=8)
    _add_common(s)

    s = sp.add_parser(
        "position-vs-levy", help="tail-sum position against the chord-corrected integral"
    )
    s.add_argument("--steps", type=int, default=2**16)
    s.add_argument("--paths", type=int, default=100)
    # 4096 keeps the near-curve mask small enough for an unbiased slope
    s.add_argument("--grid", type=int, default=4096)
    _add_common(s)

    s = sp.add_parser("poisson-cauchy", help="Poisson winding-sum trial ensemble")
    s.add_argument("--steps", type=int, default=2**16)
    s.add_argument("--intensity", type=float, default=1e4)
    s.add_argument("--trials", type=int, default=500)
    s.add_argument("--curve", default=None, help="optional curve spec replacing the Brownian path")
    _add_common(s)

    s = sp.add_parser("stokes-check", help="grid area vs integral on test curves")
    s.add_argument(
        "--curve",
        action="append",
        default=None,
        help="curve spec (repeatable); default: built-in suite",
    )
    s.add_argument("--grid", type=int, default=1024)
    _add_common(s)

    s = sp.add_parser("young-check", help="skeleton convergence over dyadic levels")
    s.add_argument("--curve", default="circle:4096")
    s.add_argument("--levels", default="4:12", help="level range lo:hi")
    _add_common(s)

    return ap


def _apply_config(args: argparse.Namespace) -> None:
    if not args.config:
        return
    try:
        with open(args.config, "r", encoding="utf-8") as fh:
            overrides = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise WindAreaError(f"cannot read config {args.config}: {exc}") from exc
    if not isinstance(overrides, dict):
        raise WindAreaError("config must be a JSON object of flag overrides")
    for key, value in overrides.items():
        dest = key.replace("-", "_")
        if not hasattr(args, dest) or dest in ("command", "config"):
            raise WindAreaError(f"config key {key!r} is not a flag of this command")
        setattr(args, dest, value)


def _write_csv(path: str, header: str, rows, fields) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(header + "\n")
        for row in rows:
            cells = []
            for f in fields:
                v = row[f]
                if v is None:
                    cells.append("")
                elif isinstance(v, bool):
                    cells.append("1" if v else "0")
                elif isinstance(v, float):
                    cells.append(_FMT % v)
                else:
                    cells.append(str(v))
            fh.write(",".join(cells) + "\n")


def _finish(args, command, params, estimates, diagnostics, artifacts, t0) -> ExperimentReport:
    report = ExperimentReport(
        command=command,
        params=params,
        estimates=estimates,
        diagnostics=diagnostics,
        artifacts=artifacts,
        wall_seconds=time.perf_counter() - t0,
        workers=args.workers,
    )
    report.write(os.path.join(args.out_dir, command.replace("-", "_") + ".json"))
    return report


def _run(args: argparse.Namespace) -> int:
    t0 = time.perf_counter()
    os.makedirs(args.out_dir, exist_ok=True)
    if args.workers is None:
        args.workers = _env_workers()
    args.workers = max(1, int(args.workers))

    if args.command == "simulate":
        if args.steps < 1:
            raise WindAreaError(f"steps must be >= 1, got {args.steps}")
        path = sample_brownian(args.steps, args.seed)
        out = os.path.join(args.out_dir, args.out)
        write_path_csv(path, out)
        _finish(
            args,
            "simulate",
            {"steps": args.steps, "seed": args.seed, "out": args.out},
            {
                "length": curve_length(path),
                "endpoint": [float(path.points[-1, 0]), float(path.points[-1, 1])],
                "enclosed_area": shoelace_area(path),
            },
            {},
            {"path": args.out},
            t0,
        )
        return 0

    if args.command == "dn-scan":
        res = dn_scan(args.steps, args.paths, args.grid, args.n_max, args.seed, args.workers)
        _write_csv(
            os.path.join(args.out_dir, "dn_scan.csv"),
            "N,mean_NDN,stderr,masked_area_bound,mean_NDN_minus,remainder_n54",
            res["table"],
            ["N", "mean_NDN", "stderr", "masked_area_bound", "mean_NDN_minus", "remainder_n54"],
        )
        _finish(
            args,
            "dn-scan",
            {
                "steps": args.steps,
                "paths": args.paths,
                "grid": args.grid,
                "n_max": args.n_max,
                "seed": args.seed,
            },
            {"table": res["table"], "target": res["target"]},
            {"mean_masked_area": res["mean_masked_area"], "assertions": res["assertions"]},
            {"scan": "dn_scan.csv"},
            t0,
        )
        return _assert_code(args, res["assertions"])

    if args.command == "position-vs-levy":
        res = position_vs_levy(args.steps, args.paths, args.grid, args.seed, args.workers)
        _write_csv(
            os.path.join(args.out_dir, "pairs.csv"),
            "index,position,levy",
            res["pairs"],
            ["index", "position", "levy"],
        )
        _finish(
            args,
            "position-vs-levy",
            {"steps": args.steps, "paths": args.paths, "grid": args.grid, "seed": args.seed},
            {"correlation": res["correlation"], "slope": res["slope"]},
            {"mean_masked_area": res["mean_masked_area"], "assertions": res["assertions"]},
            {"pairs": "pairs.csv"},
            t0,
        )
        return _assert_code(args, res["assertions"])

    if args.command == "poisson-cauchy":
        res = poisson_cauchy(
            args.steps, args.intensity, args.trials, args.seed, args.workers, args.curve
        )
        write_ensemble_csv(res["ensemble"], os.path.join(args.out_dir, "ensemble.csv"))
        _finish(
            args,
            "poisson-cauchy",
            {
                "steps": args.steps,
                "intensity": args.intensity,
                "trials": args.trials,
                "seed": args.seed,
                "curve": res["curve"],
            },
            {**res["summary"], "levy_area": res["levy_area"], "ks_theory": res["ks_theory"]},
            {"assertions": res["assertions"]},
            {"ensemble": "ensemble.csv"},
            t0,
        )
        return _assert_code(args, res["assertions"])

    if args.command == "stokes-check":
        specs = args.curve if args.curve else list(STOKES_BUILTINS)
        res = stokes_check(specs, args.grid, args.workers)
        _write_csv(
            os.path.join(args.out_dir, "stokes.csv"),
            "curve,residual,bound,levy,grid_sum,masked_area,length",
            res["rows"],
            ["curve", "residual", "bound", "levy", "grid_sum", "masked_area", "length"],
        )
        _finish(
            args,
            "stokes-check",
            {"curves": specs, "grid": args.grid},
            {"rows": res["rows"]},
            {"assertions": res["assertions"]},
            {"table": "stokes.csv"},
            t0,
        )
        return _assert_code(args, res["assertions"])

    if args.command == "young-check":
        try:
            lo, hi = (int(v) for v in str(args.levels).split(":"))
        except ValueError as exc:
            raise WindAreaError(f"--levels must be lo:hi, got {args.levels!r}") from exc
        res = young_check(args.curve, lo, hi)
        _write_csv(
            os.path.join(args.out_dir, "young.csv"),
            "level,size,mesh,shoelace_gap,young_gap,young_converged",
            res["rows"],
            ["level", "size", "mesh", "shoelace_gap", "young_gap", "young_converged"],
        )
        _finish(
            args,
            "young-check",
            {"curve": res["curve"], "levels": res["levels"]},
            {
                "rows": res["rows"],
                "shoelace": res["shoelace"],
                "line_integral": res["line_integral"],
            },
            {"assertions": res["assertions"]},
            {"table": "young.csv"},
            t0,
        )
        return _assert_code(args, res["assertions"])

    raise WindAreaError(f"unknown command {args.command!r}")


def _assert_code(args: argparse.Namespace, assertions) -> int:
    if args.assert_mode and any(not a["passed"] for a in assertions):
        failed = [a["name"] for a in assertions if not a["passed"]]
        print("assertion failures: " + ", ".join(failed), file=sys.stderr)
        return 3
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _apply_config(args)
        return _run(args)
    except WindAreaError as exc:
        print(f"windarea: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
