"""Command-line harness: benchmarks, drift runs, model inspection.

All randomness flows from the single --seed flag; reports are written as
JSON with every nondeterministic value (timestamps, wall-clock timings,
parallelism) confined to the "meta" field, so repeated runs with the same
configuration produce byte-identical reports outside of "meta".

Exit codes: 0 success, 2 usage or configuration error, 3 data error,
4 runtime failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import re
import sys
from datetime import datetime, timezone
from pathlib import Path

from . import __version__
from .datastream import load_csv, run_cv, train_full
from .driftsim import rotating_gaussians_preset, run_drift_experiment
from .errors import ConfigError, DataError
from .multiclass import DELTA_LINEAR, FUZZY, ModelSpec, MulticlassModel
from .rulebase import dc_limited_count
from .tracker import LARGEST, SMALLEST, emit_trace, top_rules

SCHEMA_VERSION = 1
DATA_DIR_ENV = "FUZZPA_DATA_DIR"


def _timestamp() -> str:
    return datetime.now(timezone.utc).isoformat()


def _write_json(path: Path, payload: dict) -> None:
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def _resolve_data_path(raw: str) -> Path:
    path = Path(raw)
    if path.exists():
        return path
    data_dir = os.environ.get(DATA_DIR_ENV)
    if data_dir and not path.is_absolute():
        candidate = Path(data_dir) / path
        if candidate.exists():
            return candidate
    raise FileNotFoundError(f"dataset file not found: {raw}")


def _sanitize(name: str) -> str:
    return re.sub(r"[^A-Za-z0-9_.-]+", "_", name)


def cmd_bench(args) -> int:
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    ds = load_csv(_resolve_data_path(args.data))
    spec = ModelSpec(
        model=args.model, scheme=args.scheme, num_sets=args.m, rule_mode=args.rule_mode
    )
    result = run_cv(
        ds,
        spec,
        k=args.folds,
        seed=args.seed,
        jobs=args.jobs,
        fold_local_norm=args.fold_local_normalization,
    )
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": "bench",
        "config": {
            "dataset": ds.name,
            "model": args.model,
            "scheme": args.scheme,
            "m": args.m,
            "rule_mode": args.rule_mode,
            "folds": args.folds,
            "seed": args.seed,
            "fold_local_normalization": args.fold_local_normalization,
        },
        "results": {
            "mean_accuracy": result.mean_accuracy,
            "std_accuracy": result.std_accuracy,
            "fold_accuracies": result.fold_accuracies,
            "learning_rates": result.learning_rates,
        },
        "meta": {
            "timestamp": _timestamp(),
            "wall_time_s": result.wall_time_s,
            "fold_times_s": result.fold_times_s,
            "jobs": args.jobs,
            "version": __version__,
        },
    }
    _write_json(out_dir / "report.json", report)
    with open(out_dir / "results.csv", "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(["model", "dataset", "mean_accuracy", "std", "mean_time_s"])
        writer.writerow(
            [
                result.model,
                result.dataset,
                f"{result.mean_accuracy:.6f}",
                f"{result.std_accuracy:.6f}",
                f"{result.wall_time_s / args.folds:.6f}",
            ]
        )
    if args.save_model:
        model, rate = train_full(ds, spec, seed=args.seed)
        payload = {"schema_version": SCHEMA_VERSION, "model": model.to_dict()}
        if rate is not None:
            payload["selected_learning_rate"] = rate
        _write_json(Path(args.save_model), payload)
    print(result.summary())
    print(f"report: {out_dir / 'report.json'}")
    return 0


def cmd_drift(args) -> int:
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    sigma = args.sigma
    if args.sigma_is_variance:
        sigma = math.sqrt(sigma)
    overrides = {"sigma": sigma, "decay": args.decay, "seed": args.seed}
    if args.steps is not None:
        overrides["total_steps"] = args.steps
    if args.patterns_per_step is not None:
        overrides["patterns_per_step"] = args.patterns_per_step
    config = rotating_gaussians_preset(**overrides)
    schemes = ["ovr", "ovo"] if args.scheme == "both" else [args.scheme]
    runs = {}
    for scheme in schemes:
        report = run_drift_experiment(scheme, config, num_sets=args.m)
        runs[scheme] = report.to_dict()
        for trace in report.traces:
            emit_trace(
                trace,
                report.rules,
                "csv",
                out_dir / f"trace_{_sanitize(trace.classifier_id)}.csv",
            )
        print(f"{scheme}: prequential accuracy {report.accuracy:.4f}")
    payload = {
        "schema_version": SCHEMA_VERSION,
        "command": "drift",
        "config": {
            "m": args.m,
            "seed": args.seed,
            "schemes": schemes,
            "drift": config.to_dict(),
        },
        "results": runs,
        "meta": {"timestamp": _timestamp(), "version": __version__},
    }
    _write_json(out_dir / "report.json", payload)
    print(f"report: {out_dir / 'report.json'}")
    return 0


def cmd_inspect(args) -> int:
    if args.top < 1:
        raise ValueError(f"need at least 1 rule per ranking, got {args.top}")
    path = Path(args.model_file)
    if not path.exists():
        raise FileNotFoundError(f"model file not found: {path}")
    payload = json.loads(path.read_text(encoding="utf-8"))
    model = MulticlassModel.from_dict(payload["model"])
    if model.representation.kind != "fuzzy":
        raise ConfigError(
            "this model uses a linear representation; there are no rules to rank"
        )
    rules = model.representation.rules
    for i, member in enumerate(model.members):
        print(f"== {model.member_id(i)}")
        for direction in (LARGEST, SMALLEST):
            ranking = top_rules(member, rules, args.top, direction)
            print(f"  {direction} consequents:")
            for ranked in ranking.rules:
                print(f"    {ranked.consequent:+.4f}  {ranked.description}")
    return 0


def cmd_partition_info(args) -> int:
    if args.n < 1:
        raise ValueError(f"need at least 1 feature, got n={args.n}")
    if args.m < 2:
        raise ValueError(f"need at least 2 sets per axis, got m={args.m}")
    full = args.m**args.n
    limited = dc_limited_count(args.n, args.m)
    print(f"full grid: {full} rules")
    print(f"dc-limited (<= 2 active axes): {limited} rules")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fuzzpa",
        description="Online fuzzy classifiers: benchmarks, drift runs, inspection.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    bench = sub.add_parser("bench", help="stratified k-fold benchmark on a CSV dataset")
    bench.add_argument("--data", required=True, help=f"CSV path (or relative to ${DATA_DIR_ENV})")
    bench.add_argument("--model", choices=[FUZZY, "pa-linear", DELTA_LINEAR], default=FUZZY)
    bench.add_argument("--scheme", choices=["ovr", "ovo"], default="ovr")
    bench.add_argument("--m", type=int, default=3, help="fuzzy sets per axis")
    bench.add_argument("--rule-mode", choices=["auto", "full", "dc"], default="auto")
    bench.add_argument("--folds", type=int, default=10)
    bench.add_argument("--seed", type=int, default=0)
    bench.add_argument("--jobs", type=int, default=1, help="fold-level parallelism")
    bench.add_argument("--out", default=".", help="output directory")
    bench.add_argument(
        "--fold-local-normalization",
        action="store_true",
        help="fit min-max on each training fold instead of the whole dataset",
    )
    bench.add_argument("--save-model", metavar="PATH", help="also train on the full dataset and save the model JSON")
    bench.set_defaults(run=cmd_bench)

    drift = sub.add_parser("drift", help="rotating-Gaussian prequential experiment")
    drift.add_argument("--scheme", choices=["ovr", "ovo", "both"], default="both")
    drift.add_argument("--m", type=int, default=3, help="fuzzy sets per axis")
    drift.add_argument("--seed", type=int, default=0)
    drift.add_argument("--sigma", type=float, default=0.1, help="per-axis Gaussian spread")
    drift.add_argument(
        "--sigma-is-variance",
        action="store_true",
        help="interpret --sigma as a variance instead of a standard deviation",
    )
    drift.add_argument("--decay", type=float, default=1.0, help="per-step consequent decay in (0, 1]")
    drift.add_argument("--steps", type=int, default=None, help="override the number of steps")
    drift.add_argument("--patterns-per-step", type=int, default=None)
    drift.add_argument("--out", default=".", help="output directory")
    drift.set_defaults(run=cmd_drift)

    inspect = sub.add_parser("inspect", help="print the extreme-consequent rules of a saved model")
    inspect.add_argument("model_file", help="model JSON written by bench --save-model")
    inspect.add_argument("-k", "--top", type=int, default=3, help="rules per ranking")
    inspect.set_defaults(run=cmd_inspect)

    info = sub.add_parser("partition-info", help="rule counts for a problem size")
    info.add_argument("--n", type=int, required=True, help="number of features")
    info.add_argument("--m", type=int, required=True, help="fuzzy sets per axis")
    info.set_defaults(run=cmd_partition_info)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.run(args)
    except (ConfigError, ValueError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DataError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return 3
    except Exception as exc:  # pragma: no cover - defensive
        print(f"runtime failure: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
