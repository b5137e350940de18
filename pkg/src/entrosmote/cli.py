"""Command-line surface: ``balance``, ``evaluate``, ``compare``, ``inspect``.

Exit codes: 0 success, 1 usage error, 2 data error. Every successful run
prints or writes a manifest (resolved N, k, lambda, seed) sufficient to
reproduce its outputs exactly. The default seed can be set through the
``ENTROSMOTE_SEED`` environment variable.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import asdict
from pathlib import Path

try:
    import tomllib as tomli
except ModuleNotFoundError:  # python < 3.11
    import tomli

from . import __version__
from .bench import (
    DatasetSource,
    ExperimentPlan,
    cell_seed,
    emit_report,
    run_cell,
    run_plan,
    stratified_folds,
)
from .data import DiscretizationPolicy, discretize, imbalance_stats
from .entropy import EntropySpec, feature_weights
from .errors import DataError
from .keel import write_dataset
from .smote import VARIANTS, make_variant, oversample


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse default exit code is 2; usage errors are 1 here
        self.print_usage(sys.stderr)
        raise SystemExit(self._usage_exit(message))

    def _usage_exit(self, message):
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        return 1


def _default_seed() -> int:
    return int(os.environ.get("ENTROSMOTE_SEED", "0"))


def _amount_or_auto(value: str):
    if value == "auto":
        return "auto"
    try:
        return int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer or 'auto', got {value!r}") from None


def _infer_format(path: str, explicit: str | None) -> str:
    if explicit:
        return explicit
    return "keel" if path.endswith(".dat") else "csv"


def _load(path: str, format: str, positive):
    from .keel import read_dataset

    try:
        text = Path(path).read_text()
    except OSError as e:
        raise DataError(f"cannot read {path}: {e}") from e
    return read_dataset(text, format, positive or None)


def _build_parser() -> _Parser:
    parser = _Parser(prog="entrosmote", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common_io(p):
        p.add_argument("--input", required=True, help="dataset file (.dat or .csv)")
        p.add_argument("--format", choices=["keel", "csv"], help="inferred from extension if omitted")
        p.add_argument("--positive", action="append", default=[],
                       help="raw class value(s) forming the positive class; "
                            "defaults to the literal 'positive' token")

    p = sub.add_parser("balance", help="oversample the minority class and write the result")
    common_io(p)
    p.add_argument("--method", required=True, choices=VARIANTS)
    p.add_argument("--amount", type=_amount_or_auto, default="auto")
    p.add_argument("--k", type=_amount_or_auto, default=5)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--output", required=True)
    p.add_argument("--output-format", choices=["keel", "csv"])
    p.add_argument("--no-preselect", action="store_true",
                   help="disable cluster-mean neighbor pre-selection")

    p = sub.add_parser("evaluate", help="cross-validate one dataset x method cell")
    common_io(p)
    p.add_argument("--method", required=True, choices=["imbalanced", *VARIANTS])
    p.add_argument("--folds", type=int, default=5)
    p.add_argument("--amount", type=_amount_or_auto, default="auto")
    p.add_argument("--k", type=_amount_or_auto, default=5)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--report", required=True, help="output JSON path")

    p = sub.add_parser("compare", help="run a full plan grid and emit reports")
    p.add_argument("--plan", required=True, help="TOML plan file")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--jobs", type=int, default=os.cpu_count() or 1)

    p = sub.add_parser("inspect", help="print per-attribute gains and lambda weights")
    common_io(p)
    p.add_argument("--entropy", choices=["shannon", "renyi", "tsallis", "maxent"],
                   default="shannon")
    p.add_argument("--alpha", type=float, default=2.0)
    p.add_argument("--bins", type=int, default=10)

    return parser


def _cmd_balance(args) -> int:
    seed = args.seed if args.seed is not None else _default_seed()
    data = _load(args.input, _infer_format(args.input, args.format), args.positive)
    before = imbalance_stats(data)
    cfg = make_variant(args.method, amount=args.amount, k=args.k, seed=seed,
                       use_cluster_preselect=not args.no_preselect)
    balanced, batch = oversample(data, cfg)
    after = imbalance_stats(balanced)

    out_format = args.output_format or _infer_format(args.output, None)
    Path(args.output).write_text(write_dataset(balanced, out_format))
    manifest = {
        "command": "balance",
        "version": __version__,
        "input": args.input,
        "method": args.method,
        "resolved_amount": batch.resolved_amount,
        "resolved_k": batch.resolved_k,
        "seed": seed,
        "lambda": [float(v) for v in batch.weights.lambda_],
        "gains": [float(v) for v in batch.weights.gains],
        "n_synthetic": int(batch.rows.shape[0]),
        "output": args.output,
        "output_format": out_format,
    }
    Path(args.output + ".manifest.json").write_text(json.dumps(manifest, indent=2) + "\n")
    print(f"before: {before.n_positive} positive / {before.n_negative} negative, "
          f"IR = {before.imbalance_ratio:.4f}")
    print(f"after:  {after.n_positive} positive / {after.n_negative} negative, "
          f"IR = {after.imbalance_ratio:.4f}")
    print(f"wrote {args.output} (+{manifest['n_synthetic']} synthetic rows)")
    return 0


def _cmd_evaluate(args) -> int:
    seed = args.seed if args.seed is not None else _default_seed()
    name = Path(args.input).stem
    data = _load(args.input, _infer_format(args.input, args.format), args.positive)
    folds = stratified_folds(data.labels, args.folds, cell_seed(seed, name, "folds", 0, 0))
    all_idx = list(range(data.n_rows))
    cells = []
    import numpy as np

    for fold, test_idx in enumerate(folds):
        train_idx = np.setdiff1d(np.array(all_idx), test_idx)
        cm, metrics, manifest = run_cell(
            data.subset(train_idx), data.subset(test_idx), args.method,
            cell_seed(seed, name, args.method, 0, fold), args.amount, args.k,
        )
        cells.append({"fold": fold, "confusion": asdict(cm),
                      "metrics": asdict(metrics), "manifest": manifest})
    aucs = [c["metrics"]["auc"] for c in cells if c["metrics"]["auc"] is not None]
    payload = {
        "version": __version__,
        "dataset": name,
        "method": args.method,
        "folds": args.folds,
        "base_seed": seed,
        "cells": cells,
        "mean_auc": float(np.mean(aucs)) if aucs else None,
        "excluded_auc": len(cells) - len(aucs),
    }
    Path(args.report).write_text(json.dumps(payload, indent=2) + "\n")
    mean = payload["mean_auc"]
    print(f"{name} x {args.method}: mean AUC = "
          f"{'n/a' if mean is None else f'{mean:.3f}'} over {args.folds} folds")
    return 0


def load_plan(path: str | Path) -> ExperimentPlan:
    with open(path, "rb") as fh:
        doc = tomli.load(fh)
    datasets = tuple(
        DatasetSource(
            name=d["name"],
            path=d["path"],
            format=d.get("format", "keel"),
            positive_values=tuple(map(str, d.get("positive", ()))),
        )
        for d in doc.get("datasets", [])
    )
    return ExperimentPlan(
        datasets=datasets,
        methods=tuple(doc.get("methods", [])),
        folds=int(doc.get("folds", 5)),
        repetitions=int(doc.get("repetitions", 1)),
        base_seed=int(doc.get("seed", 0)),
        amount=doc.get("amount", "auto"),
        k=doc.get("k", 5),
        paper_protocol=bool(doc.get("paper_protocol", False)),
    )


def _cmd_compare(args) -> int:
    plan = load_plan(args.plan)
    report = run_plan(plan, base_dir=Path(args.plan).parent, jobs=max(1, args.jobs))
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    (out / "report.json").write_text(emit_report(report, "json"))
    (out / "report.csv").write_text(emit_report(report, "csv"))
    (out / "report.md").write_text(emit_report(report, "markdown"))
    print(emit_report(report, "markdown"))
    print(f"wrote report.json / report.csv / report.md under {out}")
    return 0


def _cmd_inspect(args) -> int:
    spec = EntropySpec(args.entropy, args.alpha)  # ValueError on alpha=1 -> exit 1
    data = _load(args.input, _infer_format(args.input, args.format), args.positive)
    binned = discretize(data, DiscretizationPolicy(args.bins))
    fw = feature_weights(binned, data.labels, spec)
    width = max(len(n) for n in data.attribute_names)
    print(f"{'attribute'.ljust(width)}  {'gain':>12}  {'lambda':>12}")
    for name, g, lam in zip(data.attribute_names, fw.gains, fw.lambda_):
        print(f"{name.ljust(width)}  {g:12.6f}  {lam:12.6f}")
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    handlers = {
        "balance": _cmd_balance,
        "evaluate": _cmd_evaluate,
        "compare": _cmd_compare,
        "inspect": _cmd_inspect,
    }
    try:
        return handlers[args.subcommand](args)
    except DataError as e:
        print(f"entrosmote: data error: {e}", file=sys.stderr)
        return 2
    except ValueError as e:
        print(f"entrosmote: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
