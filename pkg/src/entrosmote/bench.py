"""Experiment harness: stratified cross-validation over a dataset x method
grid with the in-repo weighted 1NN classifier, plus report serialization.

By default resampling happens inside the CV loop, on the training folds only,
so no synthetic row can leak information about a test row. The
``paper_protocol`` switch instead balances the whole dataset before splitting
(the workflow of balancing first and classifying later), kept for
side-by-side comparison; it is methodologically leaky and off by default.

Every cell derives its RNG seed from (base_seed, dataset, method, repetition,
fold), so any cell can be recomputed in isolation and results are independent
of execution schedule.
"""

from __future__ import annotations

import csv
import io
import json
import zlib
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .data import Dataset
from .errors import DataError, ParseError
from .keel import mapping_from_positive, parse_csv, parse_keel, reduce_two_class
from .metrics import ConfusionMatrix, MetricSet, confusion, metric_set
from .neighbors import classify_1nn
from .smote import make_variant, oversample

METHODS = ("imbalanced", "smote", "mismote", "maesmote", "tesmote", "resmote")
METRIC_NAMES = ("precision", "recall", "f_value", "auc")


@dataclass(frozen=True)
class DatasetSource:
    name: str
    path: str
    format: str = "keel"
    positive_values: tuple[str, ...] = ()  # empty: file already uses positive/negative


@dataclass(frozen=True)
class ExperimentPlan:
    datasets: tuple[DatasetSource, ...]
    methods: tuple[str, ...]
    folds: int = 5
    repetitions: int = 1
    base_seed: int = 0
    amount: int | str = "auto"
    k: int | str = 5
    paper_protocol: bool = False

    def __post_init__(self):
        if not self.datasets:
            raise ValueError("plan lists no datasets")
        if not self.methods:
            raise ValueError("plan lists no methods")
        for m in self.methods:
            if m not in METHODS:
                raise ValueError(f"unknown method {m!r}; expected one of {METHODS}")
        if self.folds < 2:
            raise ValueError("folds must be >= 2")
        if self.repetitions < 1:
            raise ValueError("repetitions must be >= 1")


@dataclass(frozen=True)
class CellResult:
    dataset: str
    method: str
    repetition: int
    fold: int
    cm: ConfusionMatrix
    metrics: MetricSet
    manifest: dict


@dataclass(frozen=True)
class EvaluationReport:
    cells: tuple[CellResult, ...]
    aggregates: tuple[dict, ...]
    manifest: dict


def _tag(name: str) -> int:
    # stable across processes, unlike hash()
    return zlib.crc32(name.encode())


def cell_seed(base_seed: int, dataset: str, method: str, repetition: int, fold: int) -> int:
    ss = np.random.SeedSequence([base_seed, _tag(dataset), _tag(method), repetition, fold])
    return int(ss.generate_state(1)[0])


def stratified_folds(labels, folds: int, seed: int) -> list[np.ndarray]:
    """Test-index arrays for each fold; per-class counts differ by at most 1."""
    labels = np.asarray(labels, dtype=bool)
    n_pos = int(labels.sum())
    if n_pos < folds:
        raise DataError(
            f"fold with zero positives: {n_pos} positive rows cannot fill {folds} folds; "
            "use fewer folds"
        )
    if int((~labels).sum()) < folds:
        raise DataError("too few negative rows for the requested fold count")
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed])))
    buckets: list[list[int]] = [[] for _ in range(folds)]
    for mask in (labels, ~labels):
        idx = np.flatnonzero(mask)
        rng.shuffle(idx)
        for pos, row in enumerate(idx):
            buckets[pos % folds].append(int(row))
    return [np.array(sorted(b)) for b in buckets]


def load_source(src: DatasetSource, base_dir: str | Path = ".") -> Dataset:
    path = Path(src.path)
    if not path.is_absolute():
        path = Path(base_dir) / path
    try:
        text = path.read_text()
    except OSError as e:
        raise ParseError(f"dataset {src.name}: cannot read {path}: {e}") from e
    try:
        if src.format == "keel":
            _, raw = parse_keel(text)
        elif src.format == "csv":
            raw = parse_csv(text)
        else:
            raise ValueError(f"dataset {src.name}: unknown format {src.format!r}")
        positive = src.positive_values or ("positive",)
        return reduce_two_class(raw, mapping_from_positive(raw, positive))
    except DataError as e:
        raise type(e)(f"dataset {src.name}: {e}") from e


def run_cell(
    train: Dataset,
    test: Dataset,
    method: str,
    seed: int,
    amount="auto",
    k=5,
    pre_balanced: bool = False,
) -> tuple[ConfusionMatrix, MetricSet, dict]:
    """Evaluate one (train, test) split under one method."""
    if method == "imbalanced" or pre_balanced:
        weights = None
        manifest = {"resolved_amount": 0, "resolved_k": None, "lambda": None,
                    "seed": seed, "n_synthetic": 0}
        train_used = train
    else:
        cfg = make_variant(method, amount=amount, k=k, seed=seed)
        train_used, batch = oversample(train, cfg)
        n_train = train.n_rows
        for seed_idx, nb_idx, _ in batch.provenance:
            if seed_idx >= n_train or nb_idx >= n_train:
                raise AssertionError("synthetic provenance escapes the training split")
        weights = batch.weights
        manifest = {
            "resolved_amount": batch.resolved_amount,
            "resolved_k": batch.resolved_k,
            "lambda": [float(v) for v in batch.weights.lambda_],
            "seed": seed,
            "n_synthetic": int(batch.rows.shape[0]),
        }
    predicted = classify_1nn(train_used, test.features, weights)
    cm = confusion(test.labels, predicted)
    return cm, metric_set(cm), manifest


def _aggregate(cells: list[CellResult]) -> list[dict]:
    keys = []
    grouped: dict[tuple[str, str], list[CellResult]] = {}
    for c in cells:
        key = (c.dataset, c.method)
        if key not in grouped:
            grouped[key] = []
            keys.append(key)
        grouped[key].append(c)
    out = []
    for dataset, method in keys:
        entry = {"dataset": dataset, "method": method}
        for name in METRIC_NAMES:
            values = [getattr(c.metrics, name) for c in grouped[(dataset, method)]]
            defined = [v for v in values if v is not None]
            entry[f"mean_{name}"] = float(np.mean(defined)) if defined else None
            entry[f"std_{name}"] = float(np.std(defined)) if defined else None
            entry[f"excluded_{name}"] = len(values) - len(defined)
        out.append(entry)
    return out


def run_plan(plan: ExperimentPlan, base_dir: str | Path = ".", jobs: int = 1) -> EvaluationReport:
    """Execute the full dataset x method x fold grid."""
    datasets = [(src, load_source(src, base_dir)) for src in plan.datasets]

    tasks = []  # (order key, callable)
    for src, data in datasets:
        for rep in range(plan.repetitions):
            if plan.paper_protocol:
                # balance first, then split: the workflow the tables came from
                for method in plan.methods:
                    seed = cell_seed(plan.base_seed, src.name, method, rep, 10_000)
                    if method == "imbalanced":
                        full = data
                    else:
                        cfg = make_variant(method, amount=plan.amount, k=plan.k, seed=seed)
                        full, batch = oversample(data, cfg)
                    folds = stratified_folds(full.labels, plan.folds,
                                             cell_seed(plan.base_seed, src.name, method, rep, 10_001))
                    all_idx = np.arange(full.n_rows)
                    for fold, test_idx in enumerate(folds):
                        train_idx = np.setdiff1d(all_idx, test_idx)
                        tasks.append((src.name, method, rep, fold,
                                      full.subset(train_idx), full.subset(test_idx),
                                      cell_seed(plan.base_seed, src.name, method, rep, fold),
                                      True))
            else:
                folds = stratified_folds(
                    data.labels, plan.folds,
                    cell_seed(plan.base_seed, src.name, "folds", rep, 0))
                all_idx = np.arange(data.n_rows)
                for fold, test_idx in enumerate(folds):
                    train_idx = np.setdiff1d(all_idx, test_idx)
                    train, test = data.subset(train_idx), data.subset(test_idx)
                    for method in plan.methods:
                        tasks.append((src.name, method, rep, fold, train, test,
                                      cell_seed(plan.base_seed, src.name, method, rep, fold),
                                      False))

    def run_one(task):
        name, method, rep, fold, train, test, seed, pre_balanced = task
        cm, metrics, manifest = run_cell(
            train, test, method, seed, plan.amount, plan.k, pre_balanced=pre_balanced
        )
        return CellResult(name, method, rep, fold, cm, metrics, manifest)

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(run_one, tasks))
    else:
        results = [run_one(t) for t in tasks]

    order = {(s.name): i for i, s in enumerate(plan.datasets)}
    m_order = {m: i for i, m in enumerate(plan.methods)}
    results.sort(key=lambda c: (order[c.dataset], m_order[c.method], c.repetition, c.fold))

    manifest = {
        "version": __version__,
        "base_seed": plan.base_seed,
        "folds": plan.folds,
        "repetitions": plan.repetitions,
        "amount": plan.amount,
        "k": plan.k,
        "paper_protocol": plan.paper_protocol,
        "methods": list(plan.methods),
        "datasets": [asdict(s) for s in plan.datasets],
    }
    return EvaluationReport(tuple(results), tuple(_aggregate(results)), manifest)


def _mean_auc(report: EvaluationReport, dataset: str, method: str):
    for a in report.aggregates:
        if a["dataset"] == dataset and a["method"] == method:
            return a["mean_auc"]
    return None


def emit_report(report: EvaluationReport, format: str = "json") -> str:
    """Serialize a report; json carries everything, csv the flat cells,
    markdown a Tables-3/4-style grid of mean AUCs."""
    if not report.cells:
        raise ValueError("empty report")
    if format == "json":
        payload = {
            "manifest": report.manifest,
            "aggregates": list(report.aggregates),
            "cells": [
                {
                    "dataset": c.dataset,
                    "method": c.method,
                    "repetition": c.repetition,
                    "fold": c.fold,
                    "confusion": asdict(c.cm),
                    "metrics": asdict(c.metrics),
                    "manifest": c.manifest,
                }
                for c in report.cells
            ],
        }
        return json.dumps(payload, indent=2) + "\n"
    if format == "csv":
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["dataset", "method", "repetition", "fold",
                         "tp", "fn", "fp", "tn", *METRIC_NAMES])
        for c in report.cells:
            writer.writerow([
                c.dataset, c.method, c.repetition, c.fold,
                c.cm.tp, c.cm.fn, c.cm.fp, c.cm.tn,
                *(("" if getattr(c.metrics, n) is None else repr(getattr(c.metrics, n)))
                  for n in METRIC_NAMES),
            ])
        return out.getvalue()
    if format == "markdown":
        datasets = list(dict.fromkeys(c.dataset for c in report.cells))
        methods = list(dict.fromkeys(c.method for c in report.cells))

        def fmt(v):
            return "n/a" if v is None else f"{v:.3f}"

        header = ["dataset", *methods, "MAX", "MIN", "AVE"]
        lines = ["| " + " | ".join(header) + " |",
                 "|" + "|".join(["---"] * len(header)) + "|"]
        for ds in datasets:
            row_vals = [_mean_auc(report, ds, m) for m in methods]
            defined = [v for v in row_vals if v is not None]
            stats = [max(defined), min(defined), float(np.mean(defined))] if defined else [None] * 3
            lines.append("| " + " | ".join([ds, *(fmt(v) for v in row_vals),
                                            *(fmt(v) for v in stats)]) + " |")
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown report format {format!r}")
