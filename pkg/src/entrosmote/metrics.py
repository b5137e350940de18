"""Confusion matrix and the evaluation measures: precision, recall, F-value
and the single-operating-point AUC (1 + TP_rate - FP_rate) / 2.

Note this AUC is computed from one confusion matrix, not by integrating a
ROC curve over scores; readers expecting a ranking AUC should not compare
the two directly. Metrics with a zero denominator are reported as None
("undefined"), never silently coerced to 0.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class ConfusionMatrix:
    tp: int
    fn: int
    fp: int
    tn: int

    def __post_init__(self):
        if min(self.tp, self.fn, self.fp, self.tn) < 0:
            raise ValueError("confusion counts must be non-negative")


@dataclass(frozen=True)
class MetricSet:
    precision: float | None
    recall: float | None
    f_value: float | None
    auc: float | None
    beta: float = 1.0


def confusion(actual, predicted) -> ConfusionMatrix:
    """Count the four cells; True marks the positive (minority) class."""
    actual = np.asarray(actual, dtype=bool)
    predicted = np.asarray(predicted, dtype=bool)
    if actual.shape != predicted.shape or actual.size == 0:
        raise ValueError("actual and predicted must be non-empty and of equal length")
    return ConfusionMatrix(
        tp=int((actual & predicted).sum()),
        fn=int((actual & ~predicted).sum()),
        fp=int((~actual & predicted).sum()),
        tn=int((~actual & ~predicted).sum()),
    )


def metric_set(m: ConfusionMatrix, beta: float = 1.0) -> MetricSet:
    if beta <= 0:
        raise ValueError("beta must be positive")
    precision = m.tp / (m.tp + m.fp) if m.tp + m.fp > 0 else None
    recall = m.tp / (m.tp + m.fn) if m.tp + m.fn > 0 else None

    if precision is None or recall is None:
        f_value = None
    elif precision + recall == 0:
        f_value = 0.0
    else:
        b2 = beta * beta
        f_value = (1 + b2) * recall * precision / (b2 * recall + precision)

    tp_rate = m.tp / (m.tp + m.fn) if m.tp + m.fn > 0 else None
    fp_rate = m.fp / (m.fp + m.tn) if m.fp + m.tn > 0 else None
    auc = (1 + tp_rate - fp_rate) / 2 if tp_rate is not None and fp_rate is not None else None

    return MetricSet(precision, recall, f_value, auc, beta)
