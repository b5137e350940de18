"""Core data model: feature matrices, two-class labels, imbalance statistics
and equal-width discretization of continuous attributes.

Labels are stored as a boolean vector with ``True`` for the positive
(minority) class and ``False`` for the negative (majority) class. Arrays are
frozen after construction so datasets can be shared freely between threads.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DataError

POSITIVE = "positive"
NEGATIVE = "negative"


@dataclass(frozen=True)
class Dataset:
    """A dense numeric feature matrix with per-row binary class labels."""

    features: np.ndarray
    labels: np.ndarray
    attribute_names: tuple[str, ...] = ()

    def __post_init__(self):
        features = np.asarray(self.features, dtype=np.float64)
        labels = np.asarray(self.labels, dtype=bool)
        if features.ndim != 2:
            raise DataError(f"features must be 2-d, got shape {features.shape}")
        if labels.shape != (features.shape[0],):
            raise DataError(
                f"labels length {labels.shape} does not match {features.shape[0]} rows"
            )
        bad = np.argwhere(~np.isfinite(features))
        if bad.size:
            r, c = bad[0]
            raise DataError(f"non-finite value at row {r}, column {c}")
        names = tuple(self.attribute_names)
        if not names:
            names = tuple(f"attr{i}" for i in range(features.shape[1]))
        if len(names) != features.shape[1]:
            raise DataError(
                f"{len(names)} attribute names for {features.shape[1]} columns"
            )
        features.setflags(write=False)
        labels.setflags(write=False)
        object.__setattr__(self, "features", features)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "attribute_names", names)

    @property
    def n_rows(self) -> int:
        return self.features.shape[0]

    @property
    def n_cols(self) -> int:
        return self.features.shape[1]

    @property
    def n_positive(self) -> int:
        return int(self.labels.sum())

    @property
    def n_negative(self) -> int:
        return int(self.n_rows - self.labels.sum())

    def subset(self, indices) -> "Dataset":
        """Row-subset view (copying) preserving attribute names."""
        idx = np.asarray(indices)
        return Dataset(self.features[idx], self.labels[idx], self.attribute_names)


@dataclass(frozen=True)
class ImbalanceStats:
    n_positive: int
    n_negative: int
    imbalance_ratio: float


@dataclass(frozen=True)
class DiscretizationPolicy:
    """Equal-width binning over each attribute's observed [min, max]."""

    n_bins: int = 10

    def __post_init__(self):
        if self.n_bins < 2:
            raise ValueError(f"n_bins must be >= 2, got {self.n_bins}")


def imbalance_stats(d: Dataset) -> ImbalanceStats:
    """Counts per class and the ratio n_negative / n_positive."""
    n_pos, n_neg = d.n_positive, d.n_negative
    if n_pos == 0:
        raise DataError("no minority class")
    return ImbalanceStats(n_pos, n_neg, n_neg / n_pos)


def discretize(d, policy: DiscretizationPolicy = DiscretizationPolicy()) -> np.ndarray:
    """Bin each column independently into ``policy.n_bins`` equal-width bins.

    Accepts a Dataset or a raw matrix. The column maximum maps to the top bin
    (``n_bins - 1``); a constant column maps entirely to bin 0.
    """
    features = d.features if isinstance(d, Dataset) else np.asarray(d, dtype=np.float64)
    bad = np.argwhere(~np.isfinite(features))
    if bad.size:
        r, c = bad[0]
        raise DataError(f"non-finite value at row {r}, column {c}")
    lo = features.min(axis=0)
    hi = features.max(axis=0)
    span = hi - lo
    width = np.where(span > 0, span / policy.n_bins, 1.0)
    bins = np.floor((features - lo) / width).astype(np.int64)
    np.clip(bins, 0, policy.n_bins - 1, out=bins)
    return bins
