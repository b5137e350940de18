"""Entropy functionals, conditional entropy, information gain and the
per-attribute weight vector that distinguishes the four oversampling variants.

All logarithms are base 2. Four functionals are supported:

* ``shannon``      -sum p_i log2 p_i (0 log 0 := 0)
* ``renyi``        (1 / (1 - alpha)) log2 sum p_i^alpha
* ``tsallis``      (1 / (alpha - 1)) (1 - sum p_i^alpha)
* ``maxent``       the Shannon functional applied to Laplace add-one smoothed
                   probability estimates; smoothing happens wherever
                   distributions are estimated from counts (conditional
                   entropy, gain, feature weights), pulling sparse partitions
                   toward the uniform maximum-entropy distribution.

Gains are clamped at zero: for the Shannon functional the clamp is provably
inert, for the generalized functionals the weighted-average conditional form
can exceed the marginal entropy.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DataError

KINDS = ("shannon", "renyi", "tsallis", "maxent")


@dataclass(frozen=True)
class EntropySpec:
    """Selects an entropy functional and its order parameter."""

    kind: str = "shannon"
    alpha: float = 2.0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown entropy kind {self.kind!r}; expected one of {KINDS}")
        if self.kind in ("renyi", "tsallis"):
            if self.alpha <= 0 or self.alpha == 1.0:
                raise ValueError(f"{self.kind} requires alpha > 0 and alpha != 1, got {self.alpha}")


@dataclass(frozen=True)
class FeatureWeights:
    """Per-attribute weights lambda and the raw gains they were derived from."""

    lambda_: np.ndarray
    gains: np.ndarray

    def __post_init__(self):
        lam = np.asarray(self.lambda_, dtype=np.float64)
        g = np.asarray(self.gains, dtype=np.float64)
        lam.setflags(write=False)
        g.setflags(write=False)
        object.__setattr__(self, "lambda_", lam)
        object.__setattr__(self, "gains", g)


def _validate_probs(p: np.ndarray) -> np.ndarray:
    p = np.asarray(p, dtype=np.float64)
    if p.ndim != 1 or p.size == 0:
        raise ValueError("probability vector must be non-empty and 1-d")
    if (p < 0).any():
        raise ValueError("probability vector has negative entries")
    total = p.sum()
    if abs(total - 1.0) > 1e-6:
        raise ValueError(f"probabilities sum to {total}, not 1")
    return p


def entropy(p, spec: EntropySpec = EntropySpec()) -> float:
    """Entropy of a probability vector under the selected functional.

    For ``maxent`` the vector is taken as the (already smoothed) estimate, so
    the Shannon functional is applied; smoothing itself lives in the
    count-based estimators below.
    """
    p = _validate_probs(p)
    if spec.kind in ("shannon", "maxent"):
        nz = p[p > 0]
        value = float(-(nz * np.log2(nz)).sum())
    elif spec.kind == "renyi":
        value = float(np.log2((p ** spec.alpha).sum()) / (1.0 - spec.alpha))
    else:  # tsallis
        value = float((1.0 - (p ** spec.alpha).sum()) / (spec.alpha - 1.0))
    return max(value, 0.0)


def class_distribution(counts, spec: EntropySpec = EntropySpec()) -> np.ndarray:
    """Probability estimate from class counts; add-one smoothed for maxent."""
    c = np.asarray(counts, dtype=np.float64)
    if spec.kind == "maxent":
        c = c + 1.0
    total = c.sum()
    if total == 0:
        raise DataError("empty partition: no counts to estimate from")
    return c / total


def _class_counts(labels: np.ndarray, classes: np.ndarray) -> np.ndarray:
    return np.array([(labels == c).sum() for c in classes], dtype=np.float64)


def conditional_entropy(labels, bins, spec: EntropySpec = EntropySpec()) -> float:
    """Weighted average of within-partition class entropies, partitions given
    by the attribute's bin values."""
    labels = np.asarray(labels)
    bins = np.asarray(bins)
    if labels.shape != bins.shape or labels.size == 0:
        raise ValueError("labels and bins must be non-empty and of equal length")
    classes = np.unique(labels)
    n = labels.size
    total = 0.0
    for b in np.unique(bins):
        mask = bins == b
        size = int(mask.sum())
        dist = class_distribution(_class_counts(labels[mask], classes), spec)
        total += (size / n) * entropy(dist, spec)
    return total


def gain(labels, bins, spec: EntropySpec = EntropySpec()) -> float:
    """Information gain: class entropy minus conditional entropy, clamped at 0.

    With the Shannon functional this equals the mutual information between
    class and attribute.
    """
    labels = np.asarray(labels)
    classes = np.unique(labels)
    marginal = entropy(class_distribution(_class_counts(labels, classes), spec), spec)
    return max(0.0, marginal - conditional_entropy(labels, bins, spec))


def weights_from_gains(gains, normalize: bool = False) -> np.ndarray:
    """lambda_i = gain_i * e^{gain_i} / sum_j gain_j.

    The denominator is the plain gain sum, so weights need not sum to 1;
    only their ratios matter for nearest-neighbor ordering. ``normalize``
    rescales them to sum to 1. All-zero gains fall back to uniform weights.
    """
    gains = np.asarray(gains, dtype=np.float64)
    if gains.size == 0:
        raise ValueError("need at least one gain")
    if (gains < 0).any():
        raise ValueError("gains must be non-negative")
    total = gains.sum()
    if total == 0.0:
        lam = np.full(gains.size, 1.0 / gains.size)
    else:
        lam = gains * np.exp(gains) / total
    if normalize and lam.sum() > 0:
        lam = lam / lam.sum()
    return lam


def feature_weights(
    binned,
    labels,
    spec: EntropySpec = EntropySpec(),
    normalize: bool = False,
) -> FeatureWeights:
    """Per-attribute weights from the information gain of each attribute."""
    binned = np.asarray(binned)
    labels = np.asarray(labels)
    if binned.ndim != 2 or binned.shape[1] < 1:
        raise ValueError("binned matrix must be 2-d with at least one attribute")
    if np.unique(labels).size < 2:
        raise DataError("feature weights require both classes present")
    gains = np.array([gain(labels, binned[:, j], spec) for j in range(binned.shape[1])])
    return FeatureWeights(weights_from_gains(gains, normalize), gains)
