"""The oversampling engine behind the five method variants.

A variant is just a :class:`SmoteConfig` whose entropy spec drives the
attribute weighting: ``smote`` (no weighting), ``mismote`` (Shannon gain,
i.e. mutual information), ``maesmote`` (smoothed maximum-entropy estimate),
``tesmote`` (Tsallis, order 2) and ``resmote`` (Renyi, order 2).

Generation semantics: with oversampling amount N (a positive multiple of
100), g = N / 100 synthetic rows are produced per minority row. When g <= k
the g nearest minority neighbors are used one each ("one sample in each
direction"); when g > k neighbors are drawn uniformly with replacement from
the k-nearest list. Each synthetic row is seed + u * (neighbor - seed) with
u ~ U[0, 1).

Randomness is a PCG64 generator; each minority row gets its own substream
seeded by SeedSequence([seed, row_index]), so output is reproducible across
platforms and independent of any internal parallelism.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from .cluster import hac
from .data import Dataset, DiscretizationPolicy, discretize
from .entropy import EntropySpec, FeatureWeights, feature_weights
from .errors import DataError
from .neighbors import KnnConfig, nearest_neighbors, select_k_loocv

VARIANTS = ("smote", "mismote", "maesmote", "tesmote", "resmote")


@dataclass(frozen=True)
class SmoteConfig:
    """Everything needed to reproduce one balancing run."""

    amount: int | str = "auto"  # percent, positive multiple of 100, or 'auto'
    k: int | str = 5
    entropy: EntropySpec | None = None
    seed: int = 0
    discretization: DiscretizationPolicy = field(default_factory=DiscretizationPolicy)
    use_cluster_preselect: bool = True
    per_coordinate_u: bool = False
    normalize_weights: bool = False

    def __post_init__(self):
        if self.amount != "auto":
            if not isinstance(self.amount, int) or self.amount < 100 or self.amount % 100:
                raise ValueError(
                    f"amount must be 'auto' or a positive multiple of 100, got {self.amount!r}"
                )
        if self.k != "auto" and (not isinstance(self.k, int) or self.k < 1):
            raise ValueError(f"k must be a positive integer or 'auto', got {self.k!r}")


@dataclass(frozen=True)
class SyntheticBatch:
    """Generated rows plus the provenance needed for leakage audits."""

    rows: np.ndarray  # (n_synthetic, n_cols), all labeled positive
    provenance: tuple[tuple[int, int, float], ...]  # (seed row, neighbor row, u)
    weights: FeatureWeights
    resolved_amount: int
    resolved_k: int
    seed: int


def make_variant(name: str, **overrides) -> SmoteConfig:
    """Config template for a named method variant."""
    specs = {
        "smote": None,
        "mismote": EntropySpec("shannon"),
        "maesmote": EntropySpec("maxent"),
        "tesmote": EntropySpec("tsallis", alpha=2.0),
        "resmote": EntropySpec("renyi", alpha=2.0),
    }
    if name not in specs:
        raise ValueError(f"unknown method {name!r}; expected one of {VARIANTS}")
    return replace(SmoteConfig(entropy=specs[name]), **overrides)


def resolve_amount(n_positive: int, n_negative: int, amount) -> int:
    """'auto' tops the minority up toward the majority without overshooting."""
    if amount == "auto":
        return max(100, 100 * ((n_negative - n_positive) // max(n_positive, 1)))
    return amount


def _row_rng(seed: int, row_index: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, row_index])))


def oversample(d: Dataset, cfg: SmoteConfig) -> tuple[Dataset, SyntheticBatch]:
    """Balance a labeled two-class dataset by synthesizing minority rows.

    Originals come first in the output, synthetics appended in (seed row,
    neighbor rank) order and labeled positive. Fully deterministic given
    ``cfg.seed``.
    """
    n_pos, n_neg = d.n_positive, d.n_negative
    if n_pos < 2:
        raise DataError("insufficient minority class: need at least 2 positive rows")
    if n_neg < 1:
        raise DataError("no negative class present")

    if cfg.entropy is None:
        weights = FeatureWeights(np.ones(d.n_cols), np.zeros(d.n_cols))
    else:
        binned = discretize(d, cfg.discretization)
        weights = feature_weights(binned, d.labels, cfg.entropy, cfg.normalize_weights)

    minority_idx = np.flatnonzero(d.labels)
    minority = d.features[minority_idx]

    if cfg.k == "auto":
        k = select_k_loocv(d, KnnConfig(k="auto", weights=weights))
    else:
        k = cfg.k
    k_eff = min(k, n_pos - 1)

    preselect = None
    if cfg.use_cluster_preselect and n_pos >= 2:
        preselect = hac(minority, 2)

    amount = resolve_amount(n_pos, n_neg, cfg.amount)
    g = amount // 100

    synth_rows = []
    provenance = []
    for local_i, row_index in enumerate(minority_idx):
        seed_row = minority[local_i]
        nbrs = nearest_neighbors(
            seed_row, minority, k_eff, weights, preselect=preselect, exclude=local_i
        )
        rng = _row_rng(cfg.seed, int(row_index))
        m = len(nbrs)
        for j in range(g):
            local_nb = nbrs[j][0] if g <= m else nbrs[int(rng.integers(m))][0]
            nb_row = minority[local_nb]
            if cfg.per_coordinate_u:
                u = rng.random(d.n_cols)
                synth = seed_row + u * (nb_row - seed_row)
                u_rec = float(u.mean())  # summary only; full vector not retained
            else:
                u = rng.random()
                synth = seed_row + u * (nb_row - seed_row)
                u_rec = float(u)
            synth_rows.append(synth)
            provenance.append((int(row_index), int(minority_idx[local_nb]), u_rec))

    synth = np.array(synth_rows).reshape(len(synth_rows), d.n_cols)
    balanced = Dataset(
        np.vstack([d.features, synth]),
        np.concatenate([d.labels, np.ones(len(synth_rows), dtype=bool)]),
        d.attribute_names,
    )
    batch = SyntheticBatch(synth, tuple(provenance), weights, amount, k_eff, cfg.seed)
    return balanced, batch
