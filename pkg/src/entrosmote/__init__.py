"""entrosmote: entropy-weighted SMOTE variants for two-class imbalanced data.

Balances datasets with synthetic minority oversampling on top of an
attribute-weighted KNN, where the weights come from information gain under a
choice of entropy functional (Shannon / maximum-entropy / Tsallis / Renyi),
and evaluates methods with a stratified-CV weighted-1NN harness.
"""

__version__ = "0.1.0"

from .data import Dataset, DiscretizationPolicy, ImbalanceStats, discretize, imbalance_stats
from .entropy import (
    EntropySpec,
    FeatureWeights,
    conditional_entropy,
    entropy,
    feature_weights,
    gain,
)
from .errors import DataError, ParseError
from .cluster import ClusterModel, hac, label_by_cluster
from .neighbors import (
    KnnConfig,
    classify_1nn,
    nearest_neighbors,
    select_k_loocv,
    weighted_distance,
)
from .smote import SmoteConfig, SyntheticBatch, make_variant, oversample
from .metrics import ConfusionMatrix, MetricSet, confusion, metric_set
from .bench import DatasetSource, EvaluationReport, ExperimentPlan, emit_report, run_plan

__all__ = [
    "__version__",
    "Dataset", "DiscretizationPolicy", "ImbalanceStats", "discretize", "imbalance_stats",
    "EntropySpec", "FeatureWeights", "conditional_entropy", "entropy", "feature_weights", "gain",
    "DataError", "ParseError",
    "ClusterModel", "hac", "label_by_cluster",
    "KnnConfig", "classify_1nn", "nearest_neighbors", "select_k_loocv", "weighted_distance",
    "SmoteConfig", "SyntheticBatch", "make_variant", "oversample",
    "ConfusionMatrix", "MetricSet", "confusion", "metric_set",
    "DatasetSource", "EvaluationReport", "ExperimentPlan", "emit_report", "run_plan",
]
