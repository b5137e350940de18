from pathlib import Path

import numpy as np
import pytest

from entrosmote.data import Dataset
from entrosmote.keel import mapping_from_positive, parse_keel, reduce_two_class

REPO = Path(__file__).resolve().parent.parent
KEEL_DIR = REPO / "data" / "keel"
PLAN = REPO / "plans" / "keel11.toml"

# name -> (relation file, positive class value, expected rows, listed IR,
#          True when the IR is listed to two decimals and must match +-0.01)
FIXTURES = {
    "iris": ("iris", "1", 150, 4.0, False),
    "ecoli2": ("ecoli", "2", 336, 7.0, False),
    "ecoli3": ("ecoli", "3", 336, 7.0, False),
    "ecoli4": ("ecoli", "4", 336, 8.60, True),
    "glass1": ("glass", "2", 214, 9.0, False),
    "glass5": ("glass", "5", 214, 15.46, True),
    "glass6": ("glass6", "6", 184, 9.0, False),
    "newthyroid2": ("newthyroid", "2", 215, 5.0, False),
    "pima2": ("pima", "2", 768, 8.0, False),
    "yeast2": ("yeast", "2", 1484, 2.46, True),
    "wisconsin2": ("wisconsin", "2", 683, 1.86, True),
}


def load_fixture(name: str) -> Dataset:
    relation, positive, *_ = FIXTURES[name]
    text = (KEEL_DIR / f"{relation}.dat").read_text()
    _, raw = parse_keel(text)
    return reduce_two_class(raw, mapping_from_positive(raw, [positive]))


def two_blobs(n_per=20, separation=10.0, n_cols=2, seed=42, minority=None):
    """Two well-separated Gaussian blobs; blob 0 centered at origin."""
    rng = np.random.default_rng(seed)
    n0 = minority if minority is not None else n_per
    a = rng.normal(0.0, 1.0, (n0, n_cols))
    b = rng.normal(separation, 1.0, (n_per, n_cols))
    features = np.vstack([a, b])
    labels = np.concatenate([np.ones(n0, dtype=bool), np.zeros(n_per, dtype=bool)])
    return Dataset(features, labels)


@pytest.fixture
def iris():
    return load_fixture("iris")


@pytest.fixture(params=sorted(FIXTURES))
def any_fixture(request):
    return request.param, load_fixture(request.param)
