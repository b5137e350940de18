#!/usr/bin/env python3
"""Regenerate the vendored KEEL-format fixture datasets under data/keel/.

The fixtures mirror the row counts and class distributions of the eleven
public benchmark datasets used in the experiments (iris 150 rows / IR 4,
yeast 1484 / IR 2.46, glass 214, ecoli 336, pima 768, newthyroid 215,
wisconsin 683, ...). Feature values are synthetic: per-class Gaussian blobs
with moderate overlap, drawn from a fixed seed, so everything in the repo is
redistributable and byte-stable.

Run from the repository root: python scripts/make_fixtures.py
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

OUT_DIR = Path(__file__).resolve().parent.parent / "data" / "keel"

# relation -> (n_attrs, {class value: count}, mean spread)
FILES = {
    "iris": (4, {"1": 30, "2": 60, "3": 60}, 1.0),
    "ecoli": (7, {"1": 120, "2": 42, "3": 42, "4": 35, "5": 30, "6": 25, "7": 22, "8": 20}, 1.0),
    "glass": (9, {"1": 70, "2": 21, "3": 40, "5": 13, "6": 35, "7": 35}, 1.0),
    "glass6": (9, {"1": 80, "2": 50, "6": 18, "7": 36}, 1.0),
    "newthyroid": (5, {"1": 144, "2": 36, "3": 35}, 1.0),
    "pima": (8, {"1": 683, "2": 85}, 1.0),
    "yeast": (8, {"1": 463, "2": 429, "3": 244, "4": 163, "5": 51, "6": 44,
                  "7": 35, "8": 30, "9": 20, "10": 5}, 0.8),
    "wisconsin": (9, {"1": 444, "2": 239}, 1.0),
}


def build_file(relation: str, n_attrs: int, class_counts: dict[str, int], spread: float) -> str:
    rng = np.random.Generator(np.random.PCG64(
        np.random.SeedSequence([20260823, sum(map(ord, relation))])))
    rows = []
    for value, count in class_counts.items():
        mean = rng.normal(0.0, spread, n_attrs)
        for _ in range(count):
            rows.append((rng.normal(mean, 1.0), value))
    rng.shuffle(rows)

    names = [f"a{i + 1}" for i in range(n_attrs)]
    features = np.array([r[0] for r in rows])
    lines = [f"@relation {relation}"]
    for j, name in enumerate(names):
        lines.append(f"@attribute {name} real [{features[:, j].min():.5f}, "
                     f"{features[:, j].max():.5f}]")
    values = ", ".join(class_counts)
    lines.append(f"@attribute class {{{values}}}")
    lines.append(f"@inputs {', '.join(names)}")
    lines.append("@outputs class")
    lines.append("@data")
    for feat, value in rows:
        lines.append(",".join(f"{v:.5f}" for v in feat) + f",{value}")
    return "\n".join(lines) + "\n"


def main():
    OUT_DIR.mkdir(parents=True, exist_ok=True)
    for relation, (n_attrs, counts, spread) in FILES.items():
        path = OUT_DIR / f"{relation}.dat"
        path.write_text(build_file(relation, n_attrs, counts, spread))
        total = sum(counts.values())
        print(f"wrote {path} ({total} rows, {n_attrs} attributes)")


if __name__ == "__main__":
    main()
