"""Shared fixtures: toy datasets and the benchmark-dataset registry.

Benchmark files are looked up under data/ in the repo root (see README for
the expected UCI file layout). Iris and Wine fall back to scikit-learn's
bundled copies when no file is present; the other benchmarks are skipped
with an explicit message if their file is missing.
"""

import os

import numpy as np
import pytest

from egclust import Dataset, impute_missing, load_csv, standardize

DATA_DIR = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "data")

# name -> (filename, load_csv kwargs, preprocessing)
BENCHMARKS = {
    "iris": ("iris.data", dict(label_column=-1), None),
    "wine": ("wine.data", dict(label_column=0), "standardize"),
    "soybean": ("soybean-small.data", dict(label_column=-1), None),
    "ionosphere": ("ionosphere.data", dict(label_column=-1), None),
    "breast": ("breast-cancer-wisconsin.data", dict(label_column=-1, drop_columns=[0]), "impute"),
}


def _sklearn_fallback(name):
    try:
        from sklearn import datasets as skd
    except ImportError:
        return None
    if name == "iris":
        raw = skd.load_iris()
    elif name == "wine":
        raw = skd.load_wine()
    else:
        return None
    ds = Dataset(
        points=raw.data,
        labels=raw.target,
        feature_names=list(raw.feature_names),
        name=name,
        label_names=[str(t) for t in raw.target_names],
    )
    return standardize(ds) if name == "wine" else ds


def load_benchmark(name):
    """Benchmark dataset, preprocessed as in the experiments; None if absent."""
    filename, kwargs, prep = BENCHMARKS[name]
    path = os.path.join(DATA_DIR, filename)
    if os.path.exists(path):
        ds = load_csv(path, name=name, **kwargs)
        if prep == "impute":
            ds = impute_missing(ds, seed=0)
        elif prep == "standardize":
            ds = standardize(ds)
        return ds
    return _sklearn_fallback(name)


def benchmark_or_skip(name):
    ds = load_benchmark(name)
    if ds is None:
        pytest.skip(
            f"benchmark dataset {name!r} unavailable: place the UCI file "
            f"{BENCHMARKS[name][0]!r} under data/ (see README)"
        )
    return ds


@pytest.fixture
def line3():
    """Three collinear 1-D points 0, 1, 10."""
    return Dataset(points=np.array([[0.0], [1.0], [10.0]]), name="line3")


@pytest.fixture
def triples9():
    """Three well-separated 1-D triples; blob id is the label."""
    pts = np.array([0.0, 0.5, 1.0, 10.0, 10.5, 11.0, 20.0, 20.5, 21.0]).reshape(-1, 1)
    return Dataset(points=pts, labels=np.repeat([0, 1, 2], 3), name="triples9")
