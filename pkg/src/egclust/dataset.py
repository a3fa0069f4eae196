"""Tabular dataset loading and preprocessing.

Datasets are plain numeric matrices (rows = points, columns = features) with
an optional class-label column. Missing feature cells are kept as NaN until
`impute_missing` fills them; all downstream code requires complete data.
"""

from __future__ import annotations

import csv
import os
from dataclasses import dataclass, field, replace

import numpy as np

__all__ = ["Dataset", "load_csv", "impute_missing", "standardize"]


@dataclass(frozen=True)
class Dataset:
    """N x m point matrix with optional dense integer class labels.

    Missing cells are NaN in `points`. `label_names[c]` is the original
    class token for dense label id c.
    """

    points: np.ndarray
    labels: np.ndarray | None = None
    feature_names: list[str] = field(default_factory=list)
    name: str = ""
    label_names: list[str] = field(default_factory=list)

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim != 2 or pts.shape[0] < 1 or pts.shape[1] < 1:
            raise ValueError("points must be a non-empty 2-D matrix")
        object.__setattr__(self, "points", pts)
        if np.isinf(pts).any():
            raise ValueError("points contain non-finite (infinite) values")
        if self.labels is not None:
            lab = np.asarray(self.labels, dtype=np.int64)
            if lab.shape != (pts.shape[0],):
                raise ValueError(
                    f"labels must have one entry per row: got {lab.shape}, "
                    f"expected ({pts.shape[0]},)"
                )
            object.__setattr__(self, "labels", lab)
        if not self.feature_names:
            object.__setattr__(
                self, "feature_names", [f"f{j}" for j in range(pts.shape[1])]
            )
        elif len(self.feature_names) != pts.shape[1]:
            raise ValueError("feature_names length must match number of columns")

    @property
    def n_points(self) -> int:
        return self.points.shape[0]

    @property
    def n_features(self) -> int:
        return self.points.shape[1]

    @property
    def has_missing(self) -> bool:
        return bool(np.isnan(self.points).any())


def _resolve_column(selector, header: list[str] | None, n_cols: int) -> int:
    """Map a column selector (int index or header name) to an index."""
    if isinstance(selector, (int, np.integer)):
        idx = int(selector)
        if idx < 0:
            idx += n_cols
        if not 0 <= idx < n_cols:
            raise ValueError(f"column index {selector} out of range for {n_cols} columns")
        return idx
    if header is None:
        raise ValueError(f"column {selector!r} given by name but file has no header")
    try:
        return header.index(str(selector))
    except ValueError:
        raise ValueError(f"column {selector!r} not found in header {header}") from None


def load_csv(
    path,
    label_column=None,
    missing_token: str = "?",
    has_header: bool = False,
    drop_columns=(),
    name: str | None = None,
) -> Dataset:
    """Parse a comma-separated file into a Dataset.

    `label_column` and entries of `drop_columns` are column indices or, when
    `has_header`, header names. Label tokens may be arbitrary strings and are
    mapped to dense integer ids (sorted token order). Cells equal to
    `missing_token` become NaN; any other non-numeric feature cell is an
    error. Rows must be rectangular.
    """
    rows = []
    with open(path, newline="") as fh:
        for row in csv.reader(fh):
            if row:
                rows.append([cell.strip() for cell in row])
    if not rows:
        raise ValueError(f"{path}: empty file")

    header = rows.pop(0) if has_header else None
    if not rows:
        raise ValueError(f"{path}: no data rows")
    n_cols = len(rows[0])
    for r, row in enumerate(rows):
        if len(row) != n_cols:
            raise ValueError(f"{path}: ragged row {r}: {len(row)} cells, expected {n_cols}")

    drop = {_resolve_column(c, header, n_cols) for c in drop_columns}
    label_idx = None
    if label_column is not None:
        label_idx = _resolve_column(label_column, header, n_cols)
        drop.discard(label_idx)
    feature_idx = [j for j in range(n_cols) if j != label_idx and j not in drop]
    if not feature_idx:
        raise ValueError(f"{path}: no feature columns left")

    points = np.empty((len(rows), len(feature_idx)))
    for r, row in enumerate(rows):
        for c, j in enumerate(feature_idx):
            cell = row[j]
            if cell == missing_token:
                points[r, c] = np.nan
            else:
                try:
                    points[r, c] = float(cell)
                except ValueError:
                    raise ValueError(
                        f"{path}: non-numeric cell {cell!r} at row {r}, column {j}"
                    ) from None

    labels = None
    label_names: list[str] = []
    if label_idx is not None:
        tokens = [row[label_idx] for row in rows]
        label_names = sorted(set(tokens))
        to_id = {tok: i for i, tok in enumerate(label_names)}
        labels = np.array([to_id[t] for t in tokens], dtype=np.int64)

    if header is not None:
        feature_names = [header[j] for j in feature_idx]
    else:
        feature_names = [f"f{j}" for j in feature_idx]

    return Dataset(
        points=points,
        labels=labels,
        feature_names=feature_names,
        name=name if name is not None else os.path.splitext(os.path.basename(str(path)))[0],
        label_names=label_names,
    )


def impute_missing(d: Dataset, seed: int) -> Dataset:
    """Fill each missing cell with a seeded uniform draw over its column's
    observed [min, max] range. Identity when nothing is missing."""
    mask = np.isnan(d.points)
    if not mask.any():
        return d
    points = d.points.copy()
    rng = np.random.default_rng(seed)
    for c in np.flatnonzero(mask.any(axis=0)):
        col = points[:, c]
        miss = mask[:, c]
        observed = col[~miss]
        if observed.size == 0:
            raise ValueError(f"column {d.feature_names[c]!r} has no observed values to impute from")
        col[miss] = rng.uniform(observed.min(), observed.max(), size=int(miss.sum()))
    return replace(d, points=points)


def standardize(d: Dataset) -> Dataset:
    """Rescale every column to zero mean and unit sample (n-1) std."""
    if d.has_missing:
        raise ValueError("standardize requires complete data; impute first")
    mean = d.points.mean(axis=0)
    std = d.points.std(axis=0, ddof=1) if d.n_points > 1 else np.zeros(d.n_features)
    bad = np.flatnonzero(std == 0)
    if bad.size:
        raise ValueError(f"column {d.feature_names[bad[0]]!r} has zero variance")
    return replace(d, points=(d.points - mean) / std)
