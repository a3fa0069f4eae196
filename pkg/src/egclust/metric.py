"""Exponential pairwise distance.

The weight between two points is exp(||xi - xj|| / (2 sigma^2)) with the
Euclidean norm, so every entry is >= 1, self-distance is exactly 1, and the
reciprocals used in payoffs stay in (0, 1]. Distances are precomputed once
per run; the matrix is immutable afterwards.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import pdist, squareform

__all__ = ["DistanceMatrix", "distance", "build_distance_matrix"]


@dataclass(frozen=True)
class DistanceMatrix:
    """Symmetric N x N weight matrix, diagonal exactly 1."""

    d: np.ndarray
    sigma: float

    @property
    def n(self) -> int:
        return self.d.shape[0]


def distance(xi, xj, sigma: float = 1.0) -> float:
    """exp(||xi - xj|| / (2 sigma^2)); always >= 1."""
    if sigma <= 0:
        raise ValueError("sigma must be positive")
    xi = np.asarray(xi, dtype=float)
    xj = np.asarray(xj, dtype=float)
    if xi.shape != xj.shape:
        raise ValueError(f"vector length mismatch: {xi.shape} vs {xj.shape}")
    if not (np.isfinite(xi).all() and np.isfinite(xj).all()):
        raise ValueError("non-finite input vector")
    return float(np.exp(np.linalg.norm(xi - xj) / (2.0 * sigma * sigma)))


def build_distance_matrix(data, sigma: float = 1.0) -> DistanceMatrix:
    """Full pairwise matrix for a Dataset or raw point array.

    Each unordered pair is computed once (exact symmetry); the diagonal is
    forced to 1. Overflow to infinity is an error: rescale (standardize) the
    data or raise sigma.
    """
    if sigma <= 0:
        raise ValueError("sigma must be positive")
    points = np.asarray(getattr(data, "points", data), dtype=float)
    if points.ndim != 2:
        raise ValueError("expected an N x m point matrix")
    if not np.isfinite(points).all():
        raise ValueError("points contain non-finite values (impute missing data first)")
    with np.errstate(over="ignore"):  # overflow checked explicitly below
        d = squareform(np.exp(pdist(points) / (2.0 * sigma * sigma)))
    np.fill_diagonal(d, 1.0)
    if not np.isfinite(d).all():
        raise ValueError(
            "distance overflow: point separations too large for exp scaling; "
            "standardize the data or increase sigma"
        )
    return DistanceMatrix(d=d, sigma=float(sigma))
