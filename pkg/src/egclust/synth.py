"""Seeded 2-D Gaussian blob datasets for demos and sanity checks."""

from __future__ import annotations

import numpy as np

from .dataset import Dataset

__all__ = ["gaussian_blobs"]


def gaussian_blobs(
    n_points: int = 150,
    n_blobs: int = 3,
    seed: int = 0,
    spread: float = 0.5,
    separation: float = 10.0,
) -> Dataset:
    """`n_points` points split evenly over `n_blobs` isotropic Gaussians.

    Blob centers sit on a circle with adjacent centers `separation` apart
    (a single blob sits at the origin), so separation >> spread gives
    well-separated groups. Blob membership is the ground-truth label.
    """
    if n_blobs < 1 or n_points < n_blobs:
        raise ValueError("need at least one point per blob")
    if spread <= 0 or separation <= 0:
        raise ValueError("spread and separation must be positive")
    rng = np.random.default_rng(seed)
    if n_blobs == 1:
        centers = np.zeros((1, 2))
    else:
        angles = 2.0 * np.pi * np.arange(n_blobs) / n_blobs
        radius = separation / (2.0 * np.sin(np.pi / n_blobs))
        centers = radius * np.column_stack([np.cos(angles), np.sin(angles)])
    sizes = np.full(n_blobs, n_points // n_blobs)
    sizes[: n_points % n_blobs] += 1
    points = np.vstack(
        [rng.normal(c, spread, size=(s, 2)) for c, s in zip(centers, sizes)]
    )
    labels = np.repeat(np.arange(n_blobs), sizes)
    return Dataset(
        points=points,
        labels=labels,
        feature_names=["x", "y"],
        name=f"blobs{n_blobs}x{n_points}s{seed}",
        label_names=[str(b) for b in range(n_blobs)],
    )
