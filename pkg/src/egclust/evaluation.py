"""Clustering accuracy against ground-truth classes.

Predicted cluster ids are arbitrary, so they are first mapped onto class
ids: an exact accuracy-maximizing one-to-one assignment when the cluster
and class counts match, otherwise each cluster maps to its majority class.
Accuracy is then the fraction of points whose mapped label equals the truth.
"""

from __future__ import annotations

import numpy as np
from scipy.optimize import linear_sum_assignment

__all__ = ["contingency_table", "map_labels", "mapping_mode", "accuracy"]


def contingency_table(pred, truth):
    """Counts matrix over (cluster, class) plus the id orderings used."""
    pred = np.asarray(pred)
    truth = np.asarray(truth)
    if pred.shape != truth.shape or pred.ndim != 1 or pred.size == 0:
        raise ValueError("pred and truth must be equal-length non-empty 1-D sequences")
    clusters, pi = np.unique(pred, return_inverse=True)
    classes, ti = np.unique(truth, return_inverse=True)
    counts = np.zeros((len(clusters), len(classes)), dtype=np.int64)
    np.add.at(counts, (pi, ti), 1)
    return counts, clusters, classes


def mapping_mode(pred, truth) -> str:
    """'one_to_one' when cluster and class counts match, else 'majority'."""
    counts, _, _ = contingency_table(pred, truth)
    return "one_to_one" if counts.shape[0] == counts.shape[1] else "majority"


def map_labels(pred, truth) -> dict:
    """Cluster id -> class id mapping.

    One-to-one: the assignment maximizing the number of matched points.
    Majority: each cluster to its modal class, ties to the smaller class id.
    """
    counts, clusters, classes = contingency_table(pred, truth)
    if counts.shape[0] == counts.shape[1]:
        rows, cols = linear_sum_assignment(counts, maximize=True)
        return {clusters[r]: classes[c] for r, c in zip(rows, cols)}
    # argmax returns the first (smallest-id) class among ties
    return {clusters[r]: classes[np.argmax(counts[r])] for r in range(counts.shape[0])}


def accuracy(pred, truth) -> float:
    """Fraction of points whose mapped cluster label equals the true class."""
    mapping = map_labels(pred, truth)
    pred = np.asarray(pred)
    truth = np.asarray(truth)
    mapped = np.array([mapping[c] for c in pred])
    return float(np.mean(mapped == truth))
