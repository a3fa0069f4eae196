"""Directed knn network with fixed out-degree k and synchronous rewiring.

Neighbor sets are stored as an (N, k) integer array with every row sorted
ascending; a row may contain the player itself (self-loop). Edge weights are
never stored here: they live in the immutable DistanceMatrix. Rewiring is
double-buffered: a full replacement neighbor table is computed against the
old state and swapped in atomically, producing a new network value.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .metric import DistanceMatrix

__all__ = ["EvolvingNetwork", "build_knn_network", "rewire"]


@dataclass(frozen=True)
class EvolvingNetwork:
    """Snapshot of the directed graph at iteration t."""

    k: int
    gamma: np.ndarray      # (N, k) neighbor ids, rows sorted ascending
    indegree: np.ndarray   # (N,) in-edge counts, self-loops count once
    t: int = 0

    @property
    def n(self) -> int:
        return self.gamma.shape[0]

    def neighbors(self, i: int) -> np.ndarray:
        """Out-neighbor ids of player i (sorted, read-only view)."""
        return self.gamma[i]

    def degree(self, j: int) -> int:
        """indegree(j) + out-degree k; a self-loop contributes to both."""
        if not 0 <= j < self.n:
            raise IndexError(f"player id {j} out of range 0..{self.n - 1}")
        return int(self.indegree[j]) + self.k

    def degrees(self) -> np.ndarray:
        """Vector of degree(j) for all players."""
        return self.indegree + self.k


def _validate_gamma(gamma: np.ndarray, k: int, n: int) -> np.ndarray:
    gamma = np.asarray(gamma, dtype=np.int64)
    if gamma.shape != (n, k):
        raise ValueError(f"neighbor table must be shape ({n}, {k}), got {gamma.shape}")
    if gamma.min() < 0 or gamma.max() >= n:
        raise ValueError("neighbor id out of range")
    gamma = np.sort(gamma, axis=1)
    if k > 1 and (gamma[:, 1:] == gamma[:, :-1]).any():
        bad = int(np.nonzero((gamma[:, 1:] == gamma[:, :-1]).any(axis=1))[0][0])
        raise ValueError(f"neighbor set of player {bad} has duplicate ids")
    return gamma


def _indegree(gamma: np.ndarray, n: int) -> np.ndarray:
    return np.bincount(gamma.ravel(), minlength=n).astype(np.int64)


def build_knn_network(dm: DistanceMatrix, k: int) -> EvolvingNetwork:
    """Initial network: each player points at its k nearest players.

    Self-distance is 1 (the minimum), so every player starts among its own
    neighbors. Distance ties break toward the smaller player id, which makes
    construction deterministic.
    """
    n = dm.n
    if not 1 <= k <= n:
        raise ValueError(f"k must be in 1..{n}, got {k}")
    # stable sort on the id-ordered columns = ties resolved to smaller id
    order = np.argsort(dm.d, axis=1, kind="stable")
    gamma = np.sort(order[:, :k], axis=1).astype(np.int64)
    return EvolvingNetwork(k=k, gamma=gamma, indegree=_indegree(gamma, n), t=0)


def rewire(net: EvolvingNetwork, new_gamma) -> tuple[EvolvingNetwork, int]:
    """Swap in a full replacement neighbor table (synchronous update).

    Returns the network at t+1 and the number of edges rewired, i.e. the
    count of (player, neighbor) pairs present now but not before.
    """
    n, k = net.n, net.k
    gamma = _validate_gamma(new_gamma, k, n)
    # flat keys i*n + j are globally sorted (row-major, rows ascending)
    old_keys = (np.arange(n, dtype=np.int64)[:, None] * n + net.gamma).ravel()
    new_keys = (np.arange(n, dtype=np.int64)[:, None] * n + gamma).ravel()
    added = ~np.isin(new_keys, old_keys, assume_unique=True)
    upd = EvolvingNetwork(k=k, gamma=gamma, indegree=_indegree(gamma, n), t=net.t + 1)
    return upd, int(added.sum())
