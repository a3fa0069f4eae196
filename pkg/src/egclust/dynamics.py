"""Payoffs and preference updates.

Each player i holds a preference distribution over its current neighbor set:
row i of `PreferenceTable.p` is aligned column-for-column with row i of the
network's neighbor table and sums to 1. Payoffs weight each joined group by
preference, group degree, and inverse distance.

After rewiring, preferences move in two phases: the mass of dropped
neighbors is split evenly over the new entrants (kept neighbors are
untouched), then the whole row is pushed toward the max-payoff neighbor by
an inversion-about-average step: take square roots, negate the target's
root, reflect every root about their mean, square. Both phases conserve the
row sum algebraically.

`redistribute`, `select_target`, and `grover_adjust` are also exposed as
per-row functions on plain dicts; the table-level `update_preferences` is a
vectorized composition of the three (equivalence is covered by tests).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .metric import DistanceMatrix
from .network import EvolvingNetwork

__all__ = [
    "PreferenceTable",
    "init_preferences",
    "compute_payoffs",
    "redistribute",
    "select_target",
    "grover_adjust",
    "update_preferences",
]


@dataclass(frozen=True)
class PreferenceTable:
    """(N, k) preference weights, row i keyed positionally by gamma[i]."""

    p: np.ndarray

    def row_as_dict(self, net: EvolvingNetwork, i: int) -> dict[int, float]:
        """Row i as {neighbor id: preference}."""
        return {int(j): float(v) for j, v in zip(net.gamma[i], self.p[i])}


def init_preferences(net: EvolvingNetwork) -> PreferenceTable:
    """Uniform start: every neighbor gets 1/k."""
    return PreferenceTable(p=np.full(net.gamma.shape, 1.0 / net.k))


def compute_payoffs(
    net: EvolvingNetwork, prefs: PreferenceTable, dm: DistanceMatrix
) -> np.ndarray:
    """u(i) = sum over j in gamma(i) of p(i,j) * degree(j) / d(i,j)."""
    if prefs.p.shape != net.gamma.shape:
        raise ValueError(
            f"preference table shape {prefs.p.shape} does not match "
            f"neighbor table shape {net.gamma.shape}"
        )
    deg = net.degrees()
    rows = np.arange(net.n)[:, None]
    return (prefs.p * deg[net.gamma] / dm.d[rows, net.gamma]).sum(axis=1)


def redistribute(old_gamma, new_gamma, old_p: dict) -> dict:
    """Move the preference mass of dropped neighbors onto new entrants.

    Kept neighbors retain their old preference; each entrant receives an
    equal share of the departed mass. Neighbor sets have equal size, so
    entrant and departed counts match and the total is conserved.
    """
    old_set, new_set = set(old_gamma), set(new_gamma)
    if len(old_set) != len(new_set):
        raise ValueError("old and new neighbor sets must have the same size")
    if set(old_p) != old_set:
        raise ValueError("preference map keys must equal the old neighbor set")
    entrants = sorted(new_set - old_set)
    out = {j: old_p[j] for j in new_set & old_set}
    if entrants:
        share = sum(old_p[j] for j in old_set - new_set) / len(entrants)
        for j in entrants:
            out[j] = share
    return out


def select_target(gamma, u: np.ndarray) -> int:
    """Neighbor with the largest payoff; ties go to the smaller id."""
    ids = list(gamma)
    if not ids:
        raise ValueError("empty neighbor set")
    return int(min(ids, key=lambda j: (-u[j], j)))


def grover_adjust(p: dict, m: int) -> dict:
    """Inversion about average, concentrating mass on neighbor m.

    Roots r_j = sqrt(p_j) except r_m = -sqrt(p_m); every root is reflected
    about the mean of all roots and squared. The output sums to the input
    sum (algebraic identity) and is nonnegative (squares).
    """
    if m not in p:
        raise ValueError(f"target {m} is not a key of the preference map")
    if any(v < 0 for v in p.values()):
        raise ValueError("preferences must be nonnegative")
    r = {j: np.sqrt(v) for j, v in p.items()}
    r[m] = -r[m]
    ave = sum(r.values()) / len(r)
    return {j: float((2.0 * ave - rj) ** 2) for j, rj in r.items()}


def update_preferences(
    prefs: PreferenceTable,
    old_net: EvolvingNetwork,
    new_net: EvolvingNetwork,
    u_prev: np.ndarray,
) -> PreferenceTable:
    """Redistribute every row onto the new neighbor sets, then apply the
    inversion-about-average step toward each row's max-payoff neighbor
    (payoffs from the pre-rewiring state, argmax over the new set)."""
    n, k = old_net.n, old_net.k
    base = np.arange(n, dtype=np.int64)[:, None] * n
    old_keys = (base + old_net.gamma).ravel()
    new_keys = (base + new_net.gamma).ravel()
    old_p = prefs.p.ravel()

    kept = np.isin(new_keys, old_keys, assume_unique=True)
    dropped = ~np.isin(old_keys, new_keys, assume_unique=True)
    rows_flat = np.repeat(np.arange(n), k)

    # departed mass per row, split evenly over that row's entrants
    departed = np.bincount(rows_flat[dropped], weights=old_p[dropped], minlength=n)
    n_entrants = np.bincount(rows_flat[~kept], minlength=n)
    share = np.divide(departed, n_entrants, out=np.zeros(n), where=n_entrants > 0)

    p = np.empty(n * k)
    p[kept] = old_p[np.searchsorted(old_keys, new_keys[kept])]
    p[~kept] = share[rows_flat[~kept]]
    p = p.reshape(n, k)

    # rows are id-sorted, so argmax lands on the smallest id among ties
    m_col = np.argmax(u_prev[new_net.gamma], axis=1)
    r = np.sqrt(p)
    rows = np.arange(n)
    r[rows, m_col] = -r[rows, m_col]
    ave = r.mean(axis=1, keepdims=True)
    return PreferenceTable(p=(2.0 * ave - r) ** 2)
