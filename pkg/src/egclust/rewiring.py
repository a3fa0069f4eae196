"""Edge-removing-and-rewiring (ERR) policies EG1, EG2, EG3.

A player first picks a high-payoff subset of its neighbors (the explorer
set), pools those neighbors' own neighbor sets into an extended candidate
set, and finally keeps the k highest-payoff players from its neighbors plus
the candidates. Ties prefer incumbent neighbors, then the smaller id, so a
player without strictly better candidates keeps its neighbor set unchanged.

The policies differ only in how the explorer set is chosen:
  eg1 - the top floor(eta * k) neighbors by payoff, eta fixed;
  eg2 - neighbors with payoff at or above the neighborhood mean, with a
        freeze when all neighbor payoffs are equal (no information to act on);
  eg3 - like eg1 but with a per-player ratio that grows as the player's own
        payoff falls relative to the population: poor players explore hardest.

All explorer sets and candidate pools are read from the pre-rewiring
snapshot for every player (synchronous semantics).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .network import EvolvingNetwork

__all__ = [
    "ALGORITHMS",
    "ErrPolicy",
    "explorer_set_eg1",
    "explorer_set_eg2",
    "exploration_ratio_eg3",
    "apply_err",
    "apply_err_all",
]

ALGORITHMS = ("eg1", "eg2", "eg3")


@dataclass(frozen=True)
class ErrPolicy:
    """Rewiring policy: kind in {eg1, eg2, eg3}; eta only for eg1."""

    kind: str
    eta: float | None = None

    def __post_init__(self):
        if self.kind not in ALGORITHMS:
            raise ValueError(f"unknown algorithm {self.kind!r}; expected one of {ALGORITHMS}")
        if self.kind == "eg1":
            if self.eta is None:
                raise ValueError("eg1 requires an exploration ratio eta")
            if not 0.0 <= self.eta <= 1.0:
                raise ValueError(f"eta must be in [0, 1], got {self.eta}")
        elif self.eta is not None:
            raise ValueError(f"eta is only meaningful for eg1, not {self.kind}")


def _top_by_payoff(ids: np.ndarray, u: np.ndarray, count: int) -> np.ndarray:
    """The `count` ids with the largest payoffs; ties toward smaller id."""
    ids = np.sort(np.asarray(ids, dtype=np.int64))
    order = np.argsort(-u[ids], kind="stable")  # stable on id-sorted input
    return ids[order[:count]]


def explorer_set_eg1(
    i: int, net: EvolvingNetwork, u: np.ndarray, eta: float
) -> np.ndarray:
    """Top floor(eta*k) neighbors of i by payoff. Empty at eta=0 (frozen)."""
    if not 0.0 <= eta <= 1.0:
        raise ValueError(f"eta must be in [0, 1], got {eta}")
    return _top_by_payoff(net.gamma[i], u, int(np.floor(eta * net.k)))


def explorer_set_eg2(i: int, net: EvolvingNetwork, u: np.ndarray) -> np.ndarray:
    """Neighbors with payoff >= the neighborhood mean.

    When every neighbor payoff is equal there is nothing to rank and the
    caller must leave the neighbor set unchanged (self-protective freeze);
    the returned set is then the full neighborhood.
    """
    scores = u[net.gamma[i]]
    return net.gamma[i][scores >= scores.mean()]


def exploration_ratio_eg3(i: int, u: np.ndarray) -> float:
    """(max u + min u - u(i)) / max u, extrema over all players."""
    umax = float(u.max())
    if umax <= 0:
        raise ValueError("payoffs must be positive")
    return (umax + float(u.min()) - float(u[i])) / umax


def apply_err(
    i: int, net: EvolvingNetwork, u: np.ndarray, policy: ErrPolicy
) -> np.ndarray:
    """New neighbor set for player i (sorted ids, size exactly k)."""
    return apply_err_all(net, u, policy, players=[i])[0]


def apply_err_all(
    net: EvolvingNetwork, u: np.ndarray, policy: ErrPolicy, players=None
) -> np.ndarray:
    """New neighbor table for all players against one immutable snapshot.

    Per player: explorer set per policy, candidate pool = own neighbors plus
    all neighbors of the explorer set, then the k best candidates by
    (payoff desc, incumbent first, id asc).
    """
    gamma, k = net.gamma, net.k
    idx = np.arange(net.n) if players is None else np.asarray(players)
    scores = u[gamma[idx]]

    if policy.kind == "eg2":
        frozen = scores.max(axis=1) == scores.min(axis=1)
        in_plus = scores >= scores.mean(axis=1, keepdims=True)
        counts = None
    else:
        frozen = None
        in_plus = None
        if policy.kind == "eg1":
            counts = np.full(idx.shape, int(np.floor(policy.eta * k)))
        else:  # eg3: per-player ratio from the global payoff spread
            ratio = (u.max() + u.min() - u[idx]) / u.max()
            counts = np.floor(ratio * k).astype(np.int64)
        order = np.argsort(-scores, axis=1, kind="stable")

    out = np.empty((len(idx), k), dtype=np.int64)
    for r, i in enumerate(idx):
        row = gamma[i]
        if in_plus is not None:  # eg2
            if frozen[r]:
                out[r] = row
                continue
            explorers = row[in_plus[r]]
        else:
            c = counts[r]
            if c == 0:
                out[r] = row
                continue
            explorers = row[order[r, :c]]
        cand = np.unique(np.concatenate([row, gamma[explorers].ravel()]))
        outsider = ~np.isin(cand, row, assume_unique=True)
        best = np.lexsort((outsider, -u[cand]))[:k]  # stable: id asc last
        out[r] = np.sort(cand[best])
    return out
