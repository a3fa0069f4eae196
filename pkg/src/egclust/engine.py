"""Synchronous game loop, stability detection, and cluster extraction.

One iteration: payoffs are read from the current snapshot, every player
computes its replacement neighbor set against that same snapshot, the
network swaps atomically, and preferences are redistributed and pushed
toward each row's max-payoff neighbor. The run stops once every player's
max-preference choice is stable - constant over a window of snapshots or
repeating with a short period - and the weakly connected components of the
resulting choice graph are the clusters.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .dataset import Dataset
from .dynamics import (
    PreferenceTable,
    compute_payoffs,
    init_preferences,
    update_preferences,
)
from .metric import DistanceMatrix, build_distance_matrix
from .network import EvolvingNetwork, build_knn_network, rewire
from .rewiring import ErrPolicy, apply_err_all

__all__ = [
    "GameState",
    "RunConfig",
    "RunReport",
    "initial_state",
    "step",
    "pointer_snapshot",
    "detect_ess",
    "extract_clusters",
    "run",
]


@dataclass(frozen=True)
class GameState:
    """Immutable snapshot: network, preferences, and their payoffs."""

    dm: DistanceMatrix
    net: EvolvingNetwork
    prefs: PreferenceTable
    u: np.ndarray

    @property
    def t(self) -> int:
        return self.net.t


@dataclass(frozen=True)
class RunConfig:
    """Parameters of one clustering run.

    The engine itself is deterministic (all ties break by player id), so
    there is no seed here; randomness only enters upstream in data
    preparation (imputation, synthetic data).
    """

    k: int
    policy: ErrPolicy
    sigma: float = 1.0
    max_iters: int = 200
    window: int = 5
    max_period: int = 4

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be at least 1")
        if self.sigma <= 0:
            raise ValueError("sigma must be positive")
        if self.max_iters < 0:
            raise ValueError("max_iters must be nonnegative")
        if self.window < 2:
            raise ValueError("window must be at least 2")
        if self.max_period < 1:
            raise ValueError("max_period must be at least 1")


@dataclass(frozen=True)
class RunReport:
    """Outcome of a run: clusters plus per-iteration statistics."""

    labels: np.ndarray                 # (N,) cluster ids 1..n_clusters
    n_clusters: int
    iterations: int
    rewired_per_iter: list[int]
    pointer_history: list[np.ndarray]  # max-preference choice per player, t=0 included
    converged: bool
    distinct_pointers_per_iter: list[int] = field(default_factory=list)
    final_payoffs: np.ndarray | None = None


def initial_state(dm: DistanceMatrix, k: int) -> GameState:
    net = build_knn_network(dm, k)
    prefs = init_preferences(net)
    return GameState(dm=dm, net=net, prefs=prefs, u=compute_payoffs(net, prefs, dm))


def step(state: GameState, policy: ErrPolicy) -> tuple[GameState, int]:
    """Advance one iteration; returns the new state and edges rewired."""
    new_gamma = apply_err_all(state.net, state.u, policy)
    net, n_rewired = rewire(state.net, new_gamma)
    prefs = update_preferences(state.prefs, state.net, net, state.u)
    u = compute_payoffs(net, prefs, state.dm)
    return GameState(dm=state.dm, net=net, prefs=prefs, u=u), n_rewired


def pointer_snapshot(state: GameState) -> np.ndarray:
    """Each player's max-preference neighbor (ties to the smaller id)."""
    cols = np.argmax(state.prefs.p, axis=1)  # first max = smallest id
    return state.net.gamma[np.arange(state.net.n), cols]


def detect_ess(history, window: int, max_period: int) -> bool:
    """Stable max-preference choices: the last `window` snapshots identical,
    or some period P in 2..max_period holding over the last 2*P snapshots."""
    if window < 2:
        raise ValueError("window must be at least 2")
    if len(history) >= window:
        tail = history[-window:]
        if all(np.array_equal(tail[0], s) for s in tail[1:]):
            return True
    for period in range(2, max_period + 1):
        if len(history) < 2 * period:
            break
        if all(
            np.array_equal(history[-1 - o], history[-1 - o - period])
            for o in range(period)
        ):
            return True
    return False


def extract_clusters(pointers: np.ndarray) -> tuple[np.ndarray, int]:
    """Weakly connected components of the choice graph i -> pointers(i).

    Labels are 1-based, numbered by each component's smallest member.
    """
    n = len(pointers)
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j in enumerate(np.asarray(pointers, dtype=np.int64)):
        ri, rj = find(i), find(int(j))
        if ri != rj:
            parent[max(ri, rj)] = min(ri, rj)

    roots = [find(i) for i in range(n)]
    label_of_root: dict[int, int] = {}
    labels = np.empty(n, dtype=np.int64)
    for i, r in enumerate(roots):  # roots are component minima; first touch orders them
        if r not in label_of_root:
            label_of_root[r] = len(label_of_root) + 1
        labels[i] = label_of_root[r]
    return labels, len(label_of_root)


def run(dataset: Dataset, config: RunConfig, step_callback=None) -> RunReport:
    """Full clustering run: distances, knn network, iterate to stability.

    `step_callback(state, edges_rewired)`, when given, fires after every
    iteration (and once for the initial state with edges_rewired=0); used
    for per-iteration dumps and invariant checks.
    """
    if dataset.has_missing:
        raise ValueError("dataset has missing cells; impute before running")
    dm = build_distance_matrix(dataset, config.sigma)
    state = initial_state(dm, config.k)
    history = [pointer_snapshot(state)]
    distinct = [int(len(np.unique(history[-1])))]
    rewired: list[int] = []
    if step_callback is not None:
        step_callback(state, 0)

    converged = False
    for _ in range(config.max_iters):
        state, n_rewired = step(state, config.policy)
        rewired.append(n_rewired)
        history.append(pointer_snapshot(state))
        distinct.append(int(len(np.unique(history[-1]))))
        if step_callback is not None:
            step_callback(state, n_rewired)
        if detect_ess(history, config.window, config.max_period):
            converged = True
            break

    labels, n_clusters = extract_clusters(history[-1])
    return RunReport(
        labels=labels,
        n_clusters=n_clusters,
        iterations=len(rewired),
        rewired_per_iter=rewired,
        pointer_history=history,
        converged=converged,
        distinct_pointers_per_iter=distinct[1:],
        final_payoffs=state.u,
    )
