"""Clustering by evolutionary games on an evolving knn network.

Data points act as players on a weighted directed k-nearest-neighbor graph.
Each iteration they collect payoffs from the groups they joined, rewire
their out-edges toward higher-payoff players (policies eg1/eg2/eg3), and
shift preference mass toward their best neighbor. Once every player's
max-preference choice is stable, the components of the choice graph are the
clusters.
"""

from .dataset import Dataset, impute_missing, load_csv, standardize
from .dynamics import (
    PreferenceTable,
    compute_payoffs,
    grover_adjust,
    init_preferences,
    redistribute,
    select_target,
    update_preferences,
)
from .engine import (
    GameState,
    RunConfig,
    RunReport,
    detect_ess,
    extract_clusters,
    initial_state,
    pointer_snapshot,
    run,
    step,
)
from .evaluation import accuracy, contingency_table, map_labels, mapping_mode
from .metric import DistanceMatrix, build_distance_matrix, distance
from .network import EvolvingNetwork, build_knn_network, rewire
from .rewiring import (
    ALGORITHMS,
    ErrPolicy,
    apply_err,
    apply_err_all,
    exploration_ratio_eg3,
    explorer_set_eg1,
    explorer_set_eg2,
)
from .synth import gaussian_blobs

__version__ = "0.1.0"

__all__ = [
    "ALGORITHMS",
    "Dataset",
    "DistanceMatrix",
    "ErrPolicy",
    "EvolvingNetwork",
    "GameState",
    "PreferenceTable",
    "RunConfig",
    "RunReport",
    "accuracy",
    "apply_err",
    "apply_err_all",
    "build_distance_matrix",
    "build_knn_network",
    "compute_payoffs",
    "contingency_table",
    "detect_ess",
    "distance",
    "exploration_ratio_eg3",
    "explorer_set_eg1",
    "explorer_set_eg2",
    "extract_clusters",
    "gaussian_blobs",
    "grover_adjust",
    "impute_missing",
    "init_preferences",
    "initial_state",
    "load_csv",
    "map_labels",
    "mapping_mode",
    "pointer_snapshot",
    "redistribute",
    "rewire",
    "run",
    "select_target",
    "standardize",
    "step",
    "update_preferences",
]
