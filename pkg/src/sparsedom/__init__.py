"""Distance-d domination on sparse graph classes via bottleneck/scattered-set kernelization."""

from .bounds import BigBound, ClassProfile, get_profile, n_threshold, ramsey_upper
from .domination import (
    Answer,
    DominationInstance,
    SolveReport,
    brute_force_min_domset,
    reduce_witness,
    solve,
    solve_small_core,
)
from .errors import GuardError, InputError
from .graph_core import Graph, ball, bfs_distances, delete, dominates, is_connected, is_scattered
from .variants import (
    RomanLabeling,
    select_connected,
    solve_connected,
    solve_connected_driver,
    solve_efficient,
    solve_roman,
)
from .wideness import ScatteredWitness, ScatterFailure, brute_force_scattered, find_scattered, shallow_clique_minor

__version__ = "0.1.0"

__all__ = [
    "BigBound", "ClassProfile", "get_profile", "n_threshold", "ramsey_upper",
    "Answer", "DominationInstance", "SolveReport", "brute_force_min_domset",
    "reduce_witness", "solve", "solve_small_core",
    "GuardError", "InputError",
    "Graph", "ball", "bfs_distances", "delete", "dominates", "is_connected", "is_scattered",
    "RomanLabeling", "select_connected", "solve_connected", "solve_connected_driver",
    "solve_efficient", "solve_roman",
    "ScatteredWitness", "ScatterFailure", "brute_force_scattered", "find_scattered",
    "shallow_clique_minor",
]
