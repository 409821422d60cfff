"""Zero forcing sets, constrained matchings and strong structural controllability."""

from zfc.controllability import (
    KalmanReport,
    SoundnessError,
    StrongControllabilityReport,
    SystemSpec,
    input_pattern,
    kalman_rank,
    kalman_trial,
    min_input_set,
    sample_realization,
    strong_matching,
    strong_simple,
    strong_zf,
)
from zfc.graph_model import (
    BipartiteGraph,
    DirectedGraph,
    Entry,
    GraphKind,
    Pattern,
    RationalMatrix,
    add_all_loops,
    delete_rows,
    is_realization,
    star_diagonal,
    strip_loops,
    to_bipartite,
    to_pattern,
    to_simple_pattern,
)
from zfc.matching import (
    is_constrained,
    matching_to_zfs,
    max_constrained_matching,
    triangle_number,
    zfs_to_matching,
)
from zfc.zero_forcing import (
    PropagationResult,
    find_force_list_avoiding,
    is_zero_forcing_set,
    propagate,
    tree_min_rank,
    tree_min_zero_forcing_set,
    zero_forcing_number,
)

__version__ = "0.1.0"
