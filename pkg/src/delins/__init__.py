"""Combinatorics of fixed-length deletion/insertion channels.

Channel output sets and bipartite channel graphs, an injective edge
construct/deconstruct codec, exact packing bounds on deletion correcting
codes, and brute-force oracles that verify every combinatorial claim at
desk scale.
"""

from delins.bounds import (
    AverageDegree,
    BoundReport,
    TypicalitySplit,
    alternating_interval_bound,
    average_degree,
    bound_report,
    degree_lower_bound,
    edge_count_upper,
    few_runs_bound,
    generalized_code_bound,
    improvement_factor,
    insertion_code_bound,
    optimal_b,
    typicality_split,
)
from delins.channels import (
    DEFAULT_CAP,
    ChannelGraph,
    build_channel_graph,
    channel_output_set,
    check_channel_equivalence,
    check_parallelogram,
    deletion_set,
    insertion_set,
    is_subsequence,
    lcs_length,
)
from delins.codec import (
    LEFT,
    RIGHT,
    AmbiguousDeletionError,
    EdgeParameter,
    InsertTriple,
    NotDeconstructableError,
    construct,
    constructable_edge_count,
    deconstruct,
    delete_step,
    enumerate_parameters,
    insert_step,
    match,
    parameter_count,
)
from delins.errors import CapExceededError
from delins.oracle import (
    CodeCertificate,
    ConflictGraph,
    LemmaCheck,
    VerifyCaps,
    build_conflict_graph,
    max_code_exact,
    packing_code_bound,
    verify_all_lemmas,
    vt_code,
)
from delins.qstrings import (
    Qstr,
    alternating_count,
    composition_count,
    enumerate_compositions,
    insertion_count,
    is_alternating,
    longest_alternating_interval,
    run_count,
    runs_distribution,
)

__version__ = "0.1.0"
