"""Combinatorial encoding of the Bernoulli shift by rank codes, RSK and transfers on graded graphs."""
from .errors import (
    CannotShrinkError,
    CapabilityError,
    DistinctnessError,
    InsufficientDataError,
    IntervalError,
    InvalidCodeError,
    ParseError,
    ResourceGuardError,
    TransferStateError,
    WeylCodeError,
)
from .graphtransfer import (
    DiagramPath,
    FactorialTree,
    GradedGraph,
    IdealLattice,
    StationaryGraph,
    TwoInterval,
    YoungGraph,
    box_poset,
    jdt_promotion,
    markov_transfer_step,
    paths_as_tableau,
    tableau_to_path,
    transfer_path,
    two_interval,
)
from .permtree import TreeVertex, enumerate_level, simplex_word, translation, tree_parent
from .rankcode import (
    SpecialProfile,
    encode,
    order_permutation,
    reconstruct_first,
    reconstruct_prefix,
    sample_prefix,
    special_profile,
    transfer,
)
from .tableaux import (
    RskPair,
    Tableau,
    distinguishability_experiment,
    knuth_classes,
    plancherel_sample,
    rsk,
    rsk_inverse,
    tableaux_count,
    theta_label,
    theta_perp_label,
)

__version__ = "0.1.0"
