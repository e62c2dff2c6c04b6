"""Stability of toroidal grids and abelian Cayley graphs.

A graph X is stable when its canonical bipartite double cover BX has exactly
twice as many automorphisms as X. This package decides stability by brute
force (an exact automorphism engine) and by closed-form classification of the
toroidal grid and small-valency abelian Cayley families, and cross-checks the
two over exhaustive parameter sweeps.
"""

from .abelian import (
    AbelianGroup,
    Element,
    InfiniteGroup,
    cyclic_group,
    direct_product_group,
    group_from_relations,
)
from .aut import (
    CanonicalForm,
    PermutationGroup,
    SearchLimitExceeded,
    are_isomorphic,
    automorphism_group,
    canonical_form,
    isomorphism,
    schreier_sims,
)
from .cayley import (
    ConnectionSet,
    GridParams,
    InvalidShift,
    build_grid,
    cayley_graph,
    connection_set,
    grid_to_cayley,
    grid_translations,
    qd_direct,
    shift_connection_set,
    tr_direct,
    translation_automorphisms,
)
from .census import (
    SweepReport,
    SweepRow,
    emit_report,
    parse_report,
    render_report_figure,
    sweep_grids,
    sweep_val6_znxzk,
    unstable_pairs,
)
from .graphs import (
    Graph,
    InvalidParameter,
    MalformedGraph6,
    StructuralFlags,
    cartesian_product,
    complete_graph,
    cycle_graph,
    distances_from,
    double_cover,
    graph6_decode,
    graph6_encode,
    moebius_ladder,
    path_graph,
    standard_graph,
    structural_flags,
    twin_pair,
)
from .stability import (
    ClassificationVerdict,
    ClauseNotSatisfied,
    InstabilityWitness,
    InvalidShape,
    NotGenerating,
    StabilityVerdict,
    TrivialReason,
    Verdict,
    VerificationFailed,
    classify_qd,
    classify_tr,
    classify_val4,
    classify_val6,
    double_cover_seeds,
    iso_shift_witness,
    stability_verdict,
    triangles_criterion,
    val4_witness,
)

__version__ = "1.0.0"
