"""Distance spaces, dendrograms, L-graphs, derivations and knot diagrams.

Exact rational arithmetic throughout. Hot loops live in ``topospace.kernels``
(compiled when the extension is built, pure Python otherwise).
"""

from .dendrogram import (
    Dendrogram,
    Node,
    build_dendrogram,
    cophenetic_matrix,
    leaf_heights,
    roberts_dominates,
    xbar_matrix,
)
from .derivation import (
    AnnotatedSD,
    Collapse,
    Metrize,
    Snapshot,
    Substitute,
    TopoReport,
    analyze_topology,
    apply_derivation,
    collapse_chain,
    combine_reports,
    sd_to_graph,
)
from .errors import InputError, TopoError
from .kernels import BACKEND
from .knots import (
    KnotDiagram,
    RMove,
    apply_rmove,
    attempt_collapse,
    enumerate_applicable_moves,
    is_tricolorable,
    lackenby_bound,
    reduce_to_unknot,
    writhe,
)
from .lgraph import (
    LGraph,
    Occurrence,
    Vertex,
    WalkClass,
    classify_occurrences,
    classify_walk,
    dominates,
    immediately_dominates,
    is_ordered,
    single_mother_violations,
    to_dot,
)
from .monotonicity import (
    ComplexObject,
    Terminal,
    bracketing,
    classify_steps,
    is_fs_describable,
    segment_max_monotonic,
)
from .space import (
    DistanceMatrix,
    NeighborhoodSpec,
    SpaceClass,
    SpaceKind,
    TriangleCensus,
    are_separated,
    boundary,
    classify_space,
    closed_neighborhood,
    make_ultrametric_field,
    metric_closure,
    metrize_step,
    triangle_census,
)
from .terms import RelationSet, Term, check_homomorphism, substitute, term_relations

__version__ = "0.1.0"
