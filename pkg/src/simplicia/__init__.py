"""simplicia: simplicial complexes, their invariants and transformations."""

from .complex import (
    Complex,
    Permutation,
    SimplicialError,
    empty_complex,
    from_facets,
    from_generators,
)
from .generators import (
    boundary_simplex,
    cross_polytope,
    cyclic_polytope_boundary,
    simplex,
    stacked_sphere,
)
from .invariants import (
    GroupPresentation,
    HomologyProfile,
    abelianization,
    euler_characteristic,
    fundamental_group_presentation,
    g_vector,
    h_vector,
    hg_transcript,
    hg_vectors,
    homology,
    homology_mod_p,
    orientability,
)
from .snf import IntegerMatrix, SNFResult, smith_normal_form
from .isomorphism import is_isomorphic, isomorphisms
from .bistellar import (
    Move,
    RandomizeResult,
    ReduceResult,
    ReductionOptions,
    apply_move,
    bistellarly_equivalent,
    is_combinatorial_manifold,
    is_sphere3,
    move_deltas,
    randomize,
    reduce,
    reverse_move,
    valid_moves,
)
from .slicing import (
    NormalSurface,
    SurfaceType,
    VertexPartition,
    ns_triangulation,
    slicing,
    surface_type,
)

__version__ = "0.1.0"
