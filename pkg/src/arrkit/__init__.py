"""Exact combinatorics and fundamental-group presentations of
complexified-real line arrangements in C^2."""

from .gaussian import GaussianRational, Rational, gaussian
from .geometry import (
    Arrangement,
    EQUAL_LINES,
    Line,
    PARALLEL,
    Point,
    arrangement_from_factors,
    intersect,
    normalize_line,
    parse_linear_factor,
)
from .poset import (
    AffinePoset,
    BettiData,
    IntersectionPoint,
    ParallelClass,
    ProjectiveClosurePoset,
    betti,
    build_affine_poset,
    poset_isomorphic,
    projective_closure,
)
from .presentations import (
    AbelianizationResult,
    Gen,
    Presentation,
    abelianization,
    euler_characteristic,
    match_up_to_renaming,
    presentation,
    simplify,
    tietze1_conjugate,
    tietze2_eliminate,
    tietze2_introduce,
    tietze3_multiply,
    tietze4_add,
)
from .words import (
    Word,
    canonical_cyclic,
    commutator,
    concat,
    conjugate,
    free_reduce,
    inverse,
)
from .arvola import (
    ArrangementGraph,
    SweepConfig,
    VertexStar,
    assemble_presentation,
    build_graph,
    generic_shear,
    line_generator_presentation,
    real_picture_presentation,
    vertex_relators,
)
from .extensions import (
    ParallelAttachment,
    PencilAttachment,
    attached_pencil_presentation,
    build_parallel_extension,
    build_pencil_extension,
    canonicalize_pencil_presentation,
    exterior_pencil_model,
)
from .families import (
    IsotopyFamily,
    build_family,
    check_lattice_constancy,
)
from .verify import (
    verify_pencil_choice_independence,
    verify_pencil_parallel_equivalence,
)

__version__ = "0.1.0"
