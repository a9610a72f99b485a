"""
icotri

Small triangulated 4-manifolds built from the icosahedron and the
tetrahedron: a simplicial complex library with permutation-group
actions, bistellar moves, integer homology, a catalog of named complexes
and certified subdivisions of the product cell complex S2_4 x S2_4.
"""

__version__ = "0.1.0"

from .config import VerifierConfig
from .complex_core import (
    Vertex,
    SimplicialComplex,
    simplex,
    closure,
    join,
    standard_sphere,
    standard_ball,
)
from .perm_group import (
    Permutation,
    PermGroup,
    generate_group,
    generate_complex,
    automorphism_group,
    find_isomorphism,
    is_pure_action,
    quotient_complex,
)
from .homology import (
    homology,
    smith_normal_form,
    is_homology_sphere,
    check_combinatorial_manifold,
)
from .moves_engine import (
    BistellarMove,
    MoveScript,
    apply_bistellar,
    star_vertex,
    apply_gbm,
    find_proper_moves,
    replay_script,
)
from .catalog import NamedComplex, build, CATALOG_NAMES
from .product_subdivision import (
    build_product_cell_complex,
    verify_subdivision,
    prism_fills,
    enumerate_equivariant_pure_subdivisions,
    cw_quotient_census,
)
from .utils import (
    IcotriError,
    InvalidFaceError,
    NotPureError,
    ComplexConstructionError,
    ComplexFormatError,
    GroupError,
    ImpureActionError,
    InvalidMoveError,
    ScriptError,
    CatalogError,
    IcosahedronError,
    SubdivisionError,
    UnknownClaimError,
)
from .monitoring import StructuredLogger, MetricsCollector, get_metrics

__all__ = [
    # Configuration
    "VerifierConfig",

    # Complexes
    "Vertex",
    "SimplicialComplex",
    "simplex",
    "closure",
    "join",
    "standard_sphere",
    "standard_ball",

    # Groups
    "Permutation",
    "PermGroup",
    "generate_group",
    "generate_complex",
    "automorphism_group",
    "find_isomorphism",
    "is_pure_action",
    "quotient_complex",

    # Homology
    "homology",
    "smith_normal_form",
    "is_homology_sphere",
    "check_combinatorial_manifold",

    # Moves
    "BistellarMove",
    "MoveScript",
    "apply_bistellar",
    "star_vertex",
    "apply_gbm",
    "find_proper_moves",
    "replay_script",

    # Catalog
    "NamedComplex",
    "build",
    "CATALOG_NAMES",

    # Product subdivisions
    "build_product_cell_complex",
    "verify_subdivision",
    "prism_fills",
    "enumerate_equivariant_pure_subdivisions",
    "cw_quotient_census",

    # Errors
    "IcotriError",
    "InvalidFaceError",
    "NotPureError",
    "ComplexConstructionError",
    "ComplexFormatError",
    "GroupError",
    "ImpureActionError",
    "InvalidMoveError",
    "ScriptError",
    "CatalogError",
    "IcosahedronError",
    "SubdivisionError",
    "UnknownClaimError",

    # Monitoring
    "StructuredLogger",
    "MetricsCollector",
    "get_metrics",
]
