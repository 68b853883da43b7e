"""Exact triangulations of the regular prism and antiprism.

Models the two stacked regular n-gons combinatorially, enumerates every
triangulation for small n, builds maximum-size triangulations for larger n,
and checks the height/link machinery that bounds their size.
"""

__version__ = "0.1.0"

from .bounds import (
    BoundReport,
    alpha_eq1,
    alpha_eq2,
    bound_report,
    check_monotone_lemma,
    extract_structure,
    formula_alpha,
    formula_max,
    g_sum,
    link_bounds_check,
)
from .construct import construct_maximal, placing_triangulation
from .enumeration import EnumerationResult, enumerate_all, iter_triangulations, max_triangulation
from .errors import CapacityError, ConstructionError, DomainError, StructuralError
from .kernel import (
    Triangulation3D,
    ValidityReport,
    candidate_tets,
    classify_tet,
    orient,
    proper_pair,
    validate_triangulation,
)
from .polygon import (
    AdmissibleOrder,
    PolygonTriangulation,
    RegionEdgeSets,
    admissible_order,
    enumerate_polygon_triangulations,
    region_edge_sets,
)
from .shapes import (
    B,
    Chord,
    FunctionalLevels,
    Kind,
    Layer,
    PointId,
    ShapeSpec,
    Side,
    T,
    boundary_height_profile,
    functional_levels,
    height,
    parallel_chords,
)
