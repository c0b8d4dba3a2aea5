"""Planar Fine interiors of width-two lattice polytopes in R^3, classified by their half-integral shape."""

from .canonical import (
    CanonicalKey,
    are_equivalent,
    canonical_form,
    canonical_form_half,
    canonical_key,
    decode_key,
)
from .classify import (
    CheckpointError,
    ClassificationRecord,
    HatSpec,
    assemble_candidates,
    classify,
    classify_base,
    classify_range,
    hat_candidates,
    hat_decomposition,
)
from .enumeration import augment, brute_force_polygons, enumerate_polygons
from .fine import (
    embed_middle,
    fbar,
    fbar_via_support,
    fine_interior_test,
    interior_hull,
    max_half_polygon,
    move_out,
    pyramid,
    pyramid_oracle,
    support_normals,
)
from .geography import (
    ChernInvariants,
    check_inequalities,
    chern,
    emit_geography,
    noether_line_status,
    report,
)
from .io import PolygonImportError, export_polygons, import_polygons
from .lattice import (
    AffineMap,
    HalfPolygon,
    Polygon,
    RationalPolygon,
    apply_map,
    convex_hull,
    interior_lattice_points,
    lattice_points,
    lattice_width,
    min_support,
    normalized_area,
)
from .polytope3 import Polytope3, fine_interior_3d

__version__ = "0.1.0"
