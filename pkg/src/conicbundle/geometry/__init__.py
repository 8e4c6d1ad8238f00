"""Lines, singular loci, smoothness certificates and contact multiplicities."""
from .contact import (
    CommonComponentError,
    ContactPoint,
    ContactReport,
    even_contact_check,
    have_common_component,
    intersection_multiplicity,
    linear_factors,
    local_length,
)
from .lines import contains_line, move_line_to_standard
from .points import ProjLine, ProjPoint, ProjTransform
from .singular import (
    NotSingularError,
    SmoothnessCertificate,
    is_node,
    local_expansion,
    singular_points,
    singular_points_plane_curve,
    smoothness_search,
)

__all__ = [
    "CommonComponentError",
    "ContactPoint",
    "ContactReport",
    "NotSingularError",
    "ProjLine",
    "ProjPoint",
    "ProjTransform",
    "SmoothnessCertificate",
    "contains_line",
    "even_contact_check",
    "have_common_component",
    "intersection_multiplicity",
    "is_node",
    "linear_factors",
    "local_expansion",
    "local_length",
    "move_line_to_standard",
    "singular_points",
    "singular_points_plane_curve",
    "smoothness_search",
]
