"""File formats for spatchy.

JSON for control nets and converted patches, OBJ for inspection meshes.
"""

from .mesh import Mesh, sample_mesh, tessellate_polygon, tessellate_trimmed
from .parser import (
    FormatError,
    load_spatch,
    load_trimmed,
    parse_polygon,
    parse_simplex,
    parse_spatch,
    parse_trimmed,
    polygon_to_json,
    save_text,
    simplex_to_json,
    spatch_to_json,
    trimmed_to_json,
)

__all__ = [
    "FormatError",
    "load_spatch",
    "load_trimmed",
    "Mesh",
    "parse_polygon",
    "parse_simplex",
    "parse_spatch",
    "parse_trimmed",
    "polygon_to_json",
    "sample_mesh",
    "save_text",
    "simplex_to_json",
    "spatch_to_json",
    "tessellate_polygon",
    "tessellate_trimmed",
    "trimmed_to_json",
]
