"""JSON parser and serializer for S-patches, simplexes and trimmed patches.

Control nets are stored as lists of ``{"label": [...], "point": [...]}``
entries, written in ascending label order. Every label of the net must
appear exactly once when reading.
"""

import json
import math
from collections.abc import Mapping
from pathlib import Path
from typing import Any

import numpy as np

from ..convert import RationalTensorPatch, TrimmedPatch
from ..multiindex import MultiIndex, enumerate_labels
from ..simplex import BezierSimplex, FloatArray, SimplexError
from ..spatch import SPatch, SPatchError
from ..wachspress import DomainError, DomainPolygon, polygon_from_vertices

__all__ = [
    "FormatError",
    "load_spatch",
    "load_trimmed",
    "parse_polygon",
    "parse_simplex",
    "parse_spatch",
    "parse_trimmed",
    "polygon_to_json",
    "save_text",
    "simplex_to_json",
    "spatch_to_json",
    "trimmed_to_json",
]


class FormatError(ValueError):
    """Raised when a file does not follow the expected format."""


# =============================================================================
# Reading helpers
# =============================================================================


def _load_object(text: str) -> dict[str, Any]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError(f"Malformed JSON: {e}") from e
    if not isinstance(data, dict):
        raise FormatError("Top-level JSON value must be an object")
    return data


def _require(data: Mapping[str, Any], key: str) -> Any:
    if key not in data:
        raise FormatError(f"Missing field {key!r}")
    return data[key]


def _is_number(value: object) -> bool:
    return isinstance(value, int | float) and not isinstance(value, bool)


def _integer(data: Mapping[str, Any], key: str) -> int:
    value = _require(data, key)
    if not isinstance(value, int) or isinstance(value, bool):
        raise FormatError(f"Field {key!r} must be an integer, got {value!r}")
    return value


def _coordinates(value: object, size: int, what: str) -> list[float]:
    if not isinstance(value, list) or not all(_is_number(x) for x in value):
        raise FormatError(f"{what} must be a list of numbers")
    if len(value) != size:
        raise FormatError(f"{what} has {len(value)} coordinates, expected {size}")
    coords = [float(x) for x in value]
    if not all(math.isfinite(x) for x in coords):
        raise FormatError(f"{what} has a non-finite coordinate")
    return coords


def _parse_net(entries: object, n: int, d: int, dim: int) -> dict[MultiIndex, FloatArray]:
    """Read a label/point list, checking label length, norm, duplicates and gaps."""
    if not isinstance(entries, list):
        raise FormatError("Field 'points' must be a list")

    control: dict[MultiIndex, FloatArray] = {}
    for entry in entries:
        if not isinstance(entry, dict):
            raise FormatError(f"Control point entry must be an object, got {entry!r}")
        raw = _require(entry, "label")
        if (
            not isinstance(raw, list)
            or not all(isinstance(x, int) and not isinstance(x, bool) for x in raw)
            or any(x < 0 for x in raw)
        ):
            raise FormatError(f"Label must be a list of non-negative integers, got {raw!r}")
        if sum(raw) != d:
            raise FormatError(f"Label {raw} has norm {sum(raw)}, expected {d}")
        if len(raw) != n:
            raise FormatError(f"Label {raw} has length {len(raw)}, expected {n}")
        label = MultiIndex(raw)
        if label in control:
            raise FormatError(f"Duplicate label {raw}")
        point = _coordinates(_require(entry, "point"), dim, f"Point for label {raw}")
        control[label] = np.array(point)

    for label in enumerate_labels(n, d):
        if label not in control:
            raise FormatError(f"Missing label {list(label)}")
    return control


def _net_entries(control: Mapping[MultiIndex, FloatArray]) -> list[dict[str, list]]:
    return [
        {"label": list(label), "point": control[label].tolist()}
        for label in sorted(control)
    ]


# =============================================================================
# S-patches
# =============================================================================


def parse_spatch(text: str) -> SPatch:
    """Parse ``{"sides": n, "depth": d, "points": [...]}`` into an SPatch.

    Args:
        text: JSON text with one entry per label of L_{n,d}

    Returns:
        The validated S-patch

    Raises:
        FormatError: On malformed JSON or a missing, duplicate or
            ill-formed label
    """
    data = _load_object(text)
    n = _integer(data, "sides")
    d = _integer(data, "depth")
    if n < 3:
        raise FormatError(f"An S-patch needs at least 3 sides, got {n}")
    if d < 1:
        raise FormatError(f"S-patch depth must be at least 1, got {d}")
    control = _parse_net(_require(data, "points"), n, d, 3)
    try:
        return SPatch(n, d, control)
    except (SPatchError, SimplexError) as e:
        raise FormatError(str(e)) from e


def spatch_to_json(patch: SPatch) -> str:
    """Serialize an S-patch with labels in ascending order."""
    data = {"sides": patch.n, "depth": patch.d, "points": _net_entries(patch.control)}
    return json.dumps(data, indent=2) + "\n"


# =============================================================================
# Bézier simplexes
# =============================================================================


def parse_simplex(text: str) -> BezierSimplex:
    """Parse ``{"arity": n, "degree": d, "dim": δ, "points": [...]}``.

    Args:
        text: JSON text in the format written by simplex_to_json

    Returns:
        The Bézier simplex with a complete control net

    Raises:
        FormatError: On malformed JSON or an ill-formed control net
    """
    data = _load_object(text)
    arity = _integer(data, "arity")
    degree = _integer(data, "degree")
    dim = _integer(data, "dim")
    if arity < 1 or degree < 0 or dim < 1:
        raise FormatError(f"Invalid simplex shape φ=({arity}, {degree}, {dim})")
    control = _parse_net(_require(data, "points"), arity, degree, dim)
    try:
        return BezierSimplex(arity, degree, dim, control)
    except SimplexError as e:
        raise FormatError(str(e)) from e


def simplex_to_json(simplex: BezierSimplex) -> str:
    data = {
        "arity": simplex.arity,
        "degree": simplex.degree,
        "dim": simplex.dim,
        "points": _net_entries(simplex.control),
    }
    return json.dumps(data, indent=2) + "\n"


# =============================================================================
# Domain polygons
# =============================================================================


def parse_polygon(text: str) -> DomainPolygon:
    """Parse ``{"vertices": [[u, v], ...]}`` into a DomainPolygon.

    Args:
        text: JSON text listing the vertices in either orientation

    Returns:
        The polygon with inward side functionals

    Raises:
        FormatError: On malformed JSON or a polygon that is not strictly convex
    """
    data = _load_object(text)
    raw = _require(data, "vertices")
    if not isinstance(raw, list):
        raise FormatError("Field 'vertices' must be a list")
    vertices = [_coordinates(v, 2, f"Vertex {k}") for k, v in enumerate(raw)]
    try:
        return polygon_from_vertices(vertices)
    except DomainError as e:
        raise FormatError(str(e)) from e


def polygon_to_json(polygon: DomainPolygon) -> str:
    return json.dumps({"vertices": polygon.vertices.tolist()}, indent=2) + "\n"


# =============================================================================
# Trimmed patches
# =============================================================================


def parse_trimmed(text: str) -> TrimmedPatch:
    """Parse ``{"degree": [du, dv], "points": [[[wx, wy, wz, w], ...], ...], "trim": [...]}``.

    Args:
        text: JSON text in the format written by trimmed_to_json

    Returns:
        The rational patch paired with its trim loop

    Raises:
        FormatError: On malformed JSON, a grid that does not match the
            degree, or a trim loop that is not closed
    """
    data = _load_object(text)
    degree = _require(data, "degree")
    if (
        not isinstance(degree, list)
        or len(degree) != 2
        or not all(isinstance(x, int) and not isinstance(x, bool) and x >= 0 for x in degree)
    ):
        raise FormatError(f"Field 'degree' must be two non-negative integers, got {degree!r}")
    du, dv = degree

    rows = _require(data, "points")
    if not isinstance(rows, list) or len(rows) != du + 1:
        raise FormatError(f"Control grid must have {du + 1} rows")
    grid = []
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != dv + 1:
            raise FormatError(f"Control grid row {i} must have {dv + 1} points")
        grid.append([_coordinates(p, 4, f"Control point ({i}, {j})") for j, p in enumerate(row)])

    trim = _require(data, "trim")
    if not isinstance(trim, list) or len(trim) < 4:
        raise FormatError("Trim loop needs at least 3 segments")
    loop = np.array([_coordinates(p, 2, f"Trim point {k}") for k, p in enumerate(trim)])
    if not np.array_equal(loop[0], loop[-1]):
        raise FormatError("Trim loop is not closed: last point differs from the first")
    loop.flags.writeable = False

    return TrimmedPatch(RationalTensorPatch(np.array(grid)), loop)


def trimmed_to_json(trimmed: TrimmedPatch) -> str:
    """Serialize a trimmed patch with the control grid row-major, u-major."""
    patch = trimmed.patch
    data = {
        "degree": [patch.degree_u, patch.degree_v],
        "points": patch.control.tolist(),
        "trim": trimmed.trim_loop.tolist(),
    }
    return json.dumps(data) + "\n"


# =============================================================================
# Files
# =============================================================================


def load_spatch(path: Path) -> SPatch:
    """Load an S-patch JSON file.

    Args:
        path: Path to the file

    Returns:
        The parsed S-patch

    Raises:
        FormatError: If the file contents are invalid
        FileNotFoundError: If the file doesn't exist
    """
    return parse_spatch(path.read_text(encoding="utf-8"))


def load_trimmed(path: Path) -> TrimmedPatch:
    """Load a trimmed patch JSON file.

    Args:
        path: Path to the file

    Returns:
        The parsed trimmed patch

    Raises:
        FormatError: If the file contents are invalid
        FileNotFoundError: If the file doesn't exist
    """
    return parse_trimmed(path.read_text(encoding="utf-8"))


def save_text(text: str, path: Path) -> None:
    """Write text to a file through a temporary sibling and a rename."""
    temp_path = path.with_suffix(path.suffix + ".tmp")
    try:
        temp_path.write_text(text, encoding="utf-8")
        temp_path.replace(path)
    except Exception:
        if temp_path.exists():
            temp_path.unlink()
        raise
