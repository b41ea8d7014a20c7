"""Triangle meshes sampled from S-patches and trimmed patches, with OBJ output."""

import logging
from collections.abc import Hashable
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray

from ..convert import TrimmedPatch, eval_tensor_many
from ..simplex import FloatArray
from ..spatch import SPatch, eval_uv_many
from ..wachspress import DomainPolygon, polygon_from_vertices
from .parser import FormatError

__all__ = [
    "Mesh",
    "sample_mesh",
    "tessellate_polygon",
    "tessellate_trimmed",
]

logger = logging.getLogger(__name__)

IndexArray = NDArray[np.intp]


@dataclass(frozen=True, eq=False)
class Mesh:
    """Surface points, their parameters and 0-based triangle indices."""

    vertices: FloatArray  # (k, 3)
    faces: IndexArray  # (f, 3)
    uv: FloatArray  # (k, 2)

    def to_obj(self) -> str:
        """Wavefront OBJ text with texture coordinates and 1-based indices."""
        lines = [f"# spatchy mesh: {len(self.vertices)} vertices, {len(self.faces)} faces"]
        lines += [f"v {x:.12g} {y:.12g} {z:.12g}" for x, y, z in self.vertices]
        lines += [f"vt {u:.12g} {v:.12g}" for u, v in self.uv]
        lines += [
            f"f {a + 1}/{a + 1} {b + 1}/{b + 1} {c + 1}/{c + 1}" for a, b, c in self.faces
        ]
        return "\n".join(lines) + "\n"


def _check_resolution(resolution: int) -> None:
    if resolution < 1:
        raise FormatError(f"Mesh resolution must be at least 1, got {resolution}")


def _triangle_grid(resolution: int) -> tuple[list[tuple[int, int]], list[tuple[int, int, int]]]:
    """Grid nodes (i, j) with i + j ≤ R and faces over their positions in that list."""
    nodes = [(i, j) for i in range(resolution + 1) for j in range(resolution + 1 - i)]
    where = {node: k for k, node in enumerate(nodes)}
    faces = []
    for i, j in nodes:
        if i + j < resolution:
            faces.append((where[i, j], where[i + 1, j], where[i, j + 1]))
        if i + j < resolution - 1:
            faces.append((where[i + 1, j], where[i + 1, j + 1], where[i, j + 1]))
    return nodes, faces


def tessellate_polygon(polygon: DomainPolygon, resolution: int) -> tuple[FloatArray, IndexArray]:
    """Triangulate a convex polygon; returns (uv points, faces).

    A triangle is subdivided into resolution² triangles. Larger polygons are
    split into the fan (centre, vertex k, vertex k+1) and each fan triangle is
    subdivided the same way, with points on shared spokes stored once.
    """
    _check_resolution(resolution)
    nodes, local_faces = _triangle_grid(resolution)
    n = polygon.n
    if n == 3:
        a, b, c = polygon.vertices
        uv = np.array([c + (i * (a - c) + j * (b - c)) / resolution for i, j in nodes])
        return uv, np.array(local_faces, dtype=np.intp)

    center = polygon.center
    keys: dict[Hashable, int] = {}
    points: list[FloatArray] = []
    faces: list[tuple[int, int, int]] = []
    for k in range(n):
        a, b = polygon.vertices[k], polygon.vertices[(k + 1) % n]
        index = []
        for i, j in nodes:
            if i == 0 and j == 0:
                key: Hashable = "center"
            elif j == 0:
                key = ("spoke", k, i)
            elif i == 0:
                key = ("spoke", (k + 1) % n, j)
            else:
                key = ("fan", k, i, j)
            if key not in keys:
                keys[key] = len(points)
                points.append(center + (i * (a - center) + j * (b - center)) / resolution)
            index.append(keys[key])
        faces += [(index[p], index[q], index[r]) for p, q, r in local_faces]
    return np.array(points), np.array(faces, dtype=np.intp)


def _clip_cell(cell: list[FloatArray], lines: FloatArray) -> list[FloatArray]:
    """Clip a convex polygon against the half-planes a·u + b·v + c ≥ 0."""
    for a, b, c in lines:
        if not cell:
            break
        clipped: list[FloatArray] = []
        for k, p in enumerate(cell):
            q = cell[(k + 1) % len(cell)]
            dp, dq = a * p[0] + b * p[1] + c, a * q[0] + b * q[1] + c
            if dp >= 0.0:
                clipped.append(p)
            if (dp >= 0.0) != (dq >= 0.0):
                clipped.append(p + (dp / (dp - dq)) * (q - p))
        cell = clipped
    return cell


def tessellate_trimmed(loop: ArrayLike, resolution: int) -> tuple[FloatArray, IndexArray]:
    """Triangulate the R×R grid on [0,1]² clipped to a closed convex trim loop.

    Cells inside the loop become two triangles; cells crossed by the loop are
    cut along it and fanned from their first remaining corner, so the faces
    cover the loop's interior exactly.
    """
    _check_resolution(resolution)
    region = polygon_from_vertices(np.asarray(loop, dtype=np.float64)[:-1])
    ticks = np.linspace(0.0, 1.0, resolution + 1)
    # slivers thinner than this are rounding noise on a loop edge
    min_area = 1e-14 / resolution**2

    keys: dict[tuple[float, float], int] = {}
    points: list[FloatArray] = []

    def vertex(p: FloatArray) -> int:
        key = (round(float(p[0]), 12), round(float(p[1]), 12))
        if key not in keys:
            keys[key] = len(points)
            points.append(p)
        return keys[key]

    faces: list[tuple[int, int, int]] = []
    for i in range(resolution):
        for j in range(resolution):
            u0, u1, v0, v1 = ticks[i], ticks[i + 1], ticks[j], ticks[j + 1]
            cell = [np.array(corner) for corner in ((u0, v0), (u1, v0), (u1, v1), (u0, v1))]
            cell = _clip_cell(cell, region.lines)
            for k in range(1, len(cell) - 1):
                a, b, c = cell[0], cell[k], cell[k + 1]
                area = 0.5 * ((b - a)[0] * (c - a)[1] - (b - a)[1] * (c - a)[0])
                if area > min_area:
                    faces.append((vertex(a), vertex(b), vertex(c)))

    uv = np.array(points, dtype=np.float64).reshape(-1, 2)
    return uv, np.array(faces, dtype=np.intp).reshape(-1, 3)


def sample_mesh(surface: SPatch | TrimmedPatch, resolution: int) -> Mesh:
    """Evaluate a surface on a triangulation of its parameter region.

    S-patches are sampled over their domain polygon, trimmed patches over the
    grid on [0,1]² clipped to the trim loop.

    Args:
        surface: An S-patch or a converted trimmed patch
        resolution: Subdivisions per fan spoke or grid side

    Returns:
        The mesh of evaluated points with their parameters

    Raises:
        FormatError: If resolution < 1
        SingularEvaluationError: If a trimmed patch's weight vanishes at a sample
    """
    if isinstance(surface, SPatch):
        uv, faces = tessellate_polygon(surface.domain, resolution)
        vertices = eval_uv_many(surface, uv)
    else:
        uv, faces = tessellate_trimmed(surface.trim_loop, resolution)
        vertices = eval_tensor_many(surface.patch, uv)
    logger.debug("Sampled mesh with %d vertices and %d faces", len(vertices), len(faces))
    return Mesh(vertices, faces, uv)
