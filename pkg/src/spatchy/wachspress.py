"""Regular domain polygons and Wachspress coordinates.

The n-sided domain lives in the uv-plane on the circle centred at (0.5, 0.5)
with radius 0.5, so it always fits in the tensor parameter square [0,1]².
Side j joins vertex j and vertex j+1 (indices mod n) and is stored as an
affine functional D_j(p) = a·u + b·v + c with a unit normal pointing inward,
so D_j is the Euclidean distance from the side and is positive inside.

Wachspress coordinates λᵢ are ratios of products of these distances. Their
numerators, read as homogeneous coordinates, are a polynomial map of degree
n−2; polarizing it gives the control points of the Bézier simplex W_n.
"""

import itertools
import math
from collections.abc import Sequence
from dataclasses import dataclass
from functools import cache
from typing import Final

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .multiindex import MultiIndex, enumerate_labels
from .simplex import ArityError, BezierSimplex, FloatArray

__all__ = [
    "CANONICAL_TRIANGLE",
    "DomainError",
    "DomainPolygon",
    "InvalidPolygonError",
    "OutsideDomainError",
    "SingularityError",
    "build_W4inv",
    "build_Wn",
    "canonical_bary",
    "make_domain_polygon",
    "polygon_from_vertices",
    "square_domain",
    "wachspress_blossom",
    "wachspress_coords",
    "wachspress_coords_many",
    "wachspress_numerators",
]

DOMAIN_CENTER: Final = (0.5, 0.5)
DOMAIN_RADIUS: Final = 0.5

# |Σ numerators| below this is treated as the singular set
SINGULAR_TOLERANCE: Final = 1e-14

# slack for points on the polygon boundary
INSIDE_TOLERANCE: Final = 1e-12

# (1,0), (0,1), (0,0): the barycentric coordinates of (u, v) are (u, v, 1−u−v)
CANONICAL_TRIANGLE: Final = ((1.0, 0.0), (0.0, 1.0), (0.0, 0.0))


class DomainError(ValueError):
    """Base exception for domain polygon errors."""


class InvalidPolygonError(DomainError):
    """Raised when a polygon cannot serve as an S-patch domain."""


class SingularityError(DomainError, ArithmeticError):
    """Raised when the Wachspress denominator vanishes."""


class OutsideDomainError(DomainError):
    """Raised when a point lies outside the domain polygon."""


@dataclass(frozen=True, eq=False)
class DomainPolygon:
    """A convex polygon with inward-positive unit-normal side functionals."""

    vertices: FloatArray  # (n, 2)
    lines: FloatArray  # (n, 3): rows (a, b, c) of D_j(p) = a·u + b·v + c

    @property
    def n(self) -> int:
        """Number of sides."""
        return len(self.vertices)

    @property
    def center(self) -> FloatArray:
        """Vertex centroid (the circle centre for regular polygons)."""
        return self.vertices.mean(axis=0)

    def distances(self, point: ArrayLike) -> FloatArray:
        """D_j(p) for every side j."""
        return self.distances_many(np.asarray(point, dtype=np.float64)[np.newaxis, :])[0]

    def distances_many(self, points: ArrayLike) -> FloatArray:
        """D_j at each row of a (k, 2) array; returns (k, n)."""
        pts = np.asarray(points, dtype=np.float64)
        return pts @ self.lines[:, :2].T + self.lines[:, 2]

    def contains(self, point: ArrayLike, tolerance: float = INSIDE_TOLERANCE) -> bool:
        """Whether the point lies in the closed polygon."""
        return bool(np.all(self.distances(point) >= -tolerance))

    def edge(self, j: int) -> tuple[FloatArray, FloatArray]:
        """Endpoints (vertex j, vertex j+1) of side j."""
        return self.vertices[j % self.n], self.vertices[(j + 1) % self.n]


def polygon_from_vertices(vertices: ArrayLike) -> DomainPolygon:
    """Build a DomainPolygon from convex vertices in either orientation.

    Raises:
        InvalidPolygonError: If there are fewer than 3 vertices or the
            polygon is not strictly convex
    """
    verts = np.array(vertices, dtype=np.float64)
    if verts.ndim != 2 or verts.shape[1] != 2 or len(verts) < 3:
        raise InvalidPolygonError(
            f"A domain polygon needs at least 3 vertices in 2D, got shape {verts.shape}"
        )

    edges = np.roll(verts, -1, axis=0) - verts
    after = np.roll(edges, -1, axis=0)
    turns = edges[:, 0] * after[:, 1] - edges[:, 1] * after[:, 0]
    if not (np.all(turns > 0) or np.all(turns < 0)):
        raise InvalidPolygonError("Domain polygon must be strictly convex")

    lengths = np.linalg.norm(edges, axis=1)
    normals = np.column_stack([-edges[:, 1], edges[:, 0]]) / lengths[:, np.newaxis]
    offsets = -np.einsum("ij,ij->i", normals, verts)
    lines = np.column_stack([normals, offsets])
    centroid = verts.mean(axis=0)
    inward = lines[:, :2] @ centroid + lines[:, 2] > 0
    lines[~inward] *= -1.0

    verts.flags.writeable = False
    lines.flags.writeable = False
    return DomainPolygon(verts, lines)


def make_domain_polygon(n: int) -> DomainPolygon:
    """The regular n-gon on the domain circle, counter-clockwise.

    Vertex k sits at angle 2πk/n + π/2 + π/n, which makes the polygon
    axis-aligned for even n and puts a side on top for odd n.

    Raises:
        InvalidPolygonError: If n < 3
    """
    if n < 3:
        raise InvalidPolygonError(f"A domain polygon needs at least 3 sides, got {n}")
    angles = 2.0 * np.pi * np.arange(n) / n + np.pi / 2.0 + np.pi / n
    vertices = np.column_stack([
        DOMAIN_CENTER[0] + DOMAIN_RADIUS * np.cos(angles),
        DOMAIN_CENTER[1] + DOMAIN_RADIUS * np.sin(angles),
    ])
    return polygon_from_vertices(vertices)


def square_domain() -> DomainPolygon:
    """The unit square with vertices (0,1), (1,1), (1,0), (0,0), in that order.

    This is the quadrilateral whose Wachspress map W₄ is inverted by W₄⁻¹.
    """
    return polygon_from_vertices([(0.0, 1.0), (1.0, 1.0), (1.0, 0.0), (0.0, 0.0)])


def canonical_bary(point: ArrayLike) -> FloatArray:
    """Barycentric coordinates (u, v, 1−u−v) relative to the canonical triangle."""
    u, v = np.asarray(point, dtype=np.float64)
    return np.array([u, v, 1.0 - u - v])


# =============================================================================
# Coordinates
# =============================================================================


def _numerators_from_distances(distances: FloatArray) -> FloatArray:
    n = distances.shape[-1]
    result = np.empty_like(distances)
    for i in range(n):
        keep = [j for j in range(n) if j not in ((i - 1) % n, i)]
        result[..., i] = np.prod(distances[..., keep], axis=-1)
    return result


def wachspress_numerators(polygon: DomainPolygon, point: ArrayLike) -> FloatArray:
    """Π_{j≠i−1,i} D_j(p) for each i: the homogeneous Wachspress coordinates."""
    return _numerators_from_distances(polygon.distances(point))


def wachspress_coords_many(polygon: DomainPolygon, points: ArrayLike) -> FloatArray:
    """Wachspress coordinates at each row of a (k, 2) array; returns (k, n).

    Raises:
        SingularityError: If the denominator vanishes at any point
    """
    numerators = _numerators_from_distances(polygon.distances_many(points))
    denominators = numerators.sum(axis=1)
    singular = np.abs(denominators) < SINGULAR_TOLERANCE
    if np.any(singular):
        where = np.asarray(points, dtype=np.float64).reshape(-1, 2)[np.argmax(singular)]
        raise SingularityError(
            f"Wachspress denominator vanishes at ({where[0]:.6g}, {where[1]:.6g})"
        )
    return numerators / denominators[:, np.newaxis]


def wachspress_coords(polygon: DomainPolygon, point: ArrayLike) -> FloatArray:
    """λᵢ(p) = Π_{j≠i−1,i} D_j(p) / Σ_k Π_{j≠k−1,k} D_j(p).

    Raises:
        SingularityError: If the denominator vanishes at p
    """
    return wachspress_coords_many(polygon, np.asarray(point, dtype=np.float64)[np.newaxis, :])[0]


# =============================================================================
# Polarization
# =============================================================================


@cache
def _permutations(m: int) -> NDArray[np.intp]:
    return np.array(list(itertools.permutations(range(m))), dtype=np.intp).reshape(-1, m)


def wachspress_blossom(polygon: DomainPolygon, args: Sequence[ArrayLike]) -> FloatArray:
    """The symmetric multilinear form of the Wachspress numerators.

    Component i is (1/(n−2)!) Σ_π Π_k D_{j(k)}(p_{π(k)}), where j runs over the
    sides other than i−1 and i. It is symmetric in its n−2 arguments and
    reproduces wachspress_numerators on the diagonal.

    Raises:
        ArityError: If the argument count is not n−2
    """
    n = polygon.n
    m = n - 2
    if len(args) != m:
        raise ArityError(f"Wachspress blossom of a {n}-gon takes {m} arguments, got {len(args)}")
    points = np.array(args, dtype=np.float64).reshape(m, 2)
    # distances[k, j] = D_j(p_k)
    distances = polygon.distances_many(points)
    perms = _permutations(m)
    result = np.empty(n)
    for i in range(n):
        sides = [j for j in range(n) if j not in ((i - 1) % n, i)]
        block = distances[:, sides].T  # block[r, k] = D_{sides[r]}(p_k)
        result[i] = np.prod(block[np.arange(m), perms], axis=1).sum() / math.factorial(m)
    return result


def build_Wn(n: int, polygon: DomainPolygon | None = None) -> BezierSimplex:
    """The rational Bézier simplex W_n with φ = (3, n−2, n).

    Each control point is the Wachspress blossom at the canonical triangle's
    vertices, V₀ repeated s₀ times, V₁ s₁ times and V₂ s₂ times.

    Raises:
        InvalidPolygonError: If n < 3 or the polygon has a different side count
    """
    domain = make_domain_polygon(n) if polygon is None else polygon
    if domain.n != n:
        raise InvalidPolygonError(f"Expected a {n}-sided polygon, got {domain.n} sides")
    control: dict[MultiIndex, FloatArray] = {}
    for label in enumerate_labels(3, n - 2):
        args = [vertex for vertex, count in zip(CANONICAL_TRIANGLE, label, strict=True)
                for _ in range(count)]
        control[label] = wachspress_blossom(domain, args)
    return BezierSimplex(3, n - 2, n, control)


def build_W4inv() -> BezierSimplex:
    """The affine left inverse W₄⁻¹ of the square's Wachspress map, φ = (4, 1, 3).

    Its control points are the canonical barycentric coordinates of the
    square_domain vertices: P₁₀₀₀ = (0,1,0), P₀₁₀₀ = (1,1,−1),
    P₀₀₁₀ = (1,0,0), P₀₀₀₁ = (0,0,1).
    """
    square = square_domain()
    control = {MultiIndex.unit(4, i): canonical_bary(vertex)
               for i, vertex in enumerate(square.vertices)}
    return BezierSimplex(4, 1, 3, control)
