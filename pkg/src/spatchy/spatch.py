"""S-patches: n-sided Bézier surfaces over a regular polygon.

An S-patch of depth d is a Bézier simplex of arity n evaluated at the
Wachspress coordinates of a point in its domain polygon. Its boundaries are
Bézier curves of degree d.
"""

from collections.abc import Mapping
from dataclasses import dataclass, field

import numpy as np
from numpy.typing import ArrayLike

from .multiindex import MultiIndex
from .simplex import BezierSimplex, FloatArray, evaluate, evaluate_many
from .wachspress import (
    INSIDE_TOLERANCE,
    DomainPolygon,
    OutsideDomainError,
    make_domain_polygon,
    wachspress_coords_many,
)

__all__ = [
    "SPatch",
    "SPatchError",
    "SideIndexError",
    "boundary_curve",
    "eval_bary",
    "eval_curve",
    "eval_uv",
    "eval_uv_many",
    "homogenize",
]


class SPatchError(ValueError):
    """Base exception for S-patch errors."""


class SideIndexError(SPatchError):
    """Raised when a side index is out of range."""


@dataclass(frozen=True, eq=False)
class SPatch:
    """An n-sided S-patch of depth d with 3D control points."""

    n: int
    d: int
    control: Mapping[MultiIndex, FloatArray]
    domain: DomainPolygon = field(init=False)
    simplex: BezierSimplex = field(init=False)

    def __post_init__(self) -> None:
        if self.n < 3:
            raise SPatchError(f"An S-patch needs at least 3 sides, got {self.n}")
        if self.d < 1:
            raise SPatchError(f"S-patch depth must be at least 1, got {self.d}")
        simplex = BezierSimplex(self.n, self.d, 3, self.control)
        object.__setattr__(self, "simplex", simplex)
        object.__setattr__(self, "control", simplex.control)
        object.__setattr__(self, "domain", make_domain_polygon(self.n))

    @classmethod
    def from_points(cls, n: int, d: int, points: ArrayLike) -> "SPatch":
        """Build a patch from 3D points listed in ascending label order."""
        simplex = BezierSimplex.from_points(n, d, points)
        return cls(n, d, dict(simplex.control))

    def corner(self, i: int) -> FloatArray:
        """The corner control point P_{d·eᵢ}."""
        return self.control[MultiIndex.unit(self.n, i, self.d)]


def eval_bary(patch: SPatch, bary: ArrayLike) -> FloatArray:
    """S(λ) = Σ P_s · B_s^d(λ).

    Raises:
        ArityError: If λ does not have n entries
    """
    return evaluate(patch.simplex, bary)


def eval_uv_many(patch: SPatch, points: ArrayLike) -> FloatArray:
    """Evaluate at each row of a (k, 2) array of domain points; returns (k, 3).

    Raises:
        OutsideDomainError: If a point lies outside the closed domain polygon
        SingularityError: If the Wachspress denominator vanishes
    """
    pts = np.asarray(points, dtype=np.float64).reshape(-1, 2)
    outside = np.any(patch.domain.distances_many(pts) < -INSIDE_TOLERANCE, axis=1)
    if np.any(outside):
        u, v = pts[np.argmax(outside)]
        raise OutsideDomainError(
            f"Point ({u:.6g}, {v:.6g}) lies outside the {patch.n}-sided domain"
        )
    return evaluate_many(patch.simplex, wachspress_coords_many(patch.domain, pts))


def eval_uv(patch: SPatch, point: ArrayLike) -> FloatArray:
    """S at the Wachspress coordinates of a point in the domain polygon.

    Raises:
        OutsideDomainError: If the point lies outside the closed domain polygon
        SingularityError: If the Wachspress denominator vanishes
    """
    return eval_uv_many(patch, np.asarray(point, dtype=np.float64)[np.newaxis, :])[0]


def homogenize(patch: SPatch) -> BezierSimplex:
    """The patch in homogenized barycentric form: (x,y,z) → (x, y, z, 1−x−y−z)."""
    return patch.simplex.map_points(lambda p: np.append(p, 1.0 - p.sum()), dim=4)


def boundary_curve(patch: SPatch, i: int) -> FloatArray:
    """Bézier control polygon of side i, shape (d+1, 3).

    Side i joins vertex i and vertex i+1; entry k is the control point whose
    label is (d−k)·eᵢ + k·e_{i+1}.

    Raises:
        SideIndexError: If i is not in [0, n)
    """
    if not 0 <= i < patch.n:
        raise SideIndexError(f"Side index {i} out of range for a {patch.n}-sided patch")
    start = MultiIndex.unit(patch.n, i)
    end = MultiIndex.unit(patch.n, (i + 1) % patch.n)
    points = []
    for k in range(patch.d + 1):
        label = MultiIndex(a * (patch.d - k) + b * k for a, b in zip(start, end, strict=True))
        points.append(patch.control[label])
    return np.array(points)


def eval_curve(control: ArrayLike, t: float) -> FloatArray:
    """Evaluate a Bézier curve by repeated linear interpolation."""
    b = np.array(control, dtype=np.float64)
    for _ in range(len(b) - 1):
        b = (1.0 - t) * b[:-1] + t * b[1:]
    return b[0]
