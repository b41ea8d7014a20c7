"""Conversion of S-patches into trimmed rational tensor-product Bézier patches.

The pipeline runs in stages:

1. homogenize the n-sided patch S (φ = (n, d, 4));
2. compose it with W_n and then with W₄⁻¹, giving a homogeneous quadrilateral
   S-patch of depth (n−2)d;
3. replace the last homogeneous coordinate by the coordinate sum, giving
   standard (wx, wy, wz, w) points;
4. regroup the quadrilateral net into a tensor-product grid;
5. mirror the grid in v so the tensor parameter coincides with the domain
   plane, where the trim loop is the domain polygon.

W₄⁻¹ lists the square's corners as (0,1), (1,1), (1,0), (0,0) while the
tensor regrouping walks them as (0,0), (1,0), (1,1), (0,1); the two orders
differ by v ↦ 1−v, which step 5 undoes exactly (Bernstein symmetry).
"""

import logging
import math
import time
from collections.abc import Iterator
from contextlib import contextmanager
from dataclasses import dataclass
from typing import Final, Literal

import numpy as np
from numpy.typing import ArrayLike

from .multiindex import multinomial
from .simplex import BezierSimplex, FloatArray, compose, compose_naive
from .spatch import SPatch, homogenize
from .wachspress import build_W4inv, build_Wn, make_domain_polygon

__all__ = [
    "Algorithm",
    "Bracketing",
    "ConversionError",
    "RationalTensorPatch",
    "SingularEvaluationError",
    "TrimmedPatch",
    "bernstein",
    "change_coords",
    "convert",
    "eval_tensor",
    "eval_tensor_homogeneous_many",
    "eval_tensor_many",
    "make_trim_loop",
    "mirror_v",
    "to_quad_spatch",
    "to_tensor",
]

logger = logging.getLogger(__name__)

Algorithm = Literal["efficient", "naive"]
Bracketing = Literal["left", "right"]

# |w| below this fraction of the largest grid weight counts as vanishing
WEIGHT_TOLERANCE: Final = 1e-14


class ConversionError(ValueError):
    """Base exception for conversion errors."""


class SingularEvaluationError(ConversionError, ArithmeticError):
    """Raised when a rational patch is evaluated where its weight vanishes."""


@dataclass(frozen=True, eq=False)
class RationalTensorPatch:
    """A rational tensor-product Bézier patch with homogeneous control points.

    ``control[i, j]`` is C_ij = (wx, wy, wz, w); i runs along u, j along v.
    """

    control: FloatArray  # (degree_u + 1, degree_v + 1, 4)

    def __post_init__(self) -> None:
        grid = np.array(self.control, dtype=np.float64)
        if grid.ndim != 3 or grid.shape[2] != 4 or grid.shape[0] < 1 or grid.shape[1] < 1:
            raise ConversionError(f"Control grid must have shape (m, n, 4), got {grid.shape}")
        grid.flags.writeable = False
        object.__setattr__(self, "control", grid)

    @property
    def degree_u(self) -> int:
        return self.control.shape[0] - 1

    @property
    def degree_v(self) -> int:
        return self.control.shape[1] - 1

    @property
    def weights(self) -> FloatArray:
        """The weight grid w_ij."""
        return self.control[:, :, 3]

    def project(self) -> FloatArray:
        """Control points divided by their weights, shape (m, n, 3).

        Points with zero weight come out as ±inf or nan.
        """
        with np.errstate(divide="ignore", invalid="ignore"):
            return self.control[:, :, :3] / self.control[:, :, 3:]


@dataclass(frozen=True, eq=False)
class TrimmedPatch:
    """A rational tensor patch restricted to a closed straight-edged uv loop."""

    patch: RationalTensorPatch
    trim_loop: FloatArray  # (sides + 1, 2), last row equals the first

    @property
    def sides(self) -> int:
        return len(self.trim_loop) - 1


@contextmanager
def _stage(name: str, stage_times: dict[str, float] | None) -> Iterator[None]:
    start = time.perf_counter()
    yield
    elapsed = (time.perf_counter() - start) * 1000.0
    logger.debug("Stage %s took %.2f ms", name, elapsed)
    if stage_times is not None:
        stage_times[name] = elapsed


# =============================================================================
# Pipeline stages
# =============================================================================


def to_quad_spatch(
    patch: SPatch,
    *,
    bracketing: Bracketing = "left",
    algorithm: Algorithm = "efficient",
    stage_times: dict[str, float] | None = None,
) -> BezierSimplex:
    """The homogeneous quadrilateral S-patch S∘W_n∘W₄⁻¹, φ = (4, (n−2)d, 4).

    ``bracketing="left"`` composes (S∘W_n)∘W₄⁻¹; ``"right"`` composes
    S∘(W_n∘W₄⁻¹). Both give the same net up to rounding.

    Args:
        patch: The n-sided S-patch
        bracketing: Which pair of maps is composed first
        algorithm: "efficient" for the cached recursion, "naive" for direct expansion
        stage_times: If given, receives milliseconds per pipeline stage

    Returns:
        A Bézier simplex of arity 4 with homogenized barycentric points
    """
    composer = compose if algorithm == "efficient" else compose_naive
    with _stage("homogenize", stage_times):
        homogeneous = homogenize(patch)
    wachspress = build_Wn(patch.n)
    inverse = build_W4inv()

    if bracketing == "left":
        with _stage("compose_wn", stage_times):
            partial = composer(homogeneous, wachspress)
        with _stage("compose_w4inv", stage_times):
            quad = composer(partial, inverse)
    else:
        with _stage("compose_w4inv", stage_times):
            reparameterized = composer(wachspress, inverse)
        with _stage("compose_wn", stage_times):
            quad = composer(homogeneous, reparameterized)

    logger.debug("Quadrilateral net for n=%d, d=%d has φ=%s", patch.n, patch.d, quad.phi)
    return quad


def change_coords(simplex: BezierSimplex) -> BezierSimplex:
    """(a, b, c, e) → (a, b, c, a+b+c+e): homogenized barycentric to (wx, wy, wz, w).

    Raises:
        ConversionError: If the points are not 4-dimensional
    """
    if simplex.dim != 4:
        raise ConversionError(f"Expected 4-dimensional homogeneous points, got {simplex.dim}")
    return simplex.map_points(lambda p: np.append(p[:3], p.sum()))


def to_tensor(simplex: BezierSimplex) -> RationalTensorPatch:
    """Regroup a quadrilateral net of depth d into a (d, d) tensor grid.

    C_ij = Σ multinomial(d, s) / (C(d,i)·C(d,j)) · P_s over labels with
    s₁+s₂ = i and s₂+s₃ = j (0-based entries).

    Raises:
        ConversionError: If the simplex does not have arity 4
    """
    if simplex.arity != 4:
        raise ConversionError(f"Tensor regrouping needs a 4-sided net, got arity {simplex.arity}")
    d = simplex.degree
    grid = np.zeros((d + 1, d + 1, simplex.dim))
    for label, point in simplex.control.items():
        i = label[1] + label[2]
        j = label[2] + label[3]
        scale = multinomial(d, label) / (math.comb(d, i) * math.comb(d, j))
        grid[i, j] += scale * point
    return RationalTensorPatch(grid)


def mirror_v(patch: RationalTensorPatch) -> RationalTensorPatch:
    """The same surface reparameterized by v ↦ 1−v."""
    return RationalTensorPatch(patch.control[:, ::-1, :])


def make_trim_loop(n: int) -> FloatArray:
    """The domain polygon's vertices, counter-clockwise, closed by repeating the first.

    Raises:
        InvalidPolygonError: If n < 3
    """
    vertices = make_domain_polygon(n).vertices
    loop = np.vstack([vertices, vertices[:1]])
    loop.flags.writeable = False
    return loop


def convert(
    patch: SPatch,
    *,
    bracketing: Bracketing = "left",
    algorithm: Algorithm = "efficient",
    stage_times: dict[str, float] | None = None,
) -> TrimmedPatch:
    """Convert an S-patch into a trimmed rational patch of degree ((n−2)d, (n−2)d).

    Inside the trim loop, the tensor patch at (u, v) equals the S-patch at
    the domain point (u, v).

    Args:
        patch: The n-sided S-patch
        bracketing: Passed to to_quad_spatch
        algorithm: Passed to to_quad_spatch
        stage_times: If given, receives milliseconds per pipeline stage

    Returns:
        The rational tensor patch and its closed trim loop
    """
    quad = to_quad_spatch(
        patch, bracketing=bracketing, algorithm=algorithm, stage_times=stage_times
    )
    with _stage("change_coords", stage_times):
        homogeneous = change_coords(quad)
    with _stage("to_tensor", stage_times):
        tensor = to_tensor(homogeneous)
    with _stage("mirror_v", stage_times):
        tensor = mirror_v(tensor)
    logger.info(
        "Converted %d-sided depth-%d S-patch into a degree (%d, %d) rational patch",
        patch.n, patch.d, tensor.degree_u, tensor.degree_v,
    )
    return TrimmedPatch(tensor, make_trim_loop(patch.n))


# =============================================================================
# Evaluation
# =============================================================================


def bernstein(d: int, t: ArrayLike) -> FloatArray:
    """Univariate Bernstein basis B_i^d(t), shape t.shape + (d+1,)."""
    ts = np.asarray(t, dtype=np.float64)[..., np.newaxis]
    i = np.arange(d + 1)
    coefficients = np.array([math.comb(d, k) for k in range(d + 1)], dtype=np.float64)
    return coefficients * ts**i * (1.0 - ts) ** (d - i)


def eval_tensor_homogeneous_many(patch: RationalTensorPatch, uv: ArrayLike) -> FloatArray:
    """Σ C_ij B_i(u) B_j(v) in 4D at each row of a (k, 2) array; returns (k, 4)."""
    params = np.asarray(uv, dtype=np.float64).reshape(-1, 2)
    bu = bernstein(patch.degree_u, params[:, 0])
    bv = bernstein(patch.degree_v, params[:, 1])
    return np.einsum("ki,kj,ijc->kc", bu, bv, patch.control)


def eval_tensor_many(patch: RationalTensorPatch, uv: ArrayLike) -> FloatArray:
    """Projected surface points at each row of a (k, 2) array; returns (k, 3).

    Raises:
        SingularEvaluationError: If the weight vanishes at any parameter
    """
    homogeneous = eval_tensor_homogeneous_many(patch, uv)
    weights = homogeneous[:, 3]
    scale = float(np.max(np.abs(patch.weights)))
    vanishing = np.abs(weights) <= WEIGHT_TOLERANCE * scale
    if np.any(vanishing):
        u, v = np.asarray(uv, dtype=np.float64).reshape(-1, 2)[np.argmax(vanishing)]
        raise SingularEvaluationError(f"Rational weight vanishes at (u, v) = ({u:.6g}, {v:.6g})")
    return homogeneous[:, :3] / weights[:, np.newaxis]


def eval_tensor(patch: RationalTensorPatch, u: float, v: float) -> FloatArray:
    """Ŝ(u, v): the rational tensor patch at one parameter pair.

    Raises:
        SingularEvaluationError: If the weight vanishes at (u, v)
    """
    return eval_tensor_many(patch, [(u, v)])[0]
