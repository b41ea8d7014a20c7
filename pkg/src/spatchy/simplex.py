"""Bézier simplexes: representation, evaluation and composition.

A Bézier simplex of arity n, degree d and point dimension δ maps n
barycentric arguments to δ-dimensional points through the Bernstein basis.
Its control net is a dict keyed by MultiIndex labels of L_{n,d}.

Two composition routines are provided. ``compose_naive`` expands the
defining sum over ordered label compositions and is exponential; it exists
as a reference and for benchmarking. ``compose`` caches partial blossoms and
visits each multiset of G-labels once, in lexicographic order.
"""

import itertools
import logging
import math
from collections.abc import Callable, Mapping, Sequence
from dataclasses import dataclass
from functools import cached_property
from types import MappingProxyType

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .multiindex import MultiIndex, enumerate_labels, multinomial, next_label

__all__ = [
    "ArityError",
    "BezierSimplex",
    "FloatArray",
    "IncompleteNetError",
    "SimplexError",
    "blossom",
    "compose",
    "compose_naive",
    "evaluate",
    "evaluate_many",
    "identity_simplex",
    "max_deviation",
]

logger = logging.getLogger(__name__)

FloatArray = NDArray[np.float64]


class SimplexError(ValueError):
    """Base exception for Bézier simplex errors."""


class ArityError(SimplexError):
    """Raised when an argument count or point dimension does not match."""


class IncompleteNetError(SimplexError):
    """Raised when a control net does not cover its label set exactly."""


# =============================================================================
# Representation
# =============================================================================


@dataclass(frozen=True, eq=False)
class BezierSimplex:
    """A Bézier simplex with characteristic triple φ = (arity, degree, dim)."""

    arity: int
    degree: int
    dim: int
    control: Mapping[MultiIndex, FloatArray]

    def __post_init__(self) -> None:
        if self.arity < 1:
            raise SimplexError(f"Arity must be at least 1, got {self.arity}")
        if self.degree < 0:
            raise SimplexError(f"Degree must be non-negative, got {self.degree}")
        if self.dim < 1:
            raise SimplexError(f"Point dimension must be at least 1, got {self.dim}")

        frozen: dict[MultiIndex, FloatArray] = {}
        for label in enumerate_labels(self.arity, self.degree):
            if label not in self.control:
                raise IncompleteNetError(f"Missing control point for label {list(label)}")
            point = np.array(self.control[label], dtype=np.float64)
            if point.shape != (self.dim,):
                raise IncompleteNetError(
                    f"Control point {list(label)} has shape {point.shape}, expected ({self.dim},)"
                )
            point.flags.writeable = False
            frozen[label] = point
        if len(self.control) != len(frozen):
            extra = [list(k) for k in self.control if k not in frozen]
            raise IncompleteNetError(f"Unexpected labels in control net: {extra}")

        object.__setattr__(self, "control", MappingProxyType(frozen))

    @classmethod
    def from_points(cls, arity: int, degree: int, points: ArrayLike) -> "BezierSimplex":
        """Build a simplex from points listed in ascending label order."""
        array = np.asarray(points, dtype=np.float64)
        labels = enumerate_labels(arity, degree)
        if array.ndim != 2 or array.shape[0] != len(labels):
            raise IncompleteNetError(
                f"Expected {len(labels)} points for arity {arity}, degree {degree}, "
                f"got array of shape {array.shape}"
            )
        return cls(arity, degree, array.shape[1], dict(zip(labels, array, strict=True)))

    @property
    def phi(self) -> tuple[int, int, int]:
        """The characteristic triple (arity, degree, dim)."""
        return (self.arity, self.degree, self.dim)

    @cached_property
    def labels(self) -> tuple[MultiIndex, ...]:
        """Labels in ascending lexicographic order."""
        return enumerate_labels(self.arity, self.degree)

    @cached_property
    def points(self) -> FloatArray:
        """Control points stacked in label order, shape (len(labels), dim)."""
        stacked = np.stack([self.control[label] for label in self.labels])
        stacked.flags.writeable = False
        return stacked

    @cached_property
    def _exponents(self) -> NDArray[np.int64]:
        return np.array(self.labels, dtype=np.int64).reshape(len(self.labels), self.arity)

    @cached_property
    def _coefficients(self) -> FloatArray:
        return np.array([float(multinomial(self.degree, s)) for s in self.labels])

    def map_points(
        self, func: Callable[[FloatArray], ArrayLike], dim: int | None = None
    ) -> "BezierSimplex":
        """A simplex of the same arity and degree with every point passed through func."""
        mapped = {
            label: np.asarray(func(point), dtype=np.float64)
            for label, point in self.control.items()
        }
        return BezierSimplex(self.arity, self.degree, self.dim if dim is None else dim, mapped)


def identity_simplex(n: int) -> BezierSimplex:
    """The degree-1 simplex with P_{eᵢ} = eᵢ, φ = (n, 1, n)."""
    return BezierSimplex.from_points(n, 1, np.eye(n)[::-1])


def max_deviation(first: BezierSimplex, second: BezierSimplex) -> float:
    """Largest absolute coordinate difference between two nets of equal φ."""
    if first.phi != second.phi:
        raise ArityError(f"Cannot compare simplexes with φ {first.phi} and {second.phi}")
    return float(np.max(np.abs(first.points - second.points)))


# =============================================================================
# Evaluation
# =============================================================================


def evaluate(simplex: BezierSimplex, bary: ArrayLike) -> FloatArray:
    """Evaluate Σ P_s · multinomial(d, s) · Π baryᵢ^sᵢ.

    The argument is not required to sum to one: composition feeds homogeneous
    points through the same polynomial. 0⁰ is taken as 1.

    Raises:
        ArityError: If bary does not have exactly arity entries
    """
    b = np.asarray(bary, dtype=np.float64)
    if b.shape != (simplex.arity,):
        raise ArityError(f"Expected {simplex.arity} barycentric arguments, got shape {b.shape}")
    return evaluate_many(simplex, b[np.newaxis, :])[0]


def evaluate_many(simplex: BezierSimplex, barys: ArrayLike) -> FloatArray:
    """Evaluate at each row of a (k, arity) array; returns (k, dim)."""
    b = np.asarray(barys, dtype=np.float64)
    if b.ndim != 2 or b.shape[1] != simplex.arity:
        raise ArityError(f"Expected rows of {simplex.arity} arguments, got shape {b.shape}")
    basis = np.prod(b[:, np.newaxis, :] ** simplex._exponents[np.newaxis, :, :], axis=2)
    return (basis * simplex._coefficients) @ simplex.points


# =============================================================================
# Blossom and naive composition
# =============================================================================


def _check_composable(outer: BezierSimplex, inner: BezierSimplex) -> None:
    if inner.dim != outer.arity:
        raise ArityError(
            f"Cannot compose: inner simplex has {inner.dim}-dimensional points "
            f"but outer simplex takes {outer.arity} arguments"
        )


def _bumped(s: tuple[int, ...], i: int) -> tuple[int, ...]:
    return (*s[:i], s[i] + 1, *s[i + 1:])


def _first_level_rows(simplex: BezierSimplex) -> dict[tuple[int, ...], FloatArray]:
    """For s ∈ L_{n,d−1}, the (n, dim) block of points P_{s+eᵢ}."""
    if simplex.degree == 0:
        return {}
    return {
        s: np.stack([simplex.control[_bumped(s, i)] for i in range(simplex.arity)])
        for s in enumerate_labels(simplex.arity, simplex.degree - 1)
    }


def _delta(
    simplex: BezierSimplex,
    rows: Mapping[tuple[int, ...], FloatArray],
    s: tuple[int, ...],
    points: Sequence[FloatArray],
) -> FloatArray:
    # Δ_s(p₁..p_k) = Σᵢ p_kⁱ Δ_{s+eᵢ}(p₁..p_{k−1})
    if not points:
        return simplex.control[s]
    if len(points) == 1:
        return points[0] @ rows[s]
    last = points[-1]
    head = points[:-1]
    total = np.zeros(simplex.dim)
    for i in range(simplex.arity):
        if last[i] != 0.0:
            total += last[i] * _delta(simplex, rows, _bumped(s, i), head)
    return total


def blossom(simplex: BezierSimplex, points: Sequence[ArrayLike]) -> FloatArray:
    """Δ₀(p₁, …, p_d): the blossom of the simplex at degree-many arguments.

    Raises:
        ArityError: If the argument count differs from the degree or a point
            does not have arity coordinates
    """
    if len(points) != simplex.degree:
        raise ArityError(f"Blossom takes {simplex.degree} arguments, got {len(points)}")
    args = [np.asarray(p, dtype=np.float64) for p in points]
    for p in args:
        if p.shape != (simplex.arity,):
            raise ArityError(f"Blossom argument has shape {p.shape}, expected ({simplex.arity},)")
    zero = (0,) * simplex.arity
    return _delta(simplex, _first_level_rows(simplex), zero, args)


def compose_naive(outer: BezierSimplex, inner: BezierSimplex) -> BezierSimplex:
    """H = outer ∘ inner by direct expansion over ordered label compositions.

    Every ordered tuple (s₁, …, s_{d_F}) of inner labels contributes
    Π multinomial(d_G, sᵢ) · Δ₀(P_{s₁}, …, P_{s_{d_F}}) to the label s₁+…+s_{d_F};
    each sum is finally divided by multinomial(d_F·d_G, s). The tuple count is
    |L_{n_G,d_G}|^{d_F}, so this is meant for small degrees.

    Raises:
        ArityError: If inner.dim differs from outer.arity
    """
    _check_composable(outer, inner)
    degree = outer.degree * inner.degree
    logger.debug("compose_naive: φ(F)=%s φ(G)=%s", outer.phi, inner.phi)

    accum = {label: np.zeros(outer.dim) for label in enumerate_labels(inner.arity, degree)}
    rows = _first_level_rows(outer)
    zero = (0,) * outer.arity
    for parts in itertools.product(inner.labels, repeat=outer.degree):
        total = tuple(map(sum, zip(*parts, strict=True))) if parts else (0,) * inner.arity
        weight = math.prod(multinomial(inner.degree, part) for part in parts)
        delta = _delta(outer, rows, zero, [inner.control[part] for part in parts])
        accum[total] += float(weight) * delta

    for label in accum:
        accum[label] /= float(multinomial(degree, label))
    return BezierSimplex(inner.arity, degree, outer.dim, accum)


# =============================================================================
# Efficient composition
# =============================================================================


def compose(outer: BezierSimplex, inner: BezierSimplex) -> BezierSimplex:
    """H = outer ∘ inner with cached blossoms, φ(H) = (n_G, d_F·d_G, δ_F).

    The recursion chooses inner labels in non-decreasing lexicographic order,
    so each multiset of d_F labels is visited once. Level k of the blossom
    table holds Δ partially applied to the first k−1 chosen labels and is
    reused by every branch sharing that prefix. The integer weight c starts at
    d_F!, gathers multinomial(d_G, s) per chosen label and is divided by the
    running multiplicity μ of repeated labels, so it counts the orderings of
    the multiset exactly.

    Raises:
        ArityError: If inner.dim differs from outer.arity
    """
    _check_composable(outer, inner)
    n_f, d_f = outer.arity, outer.degree
    n_g, d_g = inner.arity, inner.degree
    degree = d_f * d_g
    logger.debug("compose: φ(F)=%s φ(G)=%s -> φ(H)=%s", outer.phi, inner.phi,
                 (n_g, degree, outer.dim))

    # gather[k][j, i] = row of (label_j + e_i) in L_{n_F, d_F−k+1}, label_j ∈ L_{n_F, d_F−k}
    gather: list[NDArray[np.intp]] = [np.empty((0, n_f), dtype=np.intp)]
    for k in range(1, d_f + 1):
        parent_rows = {label: row for row, label in enumerate(enumerate_labels(n_f, d_f - k + 1))}
        children = enumerate_labels(n_f, d_f - k)
        gather.append(np.array(
            [[parent_rows[_bumped(label, i)] for i in range(n_f)] for label in children],
            dtype=np.intp,
        ).reshape(len(children), n_f))

    tables: list[FloatArray] = [np.empty((0, outer.dim)), np.asarray(outer.points)]
    tables.extend(np.empty((0, outer.dim)) for _ in range(d_f))
    accum = {label: np.zeros(outer.dim) for label in enumerate_labels(n_g, degree)}

    def blossom_step(k: int, p: FloatArray) -> None:
        tables[k + 1] = np.tensordot(tables[k][gather[k]], p, axes=([1], [0]))

    def rec(k: int, s_min: MultiIndex, s_sum: tuple[int, ...], c: int, mu: int) -> None:
        if k == d_f:
            accum[s_sum] += float(c) * tables[d_f + 1][0]
            return
        s: MultiIndex | None = s_min
        while s is not None:
            blossom_step(k + 1, inner.control[s])
            rec(
                k + 1,
                s,
                tuple(a + b for a, b in zip(s_sum, s, strict=True)),
                c * multinomial(d_g, s) // mu,
                mu + 1,
            )
            mu = 1
            s = next_label(s)

    rec(0, MultiIndex.unit(n_g, n_g - 1, d_g), (0,) * n_g, math.factorial(d_f), 1)

    for label in accum:
        accum[label] /= float(multinomial(degree, label))
    return BezierSimplex(n_g, degree, outer.dim, accum)
