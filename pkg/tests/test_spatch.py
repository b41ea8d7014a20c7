"""Tests for S-patches."""

import math

import numpy as np
import pytest

from spatchy.multiindex import MultiIndex, enumerate_labels
from spatchy.samples import dome_spatch, interior_samples, random_spatch
from spatchy.simplex import ArityError, IncompleteNetError, evaluate
from spatchy.spatch import (
    SPatch,
    SPatchError,
    SideIndexError,
    boundary_curve,
    eval_bary,
    eval_curve,
    eval_uv,
    eval_uv_many,
    homogenize,
)
from spatchy.wachspress import OutsideDomainError, make_domain_polygon, wachspress_coords


class TestSPatch:
    """Tests for construction."""

    def test_depth_one_triangle(self) -> None:
        """Test a flat triangle with three control points."""
        patch = SPatch.from_points(3, 1, [(0, 0, 0), (1, 0, 0), (0, 1, 0)])
        assert (patch.n, patch.d) == (3, 1)
        np.testing.assert_allclose(patch.corner(2), (0, 0, 0))

    def test_too_few_sides(self) -> None:
        """Test S-patches need at least three sides."""
        with pytest.raises(SPatchError, match="at least 3"):
            SPatch.from_points(2, 1, [(0, 0, 0), (1, 0, 0)])

    def test_depth_zero(self) -> None:
        """Test depth must be positive."""
        with pytest.raises(SPatchError, match="depth"):
            SPatch(4, 0, {MultiIndex.zero(4): np.zeros(3)})

    def test_points_must_be_3d(self) -> None:
        """Test control points carry three coordinates."""
        control = {label: np.zeros(2) for label in enumerate_labels(3, 1)}
        with pytest.raises(IncompleteNetError, match="shape"):
            SPatch(3, 1, control)

    def test_domain_matches_sides(self) -> None:
        """Test each patch carries the regular domain polygon of its side count."""
        patch = random_spatch(6, 2)
        np.testing.assert_array_equal(patch.domain.vertices, make_domain_polygon(6).vertices)


class TestEvaluation:
    """Tests for S-patch evaluation."""

    def test_vertex_interpolation(self) -> None:
        """Test the patch passes through its corner points at the domain vertices."""
        patch = random_spatch(5, 3, seed=1)
        for i, vertex in enumerate(patch.domain.vertices):
            np.testing.assert_allclose(eval_uv(patch, vertex), patch.corner(i), atol=1e-10)

    def test_uv_is_bary_of_wachspress(self) -> None:
        """Test eval_uv composes the simplex with the Wachspress coordinates."""
        patch = random_spatch(6, 2, seed=2)
        p = np.array([0.45, 0.55])
        np.testing.assert_allclose(
            eval_uv(patch, p), eval_bary(patch, wachspress_coords(patch.domain, p)), atol=1e-14
        )

    def test_many_matches_single(self) -> None:
        """Test batched evaluation agrees with point evaluation."""
        patch = random_spatch(4, 2, seed=3)
        points = interior_samples(patch.domain, 10)
        batched = eval_uv_many(patch, points)
        for row, p in zip(batched, points, strict=True):
            np.testing.assert_allclose(row, eval_uv(patch, p), atol=1e-14)

    def test_outside_domain(self) -> None:
        """Test points outside the polygon are rejected."""
        patch = random_spatch(5, 1)
        with pytest.raises(OutsideDomainError, match="outside"):
            eval_uv(patch, (0.0, 0.0))

    def test_dome_symmetric_centre(self) -> None:
        """Test the dome's centre point lies on the symmetry axis."""
        centre = eval_uv(dome_spatch(5, 3), (0.5, 0.5))
        np.testing.assert_allclose(centre[:2], (0.0, 0.0), atol=1e-12)
        assert centre[2] > 0.0

    def test_bernstein_sum(self) -> None:
        """Test barycentric evaluation against a term-by-term Bernstein sum."""
        patch = random_spatch(5, 2, seed=6)
        rng = np.random.default_rng(6)
        for _ in range(10):
            bary = rng.dirichlet(np.ones(5))
            expected = np.zeros(3)
            for label, point in patch.control.items():
                coefficient = math.factorial(2) / math.prod(math.factorial(k) for k in label)
                terms = zip(bary, label, strict=True)
                expected += coefficient * math.prod(b**k for b, k in terms) * point
            np.testing.assert_allclose(eval_bary(patch, bary), expected, atol=1e-13)

    def test_convex_hull(self) -> None:
        """Test interior points stay inside the control points' bounding box."""
        patch = random_spatch(6, 3, seed=7)
        low = patch.simplex.points.min(axis=0) - 1e-12
        high = patch.simplex.points.max(axis=0) + 1e-12
        values = eval_uv_many(patch, interior_samples(patch.domain, 200, seed=7))
        assert np.all(values >= low)
        assert np.all(values <= high)

    def test_affine_invariance(self) -> None:
        """Test mapping the control points affinely maps the surface the same way."""
        patch = random_spatch(5, 3, seed=8)
        rng = np.random.default_rng(8)
        matrix = rng.uniform(-1.0, 1.0, size=(3, 3))
        offset = rng.uniform(-1.0, 1.0, size=3)
        moved = SPatch.from_points(5, 3, patch.simplex.points @ matrix.T + offset)
        points = interior_samples(patch.domain, 20, seed=8)
        np.testing.assert_allclose(
            eval_uv_many(moved, points), eval_uv_many(patch, points) @ matrix.T + offset,
            atol=1e-10,
        )

    def test_bary_arity(self) -> None:
        """Test barycentric evaluation needs n coordinates."""
        with pytest.raises(ArityError):
            eval_bary(random_spatch(4, 1), [0.5, 0.5])


class TestHomogenize:
    """Tests for the homogenized barycentric form."""

    def test_control_points(self) -> None:
        """Test (x, y, z) becomes (x, y, z, 1−x−y−z)."""
        patch = SPatch.from_points(3, 1, [(1, 2, 3), (0, 0, 0), (0.5, 0.25, 0.25)])
        hom = homogenize(patch)
        assert hom.phi == (3, 1, 4)
        np.testing.assert_allclose(hom.control[(0, 0, 1)], (1, 2, 3, -5))
        np.testing.assert_allclose(hom.control[(0, 1, 0)], (0, 0, 0, 1))
        np.testing.assert_allclose(hom.control[(1, 0, 0)], (0.5, 0.25, 0.25, 0))

    def test_evaluation_consistent(self) -> None:
        """Test the homogeneous form projects back to the patch."""
        patch = random_spatch(5, 2, seed=4)
        bary = np.array([0.1, 0.2, 0.3, 0.25, 0.15])
        h = evaluate(homogenize(patch), bary)
        assert h.sum() == pytest.approx(1.0)
        np.testing.assert_allclose(h[:3], eval_bary(patch, bary), atol=1e-14)


class TestBoundary:
    """Tests for boundary curves."""

    def test_control_polygon_labels(self) -> None:
        """Test side i uses the labels between d·eᵢ and d·e_{i+1}."""
        patch = random_spatch(4, 2, seed=5)
        curve = boundary_curve(patch, 3)
        assert curve.shape == (3, 3)
        np.testing.assert_allclose(curve[0], patch.control[(0, 0, 0, 2)])
        np.testing.assert_allclose(curve[1], patch.control[(1, 0, 0, 1)])
        np.testing.assert_allclose(curve[2], patch.control[(2, 0, 0, 0)])

    @pytest.mark.parametrize("n", [3, 5, 6])
    def test_edge_is_bezier_curve(self, n: int) -> None:
        """Test the patch restricted to an edge is the boundary Bézier curve."""
        patch = random_spatch(n, 3, seed=n)
        for i in range(n):
            a, b = patch.domain.edge(i)
            curve = boundary_curve(patch, i)
            for t in np.linspace(0.05, 0.95, 7):
                np.testing.assert_allclose(
                    eval_uv(patch, (1 - t) * a + t * b), eval_curve(curve, t), atol=1e-10
                )

    def test_side_out_of_range(self) -> None:
        """Test side indices are checked."""
        with pytest.raises(SideIndexError, match="out of range"):
            boundary_curve(random_spatch(3, 2), 3)

    def test_eval_curve_endpoints(self) -> None:
        """Test de Casteljau evaluation interpolates the end points."""
        control = np.array([(0, 0, 0), (1, 2, 0), (3, 0, 1)], dtype=float)
        np.testing.assert_allclose(eval_curve(control, 0.0), control[0])
        np.testing.assert_allclose(eval_curve(control, 1.0), control[-1])
        np.testing.assert_allclose(eval_curve(control, 0.5), (1.25, 1.0, 0.25))
