"""Sample control nets and domain sampling."""

from typing import Final

import numpy as np

from .multiindex import enumerate_labels
from .simplex import FloatArray
from .spatch import SPatch
from .wachspress import DomainPolygon, make_domain_polygon

__all__ = [
    "DEFAULT_SAMPLES",
    "INTERIOR_MARGIN",
    "dome_spatch",
    "interior_samples",
    "random_spatch",
]

DEFAULT_SAMPLES: Final = 500
INTERIOR_MARGIN: Final = 0.01


def dome_spatch(n: int, d: int) -> SPatch:
    """A rotationally symmetric dome over the n-gon.

    The control point with label s sits above the domain point
    Σ (s_k/d)·vertex_k, mapped to [−1, 1]², at height ½(1 − x² − y²).
    """
    vertices = make_domain_polygon(n).vertices
    points = []
    for label in enumerate_labels(n, d):
        u, v = np.asarray(label, dtype=np.float64) @ vertices / d
        x, y = 2.0 * u - 1.0, 2.0 * v - 1.0
        points.append((x, y, 0.5 * (1.0 - x * x - y * y)))
    return SPatch.from_points(n, d, points)


def random_spatch(n: int, d: int, seed: int = 0) -> SPatch:
    """An S-patch with control coordinates uniform in [−1, 1]³."""
    rng = np.random.default_rng(seed)
    count = len(enumerate_labels(n, d))
    return SPatch.from_points(n, d, rng.uniform(-1.0, 1.0, size=(count, 3)))


def interior_samples(
    polygon: DomainPolygon,
    count: int = DEFAULT_SAMPLES,
    margin: float = INTERIOR_MARGIN,
    seed: int = 0,
) -> FloatArray:
    """Stratified random points strictly inside a polygon, shape (count, 2).

    The polygon is shrunk by (1 − margin) about its centre and split into the
    fan triangles (centre, vertex k, vertex k+1); each triangle receives an
    equal share of the points, the remainder going to the first triangles.
    """
    rng = np.random.default_rng(seed)
    center = polygon.center
    shrunk = center + (1.0 - margin) * (polygon.vertices - center)
    n = polygon.n
    shares = [count // n + (1 if k < count % n else 0) for k in range(n)]

    chunks = []
    for k, share in enumerate(shares):
        a, b = shrunk[k], shrunk[(k + 1) % n]
        r = rng.uniform(size=(share, 2))
        flip = r.sum(axis=1) > 1.0
        r[flip] = 1.0 - r[flip]
        chunks.append(center + r[:, :1] * (a - center) + r[:, 1:] * (b - center))
    return np.vstack(chunks)
