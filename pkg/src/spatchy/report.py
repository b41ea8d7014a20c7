"""Diagnostics for a converted patch.

The report checks a conversion against the S-patch it came from by
evaluating both at stratified interior samples, and looks for the corner
spikes that high-degree conversions of five or more sided patches tend to
produce: projected control points far outside the surface's bounding box,
or with a vanishing weight.
"""

import json
import logging
import math
from dataclasses import asdict, dataclass, field
from typing import Any, Final

import numpy as np

from .convert import (
    WEIGHT_TOLERANCE,
    TrimmedPatch,
    convert,
    eval_tensor_homogeneous_many,
    eval_tensor_many,
)
from .samples import DEFAULT_SAMPLES, interior_samples
from .spatch import SPatch, eval_uv_many

__all__ = ["OUTLIER_FACTOR", "ConversionReport", "build_report"]

logger = logging.getLogger(__name__)

# projected control points farther than this many bbox diagonals from the box are outliers
OUTLIER_FACTOR: Final = 2.0


@dataclass
class ConversionReport:
    """Diagnostics for one conversion."""

    sides: int
    depth: int
    degree: tuple[int, int]
    grid_size: tuple[int, int]
    samples: int
    max_error: float
    bbox_diagonal: float
    min_weight: float
    max_weight: float
    outlier_count: int
    worst_outlier_ratio: float
    stage_ms: dict[str, float] = field(default_factory=dict)

    @property
    def relative_error(self) -> float:
        """max_error divided by the bounding-box diagonal."""
        if self.bbox_diagonal == 0.0:
            return 0.0 if self.max_error == 0.0 else math.inf
        return self.max_error / self.bbox_diagonal

    def to_dict(self) -> dict[str, Any]:
        """JSON-ready fields; an infinite outlier ratio becomes null."""
        data = asdict(self)
        data["degree"] = list(self.degree)
        data["grid_size"] = list(self.grid_size)
        data["relative_error"] = self.relative_error
        for key in ("worst_outlier_ratio", "relative_error"):
            if math.isinf(data[key]):
                data[key] = None
        return data

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def summary(self) -> str:
        """Human-readable multi-line summary."""
        lines = [
            f"Input:     {self.sides}-sided S-patch of depth {self.depth}",
            f"Output:    degree {list(self.degree)}, "
            f"{self.grid_size[0]}x{self.grid_size[1]} control grid",
            f"Error:     {self.max_error:.3e} max over {self.samples} samples "
            f"({self.relative_error:.3e} of bbox diagonal)",
            f"Weights:   {self.min_weight:.6g} .. {self.max_weight:.6g} at interior samples",
            f"Outliers:  {self.outlier_count} control points "
            f"(worst {self.worst_outlier_ratio:.3g} diagonals from the bbox)",
        ]
        if self.stage_ms:
            stages = ", ".join(f"{name} {ms:.1f} ms" for name, ms in self.stage_ms.items())
            lines.append(f"Stages:    {stages}")
        return "\n".join(lines)


def build_report(
    patch: SPatch,
    trimmed: TrimmedPatch | None = None,
    *,
    stage_times: dict[str, float] | None = None,
    samples: int = DEFAULT_SAMPLES,
    seed: int = 0,
) -> ConversionReport:
    """Compare a conversion with its S-patch and collect diagnostics.

    The patch is converted here when ``trimmed`` is not given. The oracle error
    is always recomputed from fresh evaluations of both surfaces.

    Args:
        patch: The original S-patch
        trimmed: Its conversion, or None to convert here
        stage_times: Stage timings of the conversion that produced trimmed
        samples: Number of stratified interior sample points
        seed: Seed for the sample jitter

    Returns:
        The filled-in report

    Raises:
        SingularEvaluationError: If the rational weight vanishes at a sample
    """
    if trimmed is None:
        stage_times = {}
        trimmed = convert(patch, stage_times=stage_times)
    tensor = trimmed.patch

    uv = interior_samples(patch.domain, samples, seed=seed)
    expected = eval_uv_many(patch, uv)
    actual = eval_tensor_many(tensor, uv)
    weights = eval_tensor_homogeneous_many(tensor, uv)[:, 3]
    max_error = float(np.max(np.linalg.norm(actual - expected, axis=1)))

    low, high = expected.min(axis=0), expected.max(axis=0)
    diagonal = float(np.linalg.norm(high - low))

    grid_weights = tensor.weights.reshape(-1)
    points = tensor.project().reshape(-1, 3)
    vanishing = np.abs(grid_weights) <= WEIGHT_TOLERANCE * np.max(np.abs(grid_weights))
    offsets = np.linalg.norm(np.maximum(np.maximum(low - points, points - high), 0.0), axis=1)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratios = np.where(offsets > 0.0, offsets / diagonal, 0.0)
    ratios[vanishing] = math.inf
    outliers = ratios > OUTLIER_FACTOR
    if np.any(outliers):
        logger.warning(
            "%d of %d control points lie more than %.1f bbox diagonals from the surface",
            int(outliers.sum()), len(points), OUTLIER_FACTOR,
        )

    return ConversionReport(
        sides=patch.n,
        depth=patch.d,
        degree=(tensor.degree_u, tensor.degree_v),
        grid_size=(tensor.degree_u + 1, tensor.degree_v + 1),
        samples=len(uv),
        max_error=max_error,
        bbox_diagonal=diagonal,
        min_weight=float(weights.min()),
        max_weight=float(weights.max()),
        outlier_count=int(outliers.sum()),
        worst_outlier_ratio=float(ratios.max()),
        stage_ms=dict(stage_times or {}),
    )
