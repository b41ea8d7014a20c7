"""Timing of the quadrilateral composition with either composition routine."""

import logging
import time
from typing import Final

from .convert import Algorithm, to_quad_spatch
from .samples import random_spatch

__all__ = ["NAIVE_DEGREE_LIMIT", "REFERENCE_NOTE", "BenchmarkError", "benchmark"]

logger = logging.getLogger(__name__)

# the naive composition grows exponentially in (n−2)d
NAIVE_DEGREE_LIMIT: Final = 8

REFERENCE_NOTE: Final = (
    "Reference: converting a 5-sided depth-8 patch has been reported to take "
    "more than 5 minutes on a 2.8 GHz processor."
)


class BenchmarkError(ValueError):
    """Raised when a benchmark configuration is refused."""


def benchmark(n: int, d: int, algorithm: Algorithm = "efficient", seed: int = 0) -> float:
    """Time to_quad_spatch on a seeded random patch.

    Args:
        n: Number of sides
        d: Depth
        algorithm: Composition routine to time
        seed: Seed for the random control net

    Returns:
        Wall-clock milliseconds

    Raises:
        BenchmarkError: If the naive routine is asked for (n−2)d > NAIVE_DEGREE_LIMIT
    """
    if algorithm not in ("efficient", "naive"):
        raise BenchmarkError(f"Unknown composition algorithm {algorithm!r}")
    if algorithm == "naive" and (n - 2) * d > NAIVE_DEGREE_LIMIT:
        raise BenchmarkError(
            f"Naive composition refused for (n-2)d = {(n - 2) * d} > {NAIVE_DEGREE_LIMIT}"
        )
    patch = random_spatch(n, d, seed)
    start = time.perf_counter()
    to_quad_spatch(patch, algorithm=algorithm)
    elapsed = (time.perf_counter() - start) * 1000.0
    logger.info("%s composition for n=%d, d=%d took %.1f ms", algorithm, n, d, elapsed)
    return elapsed
