"""Tests for public API documentation."""

from collections.abc import Callable

import pytest

from spatchy.bench import benchmark
from spatchy.convert import convert, to_quad_spatch
from spatchy.formats import (
    load_spatch,
    load_trimmed,
    parse_polygon,
    parse_simplex,
    parse_spatch,
    parse_trimmed,
    sample_mesh,
)
from spatchy.report import build_report

ENTRY_POINTS = [
    convert,
    to_quad_spatch,
    build_report,
    benchmark,
    sample_mesh,
    parse_spatch,
    parse_simplex,
    parse_polygon,
    parse_trimmed,
    load_spatch,
    load_trimmed,
]


class TestDocstrings:
    """Tests for entry point docstrings."""

    @pytest.mark.parametrize("func", ENTRY_POINTS, ids=lambda f: f.__name__)
    def test_arguments_and_result_documented(self, func: Callable[..., object]) -> None:
        """Test each entry point documents its arguments and return value."""
        doc = func.__doc__ or ""
        assert "Args:" in doc
        assert "Returns:" in doc
