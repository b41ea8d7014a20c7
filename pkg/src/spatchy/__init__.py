"""Spatchy - exact conversion of S-patches into trimmed rational Bézier patches."""

__version__ = "0.1.0"
