"""Tests for Spatchy."""
