"""Multi-index labels for Bézier simplex and S-patch control nets.

A label is a tuple of non-negative integers with one entry per simplex vertex
(or polygon side); its norm is the sum of the entries. Labels compare
lexicographically with the first entry most significant and hash like plain
tuples, so control nets throughout the package are dicts keyed by label.
"""

import math
from collections.abc import Iterable, Iterator, Sequence
from functools import cache
from typing import Self

__all__ = [
    "LabelError",
    "MultiIndex",
    "enumerate_labels",
    "iter_labels",
    "label_count",
    "multinomial",
    "next_label",
]


class LabelError(ValueError):
    """Raised when a label violates a precondition."""


class MultiIndex(tuple[int, ...]):
    """An n-tuple of non-negative integers naming one control point."""

    __slots__ = ()

    def __new__(cls, entries: Iterable[int]) -> Self:
        values = tuple(int(e) for e in entries)
        if any(v < 0 for v in values):
            raise LabelError(f"Label has a negative entry: {list(values)}")
        return super().__new__(cls, values)

    @classmethod
    def zero(cls, n: int) -> Self:
        """The all-zero label 0ₙ."""
        return cls((0,) * n)

    @classmethod
    def unit(cls, n: int, i: int, scale: int = 1) -> Self:
        """The label scale·eᵢ of length n."""
        if not 0 <= i < n:
            raise LabelError(f"Unit index {i} out of range for length {n}")
        return cls(scale if k == i else 0 for k in range(n))

    @property
    def norm(self) -> int:
        """|s|, the sum of the entries."""
        return sum(self)

    def plus(self, other: Sequence[int]) -> "MultiIndex":
        """Entry-wise sum with another label of the same length."""
        if len(other) != len(self):
            raise LabelError(f"Cannot add labels of length {len(self)} and {len(other)}")
        return MultiIndex(a + b for a, b in zip(self, other, strict=True))

    def bumped(self, i: int) -> "MultiIndex":
        """s + eᵢ: the label with entry i increased by one."""
        entries = list(self)
        entries[i] += 1
        return MultiIndex(entries)

    def __repr__(self) -> str:
        return f"MultiIndex({list(self)})"


def multinomial(d: int, s: Sequence[int]) -> int:
    """Multinomial coefficient d! / Π sᵢ!, computed exactly.

    Raises:
        LabelError: If |s| differs from d
    """
    if sum(s) != d:
        raise LabelError(f"Label {list(s)} has norm {sum(s)}, expected {d}")
    return _multinomial(d, tuple(s))


@cache
def _multinomial(d: int, s: tuple[int, ...]) -> int:
    result = math.factorial(d)
    for entry in s:
        result //= math.factorial(entry)
    return result


def label_count(n: int, d: int) -> int:
    """|L_{n,d}| = C(n+d−1, d)."""
    return math.comb(n + d - 1, d)


def enumerate_labels(n: int, d: int) -> tuple[MultiIndex, ...]:
    """All labels of length n and norm d in ascending lexicographic order.

    Raises:
        LabelError: If n < 1 or d < 0
    """
    if n < 1:
        raise LabelError(f"Label length must be at least 1, got {n}")
    if d < 0:
        raise LabelError(f"Label norm must be non-negative, got {d}")
    return _enumerate_labels(n, d)


@cache
def _enumerate_labels(n: int, d: int) -> tuple[MultiIndex, ...]:
    return tuple(MultiIndex(entries) for entries in _compositions(n, d))


def _compositions(n: int, d: int) -> Iterator[tuple[int, ...]]:
    if n == 1:
        yield (d,)
        return
    for first in range(d + 1):
        for rest in _compositions(n - 1, d - first):
            yield (first, *rest)


def next_label(s: Sequence[int]) -> MultiIndex | None:
    """The lexicographic successor of s among labels of the same norm.

    Returns None past the maximum label (d·e₀), e.g.
    0021 → 0030 → 0102 → … → 3000 → None.
    """
    n = len(s)
    tail = 0
    # rightmost position that can grow while its tail still holds some norm
    for i in range(n - 1, 0, -1):
        tail += s[i]
        if tail > 0:
            k = i - 1
            head = list(s[:k])
            return MultiIndex([*head, s[k] + 1, *([0] * (n - k - 2)), tail - 1])
    return None


def iter_labels(n: int, d: int) -> Iterator[MultiIndex]:
    """Walk L_{n,d} with next_label, starting from the minimum d·e_{n−1}."""
    label: MultiIndex | None = MultiIndex.unit(n, n - 1, d)
    while label is not None:
        yield label
        label = next_label(label)
