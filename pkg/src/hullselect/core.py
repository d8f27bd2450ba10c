"""Shared numeric conventions, index masks, and the sparsity penalty.

Everything downstream works with 1-based coordinate indices so that masks
round-trip cleanly through JSON/CSV reports. Internally a mask is a sorted
tuple of ints plus the ambient dimension.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

# Penalty base constant: exp(2), natural log throughout.
Q_DEFAULT = math.exp(2.0)


class DomainError(ValueError):
    """Argument outside the mathematical domain of an operation."""


class DimensionError(ValueError):
    """Objects with mismatched ambient dimension were combined."""


@dataclass(frozen=True)
class Conventions:
    """Numeric conventions shared by all criteria.

    ``q`` defaults to exp(2) and is only overridable for sensitivity
    experiments. The zero conventions are 0/0 = 0 and 0*log(a/0) = 0,
    applied wherever proportions or the penalty hit degenerate inputs.
    """

    q: float = Q_DEFAULT


def sparsity_penalty(k: int | float, n: int, q: float = Q_DEFAULT) -> float:
    """Penalty weight k*log(q*n/k) for selecting k of n coordinates.

    Strictly increasing in k on [0, n] for q >= e; k = 0 returns 0 by the
    0*log(a/0) = 0 convention.

    Raises
    ------
    DomainError
        If k < 0 or k > n.
    """
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    if k < 0 or k > n:
        raise DomainError(f"k must lie in [0, {n}], got {k}")
    if k == 0:
        return 0.0
    return k * math.log(q * n / k)


@dataclass(frozen=True)
class SelectionMask:
    """A subset of {1, ..., n}, stored as a sorted tuple of 1-based indices."""

    indices: tuple[int, ...]
    n: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise DomainError(f"mask dimension must be >= 1, got {self.n}")
        idx = self.indices
        for j, i in enumerate(idx):
            if not (1 <= i <= self.n):
                raise DomainError(f"index {i} outside [1, {self.n}]")
            if j > 0 and idx[j - 1] >= i:
                raise DomainError("indices must be strictly increasing")

    @classmethod
    def from_indices(cls, indices: Iterable[int], n: int) -> "SelectionMask":
        """Build a mask from any iterable of 1-based indices (deduplicated)."""
        return cls(tuple(sorted(set(int(i) for i in indices))), n)

    @classmethod
    def empty(cls, n: int) -> "SelectionMask":
        return cls((), n)

    @classmethod
    def full(cls, n: int) -> "SelectionMask":
        return cls(tuple(range(1, n + 1)), n)

    @classmethod
    def from_indicator(cls, eta: Sequence[int] | np.ndarray) -> "SelectionMask":
        """Build a mask from a 0/1 indicator vector."""
        eta = np.asarray(eta)
        return cls(tuple(int(i) + 1 for i in np.flatnonzero(eta)), len(eta))

    @property
    def size(self) -> int:
        return len(self.indices)

    def __contains__(self, i: int) -> bool:
        return i in set(self.indices)

    def __len__(self) -> int:
        return len(self.indices)

    def as_set(self) -> frozenset[int]:
        return frozenset(self.indices)

    def indicator(self) -> np.ndarray:
        """Binary representation as an int8 0/1 vector of length n."""
        eta = np.zeros(self.n, dtype=np.int8)
        if self.indices:
            eta[np.asarray(self.indices) - 1] = 1
        return eta

    def binary_string(self) -> str:
        """0/1 string form used in CSV columns."""
        own = self.as_set()
        return "".join("1" if i in own else "0" for i in range(1, self.n + 1))

    def complement(self) -> "SelectionMask":
        """All coordinates of [n] not in this mask."""
        own = self.as_set()
        return SelectionMask(tuple(i for i in range(1, self.n + 1) if i not in own), self.n)

    def to_json(self) -> list[int]:
        """Sorted 1-based index array, the JSON wire form."""
        return list(self.indices)


def mask_complement(a: SelectionMask) -> SelectionMask:
    return a.complement()


def hamming_distance(a: SelectionMask, b: SelectionMask) -> int:
    """Number of coordinates on which two masks disagree: |a\\b| + |b\\a|."""
    if a.n != b.n:
        raise DimensionError(f"mask dimensions differ: {a.n} != {b.n}")
    return len(a.as_set() ^ b.as_set())


@dataclass(frozen=True)
class ObservationVector:
    """Observed data with known noise intensity sigma."""

    x: np.ndarray
    sigma: float

    def __post_init__(self) -> None:
        x = np.asarray(self.x, dtype=float)
        if x.ndim != 1 or x.size < 1:
            raise DomainError("x must be a nonempty 1-d vector")
        if not np.all(np.isfinite(x)):
            raise DomainError("x must be finite")
        if not (self.sigma > 0 and math.isfinite(self.sigma)):
            raise DomainError(f"sigma must be positive and finite, got {self.sigma}")
        object.__setattr__(self, "x", x)

    @property
    def n(self) -> int:
        return int(self.x.size)


def kahan_suffix_sums(values_desc: np.ndarray) -> np.ndarray:
    """Suffix sums of a descending-magnitude array via compensated summation.

    Returns s with s[k] = sum(values_desc[k:]) and s[n] = 0. Accumulating
    from the small tail upward keeps the running compensation effective, so
    equal true sums stay equal in float and the downstream argmin is
    deterministic.
    """
    n = len(values_desc)
    out = np.empty(n + 1, dtype=float)
    out[n] = 0.0
    total = 0.0
    comp = 0.0
    for k in range(n - 1, -1, -1):
        y = float(values_desc[k]) - comp
        t = total + y
        comp = (t - total) - y
        total = t
        out[k] = total
    return out
