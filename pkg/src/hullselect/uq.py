"""Hamming-ball confidence sets around the selected mask.

The data-driven radius shrinks polynomially in n over the preselector size;
the benchmark radius uses the active-set size in the same formula. Coverage
and size failures are evaluated as plain Monte-Carlo fractions.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .core import DimensionError, DomainError, SelectionMask, hamming_distance


@dataclass(frozen=True)
class UqConfig:
    """Radius exponent and the size-comparison multiplier.

    ``alpha4_prime`` is the shrinkage exponent of the radius; it must stay
    below a non-constructive model exponent for valid coverage, so it is a
    user knob (default 1.0). Zero is allowed as the degenerate full-ball
    diagnostic. ``m1_prime`` multiplies the benchmark radius in the size
    check.
    """

    alpha4_prime: float = 1.0
    m1_prime: float = 4.0

    def __post_init__(self) -> None:
        if self.alpha4_prime < 0:
            raise DomainError(f"alpha4_prime must be >= 0, got {self.alpha4_prime}")
        if not (self.m1_prime > 0):
            raise DomainError(f"m1_prime must be positive, got {self.m1_prime}")


def confidence_radius(preselector_size: int, n: int, alpha4_prime: float) -> float:
    """Radius n * (max(size, 1) / n)^alpha4_prime.

    Monotone non-decreasing in the size and capped at n for any
    alpha4_prime >= 0; exponent 0 gives the full ball.
    """
    if not (0 <= preselector_size <= n):
        raise DomainError(f"size must lie in [0, {n}], got {preselector_size}")
    if alpha4_prime < 0:
        raise DomainError(f"alpha4_prime must be >= 0, got {alpha4_prime}")
    return n * (max(preselector_size, 1) / n) ** alpha4_prime


@dataclass(frozen=True)
class ConfidenceBall:
    """All masks within Hamming distance ``radius`` of ``center``."""

    center: SelectionMask
    radius: float

    def __post_init__(self) -> None:
        if not (self.radius >= 0):
            raise DomainError(f"radius must be >= 0, got {self.radius}")

    def contains(self, eta: SelectionMask) -> bool:
        if eta.n != self.center.n:
            raise DimensionError(f"mask dimensions differ: {eta.n} != {self.center.n}")
        return hamming_distance(self.center, eta) <= self.radius


def ball_contains(ball: ConfidenceBall, eta: SelectionMask) -> bool:
    return ball.contains(eta)


def evaluate_uq(
    reps: Iterable[tuple[int, SelectionMask, SelectionMask]],
    n: int,
    cfg: UqConfig,
) -> tuple[float, float]:
    """Coverage-failure and size-exceedance fractions over replications.

    Each replication is (preselector_size, selected_mask, active_mask). The
    data radius is always computed from the preselector size and the
    benchmark radius from the active-set size; the two are never swapped.
    """
    records = []
    for presize, selected, active in reps:
        if selected.n != n or active.n != n:
            raise DimensionError("replication masks disagree with n")
        records.append((presize, hamming_distance(selected, active), active.size))
    return evaluate_uq_counts(records, n, cfg)


def evaluate_uq_counts(
    records: Sequence[tuple[int, int, int]],
    n: int,
    cfg: UqConfig,
) -> tuple[float, float]:
    """Same as :func:`evaluate_uq` from (preselector_size, hamming, active_size) triples."""
    records = list(records)
    if not records:
        raise DomainError("cannot evaluate UQ on an empty replication list")
    cover_fail = 0
    size_exceed = 0
    for presize, ham, active_size in records:
        r_hat = confidence_radius(presize, n, cfg.alpha4_prime)
        r_bench = confidence_radius(active_size, n, cfg.alpha4_prime)
        if ham > r_hat:
            cover_fail += 1
        if r_hat >= cfg.m1_prime * r_bench:
            size_exceed += 1
    r = len(records)
    return cover_fail / r, size_exceed / r


def uq_report_dict(coverage_fail_rate: float, size_exceed_rate: float, cfg: UqConfig) -> dict:
    return {
        "coverage_fail_rate": coverage_fail_rate,
        "size_exceed_rate": size_exceed_rate,
        "alpha4_prime": cfg.alpha4_prime,
        "m1_prime": cfg.m1_prime,
    }
