"""Noise generators for the robustness class, plus an empirical tail diagnostic.

All samplers are pure functions of an explicit numpy Generator, so a run is
reproducible from its seed alone. The diagnostic estimates how fast the
survival probability of subset sums of squared noise decays past a linear
budget; exponential-or-faster decay is what the selector's penalty is built
around.
"""

from __future__ import annotations

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import DomainError


class NoiseModel(ABC):
    """A distribution for the standardized noise vector."""

    @abstractmethod
    def sample(self, n: int, rng: np.random.Generator) -> np.ndarray: ...

    @abstractmethod
    def to_spec(self) -> dict: ...


@dataclass(frozen=True)
class IidGaussian(NoiseModel):
    def sample(self, n: int, rng: np.random.Generator) -> np.ndarray:
        return rng.standard_normal(n)

    def to_spec(self) -> dict:
        return {"variant": "iid-gaussian"}


@dataclass(frozen=True)
class Ar1(NoiseModel):
    """Gaussian AR(1) with stationary start, unit marginal variance."""

    rho: float

    def __post_init__(self) -> None:
        if not (-1.0 < self.rho < 1.0):
            raise DomainError(f"ar1 rho must lie in (-1, 1), got {self.rho}")

    def sample(self, n: int, rng: np.random.Generator) -> np.ndarray:
        z = rng.standard_normal(n)
        out = np.empty(n)
        out[0] = z[0]
        c = math.sqrt(1.0 - self.rho**2)
        for i in range(1, n):
            out[i] = self.rho * out[i - 1] + c * z[i]
        return out

    def to_spec(self) -> dict:
        return {"variant": "ar1", "rho": self.rho}


@dataclass(frozen=True)
class BoundedUniform(NoiseModel):
    b: float

    def __post_init__(self) -> None:
        if not (self.b > 0):
            raise DomainError(f"bounded-uniform b must be positive, got {self.b}")

    def sample(self, n: int, rng: np.random.Generator) -> np.ndarray:
        return rng.uniform(-self.b, self.b, n)

    def to_spec(self) -> dict:
        return {"variant": "bounded-uniform", "b": self.b}


@dataclass(frozen=True)
class Rademacher(NoiseModel):
    def sample(self, n: int, rng: np.random.Generator) -> np.ndarray:
        return rng.integers(0, 2, n) * 2.0 - 1.0

    def to_spec(self) -> dict:
        return {"variant": "rademacher"}


@dataclass(frozen=True)
class MeanOf(NoiseModel):
    """Average of m independent draws of an inner model; variance scales 1/m."""

    inner: NoiseModel
    m: int

    def __post_init__(self) -> None:
        if self.m < 1:
            raise DomainError(f"mean-of-m m must be >= 1, got {self.m}")

    def sample(self, n: int, rng: np.random.Generator) -> np.ndarray:
        acc = np.zeros(n)
        for _ in range(self.m):
            acc += self.inner.sample(n, rng)
        return acc / self.m

    def to_spec(self) -> dict:
        return {"variant": "mean-of-m", "m": self.m, "inner": self.inner.to_spec()}


def sample_noise(model: NoiseModel, n: int, rng: np.random.Generator) -> np.ndarray:
    """Draw one noise vector; deterministic given the generator state."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    return model.sample(n, rng)


def noise_model_from_spec(spec: dict) -> NoiseModel:
    """Parse the tagged-object JSON form, e.g. {"variant": "ar1", "rho": 0.5}."""
    if not isinstance(spec, dict) or "variant" not in spec:
        raise DomainError(f"noise spec must be an object with a 'variant' key: {spec!r}")
    variant = spec["variant"]
    if variant == "iid-gaussian":
        return IidGaussian()
    if variant == "ar1":
        return Ar1(rho=float(spec["rho"]))
    if variant == "bounded-uniform":
        return BoundedUniform(b=float(spec["b"]))
    if variant == "rademacher":
        return Rademacher()
    if variant == "mean-of-m":
        return MeanOf(inner=noise_model_from_spec(spec["inner"]), m=int(spec["m"]))
    raise DomainError(f"unknown noise variant {variant!r}")


@dataclass(frozen=True)
class TailDiagnosticReport:
    """Empirical survival of subset sums past a linear budget, and its decay.

    ``fitted_slope`` is the least-squares slope of log-survival against the
    margin grid, or None when fewer than two grid points had positive
    survival (decay faster than any exponential the grid can see).
    """

    m_grid: tuple[float, ...]
    empirical_survival: tuple[float, ...]
    fitted_slope: float | None
    passes: bool
    note: str | None = None

    def to_dict(self) -> dict:
        return {
            "m_grid": list(self.m_grid),
            "empirical_survival": list(self.empirical_survival),
            "fitted_slope": self.fitted_slope,
            "passes": self.passes,
            "note": self.note,
        }


def tail_decay_diagnostic(
    model: NoiseModel,
    n: int,
    per_coordinate_budget: float,
    m_grid: Sequence[float],
    subset_sizes: Sequence[int],
    reps: int,
    rng: np.random.Generator,
    slope_threshold: float = 0.1,
) -> TailDiagnosticReport:
    """Estimate P(sum of squared noise over a random subset >= budget + M).

    For each subset size s, ``reps`` replications each draw a fresh random
    subset of size s and a noise vector; the excess over the linear budget
    ``per_coordinate_budget * s`` is pooled across sizes and thresholded at
    every M in ``m_grid``. A line is fit to log-survival over the positive
    points; the check passes when the slope is at most -slope_threshold.
    This is a sanity diagnostic, not a certificate.
    """
    if reps < 100:
        raise DomainError(f"reps must be >= 100, got {reps}")
    if not m_grid or not subset_sizes:
        raise DomainError("m_grid and subset_sizes must be nonempty")
    for s in subset_sizes:
        if not (1 <= s <= n):
            raise DomainError(f"subset size {s} outside [1, {n}]")
    if not (per_coordinate_budget > 0):
        raise DomainError("per_coordinate_budget must be positive")

    grid = tuple(sorted(float(m) for m in m_grid))
    excesses = []
    for s in subset_sizes:
        for _ in range(reps):
            idx = rng.choice(n, size=s, replace=False)
            xi = sample_noise(model, n, rng)
            excesses.append(float(np.sum(xi[idx] ** 2)) - per_coordinate_budget * s)
    excesses = np.asarray(excesses)
    survival = tuple(float(np.mean(excesses >= m)) for m in grid)

    pos = [(m, p) for m, p in zip(grid, survival) if p > 0]
    if len(pos) < 2:
        return TailDiagnosticReport(grid, survival, None, True, "survival vanished")
    ms = np.array([m for m, _ in pos])
    logs = np.log([p for _, p in pos])
    slope = float(np.polyfit(ms, logs, 1)[0])
    return TailDiagnosticReport(grid, survival, slope, slope <= -slope_threshold)
