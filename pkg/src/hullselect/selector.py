"""Penalized preselection and the thresholding variable selector.

The preselector minimizes the out-of-subset energy plus K*sigma^2 times the
sparsity penalty; the final selector keeps the coordinates whose squared
observation clears a threshold set by the preselector's size. A Mallows-Cp
style baseline is included for comparison runs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._sweep import sweep_argmin
from .core import Q_DEFAULT, DomainError, ObservationVector, SelectionMask


@dataclass(frozen=True)
class SelectorConfig:
    """Penalty constant K, noise intensity, and penalty base.

    ``threshold_floor_one`` switches the threshold to use max(size, 1) when
    the preselector comes back empty, instead of the default +infinity
    (select nothing) reading. Sensitivity studies only.
    """

    K: float
    sigma: float
    q: float = Q_DEFAULT
    threshold_floor_one: bool = False

    def __post_init__(self) -> None:
        if not (self.K > 0):
            raise DomainError(f"K must be positive, got {self.K}")
        if not (self.sigma > 0):
            raise DomainError(f"sigma must be positive, got {self.sigma}")


@dataclass(frozen=True)
class SelectionResult:
    preselector: SelectionMask
    selected: SelectionMask
    threshold: float  # +inf exactly when the preselector is empty
    criterion_value: float

    def to_dict(self) -> dict:
        return {
            "preselector": self.preselector.to_json(),
            "selected": self.selected.to_json(),
            "threshold": None if math.isinf(self.threshold) else self.threshold,
            "criterion": self.criterion_value,
        }


def preselect(obs: ObservationVector, cfg: SelectorConfig) -> tuple[SelectionMask, float]:
    """Exact argmin of the penalized out-of-subset energy.

    Returns the minimizing mask and the criterion value. Among exact
    minimizers the mask maximizing sum(n - i) is returned; residual ties go
    to the larger cardinality. Runs in O(n log n) via the sort-and-sweep
    reduction, verified against exhaustive search in the tests.
    """
    weight = cfg.K * cfg.sigma**2
    k, order, _, value = sweep_argmin(obs.x**2, weight, cfg.q, prefer_small=False)
    mask = SelectionMask(tuple(sorted(int(i) + 1 for i in order[:k])), obs.n)
    return mask, value


def select(obs: ObservationVector, cfg: SelectorConfig) -> SelectionResult:
    """Preselect, then keep coordinates whose x_i^2 clears the size threshold.

    The threshold is K*sigma^2*log(q*n/size) for a nonempty preselector and
    +infinity otherwise, so an empty preselector selects nothing. The
    selected set is checked to be a subset of the preselector, which the
    criterion guarantees for the default threshold.
    """
    pre, value = preselect(obs, cfg)
    size = pre.size
    if size == 0 and not cfg.threshold_floor_one:
        threshold = math.inf
    else:
        threshold = cfg.K * cfg.sigma**2 * math.log(cfg.q * obs.n / max(size, 1))
    xsq = obs.x**2
    chosen = tuple(int(i) + 1 for i in np.flatnonzero(xsq >= threshold))
    selected = SelectionMask(chosen, obs.n)
    if not cfg.threshold_floor_one and not selected.as_set() <= pre.as_set():
        raise RuntimeError("selector produced a coordinate outside the preselector")
    return SelectionResult(pre, selected, threshold, value)


def mallows_cp(obs: ObservationVector) -> SelectionMask:
    """Argmin of the Cp objective; separable, so x_i^2 > 2*sigma^2 per coordinate.

    Coordinates tied exactly at 2*sigma^2 are excluded (strict inequality).
    """
    cut = 2.0 * obs.sigma**2
    chosen = tuple(int(i) + 1 for i in np.flatnonzero(obs.x**2 > cut))
    return SelectionMask(chosen, obs.n)
