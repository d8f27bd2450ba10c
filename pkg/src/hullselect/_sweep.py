"""Sort-and-sweep argmin kernel shared by the preselector and the active set.

Both minimize, over all subsets I of {1..n},

    sum of v_i over i outside I  +  weight * penalty(|I|)

for nonnegative per-coordinate scores v (squared observations or squared
signal values). For a fixed cardinality k the optimal subset consists of the
k largest scores (exchange argument, checked against brute force in the test
suite), so the 2^n search collapses to a sweep over k = 0..n on suffix sums
of the sorted scores. Ties in the k-th largest score are resolved toward the
smaller index, which simultaneously maximizes sum(n - i) and minimizes
sum(i) among same-size optimal subsets, so both callers share the within-k
choice and differ only in the across-k tie rule.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .core import kahan_suffix_sums, sparsity_penalty


@lru_cache(maxsize=64)
def penalty_vector(n: int, q: float) -> np.ndarray:
    """Cached [penalty(0), penalty(1), ..., penalty(n)]. Do not mutate."""
    return np.array([sparsity_penalty(k, n, q) for k in range(n + 1)])


def order_by_score(v: np.ndarray) -> np.ndarray:
    """0-based indices sorted by descending score, ascending index on ties."""
    return np.argsort(-np.asarray(v, dtype=float), kind="stable")


def sweep_argmin(
    v: np.ndarray,
    weight: float,
    q: float,
    prefer_small: bool,
) -> tuple[int, np.ndarray, np.ndarray, float]:
    """Minimize the penalized out-of-subset score over all cardinalities.

    Parameters
    ----------
    v : nonnegative scores, one per coordinate.
    weight : multiplier on the sparsity penalty (K*sigma^2 or A*sigma^2).
    q : penalty base constant.
    prefer_small : across-k rule on exact criterion ties. True picks the
        candidate with the smallest sum of 1-based indices; False picks the
        largest sum of (n - i), breaking residual ties toward the larger
        cardinality.

    Returns
    -------
    (k, order, suffix, criterion) where ``order[:k]`` are the chosen 0-based
    coordinates, ``suffix[j]`` is the sum of the n - j smallest scores, and
    ``criterion`` is the minimized objective value.

    Criterion values are compared with exact float equality: the suffix sums
    are compensated, so equal true sums collide reliably and the tie rules
    stay deterministic.
    """
    v = np.asarray(v, dtype=float)
    n = len(v)
    order = order_by_score(v)
    suffix = kahan_suffix_sums(v[order])

    vals = suffix + weight * penalty_vector(n, q)
    best_val = float(vals.min())
    ties = np.flatnonzero(vals == best_val)
    if len(ties) == 1:
        best_k = int(ties[0])
    elif prefer_small:
        # Candidates are nested, so sum(i) grows strictly with k: the
        # smallest tied cardinality has the smallest index sum.
        best_k = int(ties[0])
    else:
        # Largest sum(n - i) = k*n - sum of chosen 1-based indices; equal
        # sums are possible only when the extra coordinate is index n, in
        # which case the larger set wins for determinism.
        csum = np.concatenate(([0], np.cumsum(order + 1)))
        tie_scores = ties * n - csum[ties]
        best_k = int(ties[np.flatnonzero(tie_scores == tie_scores.max())[-1]])
    return best_k, order, suffix, best_val
