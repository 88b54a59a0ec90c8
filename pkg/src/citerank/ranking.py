"""Tie-aware ranking and per-reference-set scoring formulas.

Every scoring function maps a vector of citation counts (one reference set)
to scores on the 0-100 scale, aligned with the input order.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .model import Approach, ApproachSpec, Direction, TieRule

PERCENTILE_FORMULAS = (Approach.P_LOW, Approach.P_INC, Approach.HAZEN)


def _as_vector(values, name="values") -> np.ndarray:
    arr = np.asarray(values, dtype=float)
    if arr.ndim != 1:
        raise ValueError(f"{name} must be one-dimensional")
    if arr.size == 0:
        raise ValueError(f"{name} must be non-empty")
    return arr


def _lexicographic_ranks(keys: Sequence[np.ndarray], tie_rule: TieRule) -> np.ndarray:
    """1-based ascending ranks over a lexicographic key tuple (primary key first)."""
    n = keys[0].size
    # np.lexsort sorts by the last key first and is stable
    order = np.lexsort(tuple(reversed(keys)))
    new_group = np.zeros(n, dtype=bool)
    new_group[0] = True
    for k in keys:
        s = k[order]
        new_group[1:] |= s[1:] != s[:-1]
    starts = np.flatnonzero(new_group)
    ends = np.append(starts[1:], n)
    if tie_rule is TieRule.AVERAGE:
        group_rank = (starts + 1 + ends) / 2.0
    elif tie_rule is TieRule.MIN:
        group_rank = (starts + 1).astype(float)
    else:
        group_rank = ends.astype(float)
    ranks = np.empty(n)
    ranks[order] = np.repeat(group_rank, ends - starts)
    return ranks


def rank_ties(values, direction=Direction.ASCENDING, tie_rule=TieRule.AVERAGE) -> np.ndarray:
    """Rank values, collapsing tied groups.

    Parameters
    ----------
    values : array_like
        Non-empty 1-d sequence of reals.
    direction : Direction or str
        ``ascending`` gives rank 1 to the smallest value, ``descending`` to
        the largest.
    tie_rule : TieRule or str
        ``average`` assigns each tied group the mean of its positions,
        ``min``/``max`` the extreme position.

    Returns
    -------
    ndarray of float, same length as ``values``.
    """
    arr = _as_vector(values)
    if Direction(direction) is Direction.DESCENDING:
        arr = -arr
    return _lexicographic_ranks([arr], TieRule(tie_rule))


def _apply_zero_rule(scores: np.ndarray, citations: np.ndarray) -> np.ndarray:
    scores[citations == 0] = 0.0
    return scores


def percentile(citations, formula=Approach.HAZEN, tie_rule=TieRule.AVERAGE, zero_rule=True) -> np.ndarray:
    """Percentile of each paper from its ascending rank ``i`` among ``n`` papers.

    ``p_low`` is 100(i-1)/n, ``p_inc`` is 100 i/n and ``hazen`` is
    100(i-0.5)/n. With ``zero_rule`` uncited papers are pinned to 0.
    """
    formula = Approach(formula)
    if formula not in PERCENTILE_FORMULAS:
        raise ValueError(f"not a percentile formula: {formula.value}")
    c = _as_vector(citations, "citations")
    n = c.size
    i = _lexicographic_ranks([c], TieRule(tie_rule))
    if formula is Approach.P_LOW:
        scores = 100.0 * (i - 1.0) / n
    elif formula is Approach.P_INC:
        scores = 100.0 * i / n
    else:
        scores = 100.0 * (i - 0.5) / n
    if zero_rule:
        _apply_zero_rule(scores, c)
    return scores


def incites_rank(citations) -> np.ndarray:
    """InCites convention: descending ranks with the maximum rank for ties,
    then the complement 100 - 100 i/n. Uncited papers always land on 0."""
    c = _as_vector(citations, "citations")
    i = _lexicographic_ranks([-c], TieRule.MAX)
    return 100.0 - 100.0 * i / c.size


def scimago_rank(citations, secondary_keys=None, tie_rule=TieRule.AVERAGE, zero_rule=True) -> np.ndarray:
    """P_INC percentile after sorting on (citations, journal metric).

    Among papers with equal citations the one in the journal with the higher
    metric ranks higher. Missing or NaN keys count as 0.
    """
    c = _as_vector(citations, "citations")
    if secondary_keys is None:
        keys = np.zeros_like(c)
    elif isinstance(secondary_keys, np.ndarray):
        keys = secondary_keys.astype(float)
    else:
        keys = np.array([0.0 if k is None else k for k in secondary_keys], dtype=float)
        if keys.shape != c.shape:
            raise ValueError(
                f"secondary_keys has length {keys.size}, citations has {c.size}"
            )
        keys = np.nan_to_num(keys, nan=0.0)
    i = _lexicographic_ranks([c, keys], TieRule(tie_rule))
    scores = 100.0 * i / c.size
    if zero_rule:
        _apply_zero_rule(scores, c)
    return scores


def p100_rank(citations) -> np.ndarray:
    """Citation rank over the distinct citation values of the set.

    With distinct values u_0 < ... < u_imax, a paper holding u_i scores
    100 i / imax: the lowest value scores 0, the highest 100, and papers
    with equal counts share a score regardless of how many there are.
    A set without any spread (imax = 0) scores 0 throughout.
    """
    c = _as_vector(citations, "citations")
    unique, idx = np.unique(c, return_inverse=True)
    i_max = unique.size - 1
    if i_max == 0:
        return np.zeros(c.size)
    return 100.0 * idx.reshape(-1) / i_max


def score(citations, spec: ApproachSpec, secondary_keys=None) -> np.ndarray:
    """Dispatch one of the score approaches. CWTS lives in :mod:`citerank.classes`."""
    a = spec.approach
    if a in PERCENTILE_FORMULAS:
        return percentile(citations, a, spec.tie_rule, spec.zero_rule)
    if a is Approach.INCITES:
        return incites_rank(citations)
    if a is Approach.SCIMAGO:
        return scimago_rank(citations, secondary_keys, spec.tie_rule, spec.zero_rule)
    if a is Approach.P100:
        return p100_rank(citations)
    raise ValueError(f"{a.value} does not produce a score vector; use classes.cwts_probabilities")
