"""Top-x% class membership and fractional (CWTS-style) class attribution."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .model import BoundaryRule

# slack for float comparisons against 100 - x and for slot counts like n*x/100
_EPS = 1e-9


@dataclass(frozen=True)
class ClassFraction:
    paper_id: str | int
    p: float
    x: float


def _check_threshold(x: float) -> float:
    x = float(x)
    if not 0 < x <= 100:
        raise ValueError(f"class threshold x must lie in (0, 100], got {x}")
    return x


def top_class_mask(scores, x: float, boundary_rule=BoundaryRule.INCLUSIVE) -> np.ndarray:
    x = _check_threshold(x)
    s = np.asarray(scores, dtype=float)
    cut = 100.0 - x
    if BoundaryRule(boundary_rule) is BoundaryRule.INCLUSIVE:
        return s >= cut - _EPS
    return s > cut + _EPS


def top_class_members(scores, x: float, boundary_rule=BoundaryRule.INCLUSIVE) -> set[int]:
    """Indices of papers in the top-x% class.

    INCLUSIVE keeps scores >= 100 - x, STRICT keeps scores > 100 - x.
    """
    return set(np.flatnonzero(top_class_mask(scores, x, boundary_rule)).tolist())


def cwts_probabilities(citations, x: float) -> np.ndarray:
    """Probability of each paper belonging to the top-x% class of its set.

    The class holds ``n*x/100`` slots. Papers cited more than the boundary
    paper fill slots outright (p = 1); papers tied with the boundary paper
    split the slots that remain equally; everything below gets 0.
    """
    x = _check_threshold(x)
    c = np.asarray(citations, dtype=float)
    if c.ndim != 1 or c.size == 0:
        raise ValueError("citations must be a non-empty 1-d sequence")
    n = c.size
    slots = n * x / 100.0
    k = min(n, max(1, math.ceil(slots - _EPS)))
    boundary = np.sort(c)[n - k]  # k-th highest count
    above = c > boundary
    tied = c == boundary
    p = np.zeros(n)
    p[above] = 1.0
    p[tied] = (slots - np.count_nonzero(above)) / np.count_nonzero(tied)
    return p


def cwts_fractions(citations, x: float, paper_ids: Sequence | None = None) -> list[ClassFraction]:
    p = cwts_probabilities(citations, x)
    ids = range(p.size) if paper_ids is None else paper_ids
    if len(ids) != p.size:
        raise ValueError("paper_ids and citations differ in length")
    return [ClassFraction(pid, float(v), float(x)) for pid, v in zip(ids, p)]


def expected_top_count(fractions: Iterable[ClassFraction]) -> float:
    return float(sum(f.p for f in fractions))
