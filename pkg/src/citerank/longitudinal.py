"""Per-year score matrices, class counts, persistence and research-unit correlations."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from .classes import top_class_mask
from .model import Approach, ApproachSpec, BoundaryRule, Corpus, check_year
from .ranking import rank_ties
from .refsets import ReferenceSet, member_rows, score_rows, uses_best_of


class DegenerateCorrelationError(ValueError):
    """Rank correlation is undefined because one input is constant."""


@dataclass(frozen=True, eq=False)
class ScoreMatrix:
    """Aggregated score of every surviving paper in every year.

    ``values[k, t-1]`` belongs to ``paper_ids[k]`` in year ``t``. For CWTS the
    cells hold the mean top-class probability in [0, 1] instead of a score.
    """

    spec: ApproachSpec
    paper_ids: tuple[str, ...]
    values: np.ndarray

    @property
    def approach(self) -> Approach:
        return self.spec.approach

    @property
    def horizon(self) -> int:
        return self.values.shape[1]

    @property
    def years(self) -> range:
        return range(1, self.horizon + 1)

    @cached_property
    def index(self) -> dict[str, int]:
        return {pid: k for k, pid in enumerate(self.paper_ids)}

    def column(self, year: int) -> np.ndarray:
        check_year(year, self.horizon)
        return self.values[:, year - 1]

    def __getitem__(self, key: tuple[str, int]) -> float:
        pid, year = key
        check_year(year, self.horizon)
        return float(self.values[self.index[pid], year - 1])

    def __len__(self) -> int:
        return len(self.paper_ids)


@dataclass(frozen=True)
class ResearchUnit:
    unit_id: int
    member_ids: tuple[str, ...]

    @property
    def size(self) -> int:
        return len(self.member_ids)


class _Layout:
    """Row bookkeeping shared by every year: which corpus rows each set holds
    and where each surviving paper sits in the output."""

    def __init__(self, corpus: Corpus, sets: Sequence[ReferenceSet]):
        if not sets:
            raise ValueError("no surviving reference sets to score")
        self.set_rows = [member_rows(s, corpus) for s in sets]
        self.surviving = np.unique(np.concatenate(self.set_rows))
        position = np.full(len(corpus), -1, dtype=np.int64)
        position[self.surviving] = np.arange(self.surviving.size)
        self.set_pos = [position[r] for r in self.set_rows]
        self.n_sets = np.zeros(self.surviving.size)
        for pos in self.set_pos:
            self.n_sets[pos] += 1
        self.paper_ids = tuple(corpus.papers[r].paper_id for r in self.surviving)

    def aggregate_year(self, corpus: Corpus, spec: ApproachSpec, year: int) -> np.ndarray:
        m = self.surviving.size
        if uses_best_of(spec.approach):
            acc = np.full(m, -np.inf)
            for rows, pos in zip(self.set_rows, self.set_pos):
                # positions are unique within one set, so fancy-index updates are safe
                acc[pos] = np.maximum(acc[pos], score_rows(rows, corpus, spec, year))
            return acc
        acc = np.zeros(m)
        for rows, pos in zip(self.set_rows, self.set_pos):
            acc[pos] += score_rows(rows, corpus, spec, year)
        return acc / self.n_sets


def scores_at_year(
    corpus: Corpus, sets: Sequence[ReferenceSet], spec: ApproachSpec, year: int
) -> tuple[tuple[str, ...], np.ndarray]:
    """Aggregated score of every surviving paper at a single year."""
    check_year(year, corpus.horizon)
    layout = _Layout(corpus, sets)
    return layout.paper_ids, layout.aggregate_year(corpus, spec, year)


def scores_by_year(corpus: Corpus, sets: Sequence[ReferenceSet], spec: ApproachSpec) -> ScoreMatrix:
    """Score every set in every year and aggregate per paper.

    Rows follow corpus order restricted to papers with at least one
    surviving set.
    """
    layout = _Layout(corpus, sets)
    values = np.empty((layout.surviving.size, corpus.horizon))
    for year in range(1, corpus.horizon + 1):
        values[:, year - 1] = layout.aggregate_year(corpus, spec, year)
    values.setflags(write=False)
    return ScoreMatrix(spec, layout.paper_ids, values)


def _resolve_boundary(matrix: ScoreMatrix, boundary_rule) -> BoundaryRule:
    return matrix.spec.boundary_rule if boundary_rule is None else BoundaryRule(boundary_rule)


def _check_cwts_threshold(matrix: ScoreMatrix, x: float) -> None:
    if not math.isclose(float(x), matrix.spec.x):
        raise ValueError(
            f"CWTS matrix was built for top {matrix.spec.x:g}%, cannot count top {x:g}%"
        )


def class_membership(matrix: ScoreMatrix, x: float, boundary_rule=None) -> np.ndarray:
    """Boolean (papers, years) membership in the top-x% class for score approaches."""
    if matrix.approach is Approach.CWTS:
        raise ValueError("CWTS cells are probabilities; use class_count_series")
    return top_class_mask(matrix.values, x, _resolve_boundary(matrix, boundary_rule))


def class_count_series(matrix: ScoreMatrix, x: float, boundary_rule=None) -> list[float]:
    """Top-x% class size per year.

    Score approaches count papers at or above the class cut. CWTS sums the
    papers' mean probabilities, the expected class size.
    """
    if matrix.approach is Approach.CWTS:
        _check_cwts_threshold(matrix, x)
        return matrix.values.sum(axis=0).tolist()
    mask = class_membership(matrix, x, boundary_rule)
    return mask.sum(axis=0).astype(float).tolist()


def cwts_threshold_count_series(matrix: ScoreMatrix, x: float, cutoff: float = 0.5) -> list[float]:
    """CWTS class size per year counting papers whose mean probability reaches ``cutoff``."""
    if matrix.approach is not Approach.CWTS:
        raise ValueError("only defined for CWTS matrices")
    _check_cwts_threshold(matrix, x)
    return (matrix.values >= cutoff).sum(axis=0).astype(float).tolist()


def persistence_series(
    matrix: ScoreMatrix, x: float, final_year: int | None = None, boundary_rule=None
) -> tuple[list[float], list[float]]:
    """How much of each year's top-x% class is still in the class at ``final_year``.

    Returns ``(counts, percents)`` indexed by year - 1. Percents are relative
    to the size of the final-year class and are 0 when that class is empty.
    For CWTS, membership is fractional and the overlap of two years is the
    sum of the smaller of the two probabilities per paper.
    """
    final_year = matrix.horizon if final_year is None else final_year
    check_year(final_year, matrix.horizon)
    if matrix.approach is Approach.CWTS:
        _check_cwts_threshold(matrix, x)
        member = matrix.values
        final = np.ascontiguousarray(member[:, final_year - 1])
        # same 1-d reduction for every column so the final year overlaps itself exactly
        counts = np.array([np.minimum(member[:, t], final).sum() for t in range(matrix.horizon)])
        final_size = final.sum()
    else:
        member = class_membership(matrix, x, boundary_rule)
        final = member[:, final_year - 1]
        counts = (member & final[:, None]).sum(axis=0).astype(float)
        final_size = float(final.sum())
    if final_size > 0:
        percents = 100.0 * (counts / final_size)
    else:
        percents = np.zeros_like(counts)
    return counts.tolist(), percents.tolist()


def _population_ids(population) -> tuple[str, ...]:
    if isinstance(population, ScoreMatrix):
        return population.paper_ids
    if isinstance(population, Corpus):
        return tuple(p.paper_id for p in population.papers)
    return tuple(population)


def sample_units(population, size: int, n_samples: int, seed) -> list[ResearchUnit]:
    """Draw ``n_samples`` research units of ``size`` distinct papers each.

    ``population`` is a ScoreMatrix (its surviving papers), a Corpus or a
    sequence of paper ids. Units are independent without-replacement draws
    from ``numpy.random.default_rng(seed)``, so a seed fixes the result.
    """
    ids = _population_ids(population)
    if size < 1 or n_samples < 1:
        raise ValueError("size and n_samples must be positive")
    if size > len(ids):
        raise ValueError(f"unit size {size} exceeds the {len(ids)} available papers")
    rng = np.random.default_rng(seed)
    units = []
    for u in range(n_samples):
        picks = rng.choice(len(ids), size=size, replace=False)
        units.append(ResearchUnit(u, tuple(ids[k] for k in picks)))
    return units


def spearman(a, b) -> float:
    """Tie-corrected Spearman correlation: Pearson correlation of average ranks.

    Raises
    ------
    DegenerateCorrelationError
        If either input is constant.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape or a.ndim != 1:
        raise ValueError("spearman needs two 1-d inputs of equal length")
    if a.size < 2:
        raise ValueError("spearman needs at least two observations")
    da = rank_ties(a)
    db = rank_ties(b)
    da -= da.mean()
    db -= db.mean()
    sxx = float(da @ da)
    syy = float(db @ db)
    if sxx == 0.0 or syy == 0.0:
        raise DegenerateCorrelationError("rank correlation undefined for a constant input")
    # identical rank vectors give sxx / sqrt(sxx * sxx), which is exactly 1.0
    r = float(da @ db) / math.sqrt(sxx * syy)
    return min(1.0, max(-1.0, r))


def unit_means(units: Sequence[ResearchUnit], matrix: ScoreMatrix) -> np.ndarray:
    """(n_units, years) mean aggregated score of each unit's papers."""
    index = matrix.index
    out = np.empty((len(units), matrix.horizon))
    sizes = {u.size for u in units}
    if len(sizes) == 1:
        rows = np.array([[index[pid] for pid in u.member_ids] for u in units], dtype=np.int64)
        return matrix.values[rows].mean(axis=1)
    for k, u in enumerate(units):
        rows = np.fromiter((index[pid] for pid in u.member_ids), dtype=np.int64, count=u.size)
        out[k] = matrix.values[rows].mean(axis=0)
    return out


def correlation_series(
    units: Sequence[ResearchUnit],
    matrix: ScoreMatrix,
    final_year: int | None = None,
    skip_degenerate: bool = False,
) -> list[float]:
    """Spearman correlation over units between mean score at year t and at ``final_year``.

    With ``skip_degenerate`` a year whose unit means are constant yields NaN
    instead of raising.
    """
    if len(units) < 2:
        raise ValueError("need at least two research units")
    final_year = matrix.horizon if final_year is None else final_year
    check_year(final_year, matrix.horizon)
    means = unit_means(units, matrix)
    target = means[:, final_year - 1]
    out = []
    for t in range(matrix.horizon):
        try:
            out.append(spearman(means[:, t], target))
        except DegenerateCorrelationError:
            if not skip_degenerate:
                raise
            out.append(float("nan"))
    return out
