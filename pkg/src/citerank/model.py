"""Domain types, corpus validation and cumulative citation accounting."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Iterable

import numpy as np

DEFAULT_HORIZON = 31


class CorpusValidationError(ValueError):
    """A record violates a corpus invariant. ``paper_id`` names the offender."""

    def __init__(self, message: str, paper_id: str | None = None):
        super().__init__(message)
        self.paper_id = paper_id


class Approach(str, Enum):
    P_LOW = "p_low"
    P_INC = "p_inc"
    HAZEN = "hazen"
    INCITES = "incites"
    SCIMAGO = "scimago"
    P100 = "p100"
    CWTS = "cwts"

    @property
    def is_fractional(self) -> bool:
        return self is Approach.CWTS


class TieRule(str, Enum):
    AVERAGE = "average"
    MIN = "min"
    MAX = "max"


class Direction(str, Enum):
    ASCENDING = "ascending"
    DESCENDING = "descending"


class BoundaryRule(str, Enum):
    INCLUSIVE = "inclusive"
    STRICT = "strict"


# approaches whose zero rule is a switch; INCITES and P100 get it structurally
_ZERO_RULE_DEFAULT_ON = {Approach.P_LOW, Approach.P_INC, Approach.HAZEN, Approach.SCIMAGO}


@dataclass(frozen=True)
class PaperRecord:
    paper_id: str
    doc_type: str
    subject_categories: tuple[str, ...]
    yearly_citations: tuple[int, ...]
    journal_metric: float | None = None

    def __post_init__(self):
        # accept lists from callers but store immutable tuples
        object.__setattr__(self, "subject_categories", tuple(self.subject_categories))
        object.__setattr__(self, "yearly_citations", tuple(self.yearly_citations))

    @property
    def horizon(self) -> int:
        return len(self.yearly_citations)


@dataclass(frozen=True)
class ApproachSpec:
    """Which scoring approach to run and with which conventions.

    ``zero_rule=None`` resolves to the per-approach default: on for the plain
    percentile formulas and SCImago, off (not applicable) for the rest.
    ``x`` is the top-class threshold in percent and is required for CWTS.
    """

    approach: Approach
    tie_rule: TieRule = TieRule.AVERAGE
    zero_rule: bool | None = None
    boundary_rule: BoundaryRule = BoundaryRule.INCLUSIVE
    x: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "approach", Approach(self.approach))
        object.__setattr__(self, "tie_rule", TieRule(self.tie_rule))
        object.__setattr__(self, "boundary_rule", BoundaryRule(self.boundary_rule))
        if self.zero_rule is None:
            object.__setattr__(self, "zero_rule", self.approach in _ZERO_RULE_DEFAULT_ON)
        if self.approach is Approach.CWTS:
            if self.x is None or not (0 < self.x <= 100):
                raise ValueError(f"CWTS needs a class threshold 0 < x <= 100, got {self.x!r}")
        elif self.x is not None and not (0 < self.x <= 100):
            raise ValueError(f"threshold x must lie in (0, 100], got {self.x!r}")

    @property
    def label(self) -> str:
        if self.approach is Approach.CWTS:
            return f"cwts{self.x:g}"
        return self.approach.value


@dataclass(frozen=True)
class Corpus:
    papers: tuple[PaperRecord, ...]
    horizon: int = DEFAULT_HORIZON

    def __post_init__(self):
        object.__setattr__(self, "papers", tuple(self.papers))

    def __len__(self) -> int:
        return len(self.papers)

    def __iter__(self):
        return iter(self.papers)

    @cached_property
    def index(self) -> dict[str, int]:
        """Row position of each paper_id."""
        return {p.paper_id: i for i, p in enumerate(self.papers)}

    @cached_property
    def cumulative(self) -> np.ndarray:
        """(n_papers, horizon) matrix; column t-1 holds counts through year t."""
        if not self.papers:
            return np.zeros((0, self.horizon), dtype=np.int64)
        annual = np.array([p.yearly_citations for p in self.papers], dtype=np.int64)
        out = np.cumsum(annual, axis=1)
        out.setflags(write=False)
        return out

    @cached_property
    def journal_metrics(self) -> np.ndarray:
        """Secondary sort keys; a missing metric counts as 0."""
        out = np.array(
            [0.0 if p.journal_metric is None else p.journal_metric for p in self.papers],
            dtype=float,
        )
        out.setflags(write=False)
        return out

    def get(self, paper_id: str) -> PaperRecord:
        return self.papers[self.index[paper_id]]


def validate_record(record: PaperRecord, horizon: int) -> None:
    pid = record.paper_id
    cats = record.subject_categories
    if not cats:
        raise CorpusValidationError(f"paper {pid!r}: subject_categories is empty", pid)
    if len(set(cats)) != len(cats):
        raise CorpusValidationError(f"paper {pid!r}: duplicate subject categories {cats}", pid)
    if len(record.yearly_citations) != horizon:
        raise CorpusValidationError(
            f"paper {pid!r}: {len(record.yearly_citations)} yearly counts, horizon is {horizon}",
            pid,
        )
    for c in record.yearly_citations:
        if isinstance(c, bool) or int(c) != c:
            raise CorpusValidationError(f"paper {pid!r}: non-integer citation count {c!r}", pid)
        if c < 0:
            raise CorpusValidationError(f"paper {pid!r}: negative citation count {c}", pid)
    jm = record.journal_metric
    if jm is not None and (not math.isfinite(jm) or jm < 0):
        raise CorpusValidationError(f"paper {pid!r}: journal_metric must be finite and >= 0", pid)


def validate_corpus(records: Iterable[PaperRecord], horizon: int = DEFAULT_HORIZON) -> Corpus:
    """Check every record against the corpus invariants and freeze them.

    Raises
    ------
    CorpusValidationError
        On an empty input, a duplicate id, an empty or repeated category
        list, a negative count or a record whose length differs from
        ``horizon``. The offending ``paper_id`` is attached to the error.
    """
    if horizon < 1:
        raise CorpusValidationError(f"horizon must be >= 1, got {horizon}")
    records = tuple(records)
    if not records:
        raise CorpusValidationError("corpus is empty")
    seen: set[str] = set()
    for rec in records:
        if rec.paper_id in seen:
            raise CorpusValidationError(f"duplicate paper_id {rec.paper_id!r}", rec.paper_id)
        seen.add(rec.paper_id)
        validate_record(rec, horizon)
    return Corpus(records, horizon)


def cumulative_citations(paper: PaperRecord, year: int) -> int:
    """Citations received from publication (year 1) through ``year``."""
    if not 1 <= year <= paper.horizon:
        raise ValueError(f"year {year} outside 1..{paper.horizon}")
    return int(sum(paper.yearly_citations[:year]))


def check_year(year: int, horizon: int) -> None:
    if not 1 <= year <= horizon:
        raise ValueError(f"year {year} outside 1..{horizon}")
