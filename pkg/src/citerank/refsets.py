"""Reference sets by (subject category, document type), scoring and aggregation."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from . import ranking
from .classes import cwts_probabilities
from .model import Approach, ApproachSpec, Corpus, check_year

DEFAULT_MIN_SIZE = 100

# approaches combined by the best score across sets; everything else is averaged
_BEST_OF = {Approach.INCITES}


@dataclass(frozen=True)
class ReferenceSet:
    key: tuple[str, str]  # (subject_category, doc_type)
    member_ids: tuple[str, ...]

    @property
    def size(self) -> int:
        return len(self.member_ids)

    @property
    def category(self) -> str:
        return self.key[0]

    @property
    def doc_type(self) -> str:
        return self.key[1]

    @property
    def label(self) -> str:
        return f"{self.key[0]}/{self.key[1]}"


@dataclass(frozen=True)
class ExclusionReport:
    dropped_sets: tuple[tuple[tuple[str, str], int], ...] = ()
    dropped_papers: tuple[tuple[str, str], ...] = ()  # (paper_id, reason)

    @cached_property
    def dropped_ids(self) -> frozenset[str]:
        return frozenset(pid for pid, _ in self.dropped_papers)


def build_reference_sets(
    corpus: Corpus, min_size: int = DEFAULT_MIN_SIZE
) -> tuple[list[ReferenceSet], ExclusionReport]:
    """Group papers into reference sets and drop the ones below ``min_size``.

    A paper keeps every surviving set it belongs to; a paper whose sets
    were all dropped is excluded and listed in the report. Sets come back
    sorted by key so the result is deterministic.
    """
    if min_size < 1:
        raise ValueError(f"min_size must be >= 1, got {min_size}")
    groups: dict[tuple[str, str], list[str]] = defaultdict(list)
    for paper in corpus.papers:
        for cat in paper.subject_categories:
            groups[(cat, paper.doc_type)].append(paper.paper_id)

    kept, dropped = [], []
    for key in sorted(groups):
        members = groups[key]
        if len(members) >= min_size:
            kept.append(ReferenceSet(key, tuple(members)))
        else:
            dropped.append((key, len(members)))

    dropped_keys = {key for key, _ in dropped}
    dropped_papers = []
    for paper in corpus.papers:
        keys = [(cat, paper.doc_type) for cat in paper.subject_categories]
        if all(k in dropped_keys for k in keys):
            sizes = ", ".join(f"{k[0]}/{k[1]}={len(groups[k])}" for k in keys)
            dropped_papers.append(
                (paper.paper_id, f"every reference set below min_size {min_size} ({sizes})")
            )
    return kept, ExclusionReport(tuple(dropped), tuple(dropped_papers))


def member_rows(refset: ReferenceSet, corpus: Corpus) -> np.ndarray:
    index = corpus.index
    return np.fromiter((index[pid] for pid in refset.member_ids), dtype=np.int64, count=refset.size)


def score_rows(rows: np.ndarray, corpus: Corpus, spec: ApproachSpec, year: int) -> np.ndarray:
    """Scores (or CWTS probabilities) for the papers at ``rows``, at ``year``."""
    check_year(year, corpus.horizon)
    counts = corpus.cumulative[rows, year - 1]
    if spec.approach is Approach.CWTS:
        return cwts_probabilities(counts, spec.x)
    keys = corpus.journal_metrics[rows] if spec.approach is Approach.SCIMAGO else None
    return ranking.score(counts, spec, keys)


def score_paper_set(refset: ReferenceSet, corpus: Corpus, spec: ApproachSpec, year: int) -> dict[str, float]:
    values = score_rows(member_rows(refset, corpus), corpus, spec, year)
    return dict(zip(refset.member_ids, values.tolist()))


def aggregate(per_set_scores: Sequence[float], approach) -> float:
    """Combine one paper's scores from several reference sets.

    InCites takes the best score; every other approach, CWTS probabilities
    included, takes the mean.
    """
    if len(per_set_scores) == 0:
        raise ValueError("cannot aggregate an empty score list")
    if Approach(approach) in _BEST_OF:
        return float(max(per_set_scores))
    return float(np.mean(per_set_scores))


def uses_best_of(approach) -> bool:
    return Approach(approach) in _BEST_OF
