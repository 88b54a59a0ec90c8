"""Percentile and citation-rank normalization of citation impact."""

from .classes import ClassFraction, cwts_fractions, cwts_probabilities, expected_top_count, top_class_members
from .longitudinal import (
    DegenerateCorrelationError,
    ResearchUnit,
    ScoreMatrix,
    class_count_series,
    correlation_series,
    persistence_series,
    sample_units,
    scores_at_year,
    scores_by_year,
    spearman,
)
from .model import (
    Approach,
    ApproachSpec,
    BoundaryRule,
    Corpus,
    CorpusValidationError,
    Direction,
    PaperRecord,
    TieRule,
    cumulative_citations,
    validate_corpus,
)
from .ranking import incites_rank, p100_rank, percentile, rank_ties, scimago_rank
from .refsets import ExclusionReport, ReferenceSet, aggregate, build_reference_sets, score_paper_set
from .synthetic import SyntheticParams, generate_synthetic

__version__ = "0.1.0"

__all__ = [
    "ClassFraction",
    "cwts_fractions",
    "cwts_probabilities",
    "expected_top_count",
    "top_class_members",
    "DegenerateCorrelationError",
    "ResearchUnit",
    "ScoreMatrix",
    "class_count_series",
    "correlation_series",
    "persistence_series",
    "sample_units",
    "scores_at_year",
    "scores_by_year",
    "spearman",
    "Approach",
    "ApproachSpec",
    "BoundaryRule",
    "Corpus",
    "CorpusValidationError",
    "Direction",
    "PaperRecord",
    "TieRule",
    "cumulative_citations",
    "validate_corpus",
    "incites_rank",
    "p100_rank",
    "percentile",
    "rank_ties",
    "scimago_rank",
    "ExclusionReport",
    "ReferenceSet",
    "aggregate",
    "build_reference_sets",
    "score_paper_set",
    "SyntheticParams",
    "generate_synthetic",
]
