"""Synthetic citation corpora: heavy-tailed counts with a rise-and-decay aging curve."""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from .model import Corpus, PaperRecord


@dataclass(frozen=True)
class SyntheticParams:
    n_fields: int = 3
    papers_per_field: int = 200
    horizon: int = 10
    seed: int = 0
    # share of papers that are never cited
    uncited_share: float = 0.3
    # share of papers carrying a second subject category
    multi_category_share: float = 0.0
    # log-scale spread of latent impact; larger is more skewed
    skew: float = 1.2
    # median expected citations over the whole horizon for a cited paper
    median_total: float = 8.0
    # year in which the typical paper's annual citations peak
    peak_year: float = 3.0
    # gamma shape of the per-year rate noise; smaller means noisier years
    dispersion: float = 2.0
    doc_types: tuple[str, ...] = ("article",)

    def __post_init__(self):
        if self.n_fields < 1 or self.papers_per_field < 1 or self.horizon < 1:
            raise ValueError("n_fields, papers_per_field and horizon must be positive")
        if not 0.0 <= self.uncited_share <= 1.0:
            raise ValueError("uncited_share must lie in [0, 1]")
        if not 0.0 <= self.multi_category_share <= 1.0:
            raise ValueError("multi_category_share must lie in [0, 1]")
        if self.multi_category_share > 0 and self.n_fields < 2:
            raise ValueError("a second category needs at least two fields")
        if self.skew < 0 or self.median_total <= 0 or self.peak_year <= 0 or self.dispersion <= 0:
            raise ValueError("skew >= 0 and median_total, peak_year, dispersion > 0 required")
        if not self.doc_types:
            raise ValueError("doc_types must be non-empty")

    def to_dict(self) -> dict:
        return asdict(self)


def _aging_weights(horizon: int, peak: np.ndarray) -> np.ndarray:
    """Per-paper share of the horizon's citations falling in each year.

    Gamma-shaped curve t * exp(-t / peak), which peaks at ``t = peak``.
    """
    t = np.arange(1, horizon + 1, dtype=float)
    w = t[None, :] * np.exp(-t[None, :] / peak[:, None])
    return w / w.sum(axis=1, keepdims=True)


def generate_synthetic(params: SyntheticParams | None = None, **overrides) -> Corpus:
    """Deterministic synthetic corpus for a fixed ``params.seed``.

    Field ``F<k>`` holds ``papers_per_field`` papers with that primary
    category. Latent impact is log-normal with a per-field offset; a paper's
    journal metric is correlated with its latent impact. Annual counts are
    gamma-Poisson draws around the aging curve.
    """
    if params is None:
        params = SyntheticParams(**overrides)
    elif overrides:
        params = SyntheticParams(**{**params.to_dict(), **overrides})
    rng = np.random.default_rng(params.seed)
    n = params.n_fields * params.papers_per_field
    T = params.horizon

    field = np.repeat(np.arange(params.n_fields), params.papers_per_field)
    field_offset = rng.normal(0.0, 0.3, size=params.n_fields)
    latent = np.log(params.median_total) + field_offset[field] + params.skew * rng.standard_normal(n)
    uncited = rng.random(n) < params.uncited_share
    total = np.where(uncited, 0.0, np.exp(latent))

    peak = params.peak_year * np.exp(0.35 * rng.standard_normal(n))
    rate = total[:, None] * _aging_weights(T, peak)
    noise = rng.gamma(params.dispersion, 1.0 / params.dispersion, size=(n, T))
    annual = rng.poisson(rate * noise)

    journal = np.exp(0.5 * latent + 0.5 * rng.standard_normal(n))
    journal = np.round(journal, 4)

    second = np.full(n, -1)
    if params.multi_category_share > 0:
        has_second = rng.random(n) < params.multi_category_share
        shift = rng.integers(1, params.n_fields, size=n)
        second = np.where(has_second, (field + shift) % params.n_fields, -1)

    doc_idx = rng.integers(0, len(params.doc_types), size=n)
    width = len(str(params.n_fields - 1))
    papers = []
    for k in range(n):
        cats = [f"F{field[k]:0{width}d}"]
        if second[k] >= 0:
            cats.append(f"F{second[k]:0{width}d}")
        papers.append(
            PaperRecord(
                paper_id=f"P{k:07d}",
                doc_type=params.doc_types[doc_idx[k]],
                subject_categories=tuple(cats),
                yearly_citations=tuple(annual[k].tolist()),
                journal_metric=float(journal[k]),
            )
        )
    return Corpus(tuple(papers), T)
