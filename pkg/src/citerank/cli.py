"""Command line front end: ``citerank {rank,compare,timeline,units,generate}``.

Every table is written as TSV whose first line is a ``#`` comment naming
the subcommand, approach, threshold and a hash of the resolved run
configuration. A ``config.json`` echo and an ``exclusions.tsv`` sidecar are
written next to the tables.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import math
import sys
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from .corpus_io import CorpusFormatError, atomic_write_text, load_corpus, write_corpus
from .longitudinal import (
    class_count_series,
    correlation_series,
    cwts_threshold_count_series,
    persistence_series,
    sample_units,
    scores_at_year,
    scores_by_year,
)
from .model import Approach, ApproachSpec, BoundaryRule, Corpus, CorpusValidationError, TieRule
from .ranking import score as score_vector
from .refsets import ReferenceSet, build_reference_sets, member_rows
from .synthetic import SyntheticParams, generate_synthetic

log = logging.getLogger("citerank")

SUBCOMMANDS = ("rank", "compare", "timeline", "units", "generate")
DEFAULT_APPROACHES = ("hazen", "incites", "scimago", "p100", "cwts")
DEFAULT_THRESHOLDS = (50.0, 10.0, 5.0, 1.0)
DEFAULT_UNIT_SIZES = (50, 100, 500, 1000)


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    input: str | None = None
    format: str | None = None
    generate: str | None = None  # "FIELDSxPAPERS"
    uncited_share: float = 0.3
    multi_share: float = 0.0
    approaches: tuple[str, ...] = DEFAULT_APPROACHES
    min_size: int = 100
    thresholds: tuple[float, ...] = DEFAULT_THRESHOLDS
    horizon: int | None = None
    unit_sizes: tuple[int, ...] = DEFAULT_UNIT_SIZES
    samples: int = 1000
    seed: int | None = None
    out: str = "out"
    boundary: str = BoundaryRule.INCLUSIVE.value
    ties: str = TieRule.AVERAGE.value
    year: int | None = None
    set: str | None = None

    def validate(self) -> None:
        if self.command not in SUBCOMMANDS:
            raise ConfigError(f"unknown subcommand {self.command!r}")
        if (self.input is None) == (self.generate is None):
            raise ConfigError("give exactly one of --input or --generate")
        if self.generate is not None and self.seed is None:
            raise ConfigError("--generate needs --seed")
        if self.command == "units" and self.seed is None:
            raise ConfigError("units sampling needs --seed")
        for a in self.approaches:
            try:
                Approach(a)
            except ValueError:
                raise ConfigError(f"unknown approach {a!r}") from None
        for x in self.thresholds:
            if not 0 < x <= 100:
                raise ConfigError(f"threshold {x} outside (0, 100]")
        if self.min_size < 1:
            raise ConfigError("--min-size must be >= 1")
        if self.horizon is not None and self.horizon < 1:
            raise ConfigError("--horizon must be >= 1")
        if self.samples < 2 or any(s < 1 for s in self.unit_sizes):
            raise ConfigError("--samples must be >= 2 and unit sizes positive")
        BoundaryRule(self.boundary)
        TieRule(self.ties)

    def digest(self) -> str:
        payload = {k: v for k, v in asdict(self).items() if k != "out"}
        text = json.dumps(payload, sort_keys=True, default=list)
        return hashlib.sha256(text.encode()).hexdigest()[:12]


def _fmt(v: float) -> str:
    if v is None or (isinstance(v, float) and math.isnan(v)):
        return "NA"
    return f"{v:.4f}"


def _table(header: str, columns: list[str], rows) -> str:
    lines = [header, "\t".join(columns)]
    lines.extend("\t".join(r) for r in rows)
    return "\n".join(lines) + "\n"


def _header(cfg: RunConfig, approach: str, threshold: str, **extra) -> str:
    parts = [f"subcommand={cfg.command}", f"approach={approach}", f"threshold={threshold}"]
    parts += [f"{k}={v}" for k, v in extra.items()]
    parts.append(f"config={cfg.digest()}")
    return "# " + " ".join(parts)


def _specs(cfg: RunConfig, score_only: bool = False) -> list[ApproachSpec]:
    """One spec per score approach, one per threshold for CWTS."""
    specs = []
    for a in cfg.approaches:
        a = Approach(a)
        if a is Approach.CWTS:
            if not score_only:
                specs += [ApproachSpec(a, cfg.ties, None, cfg.boundary, x) for x in cfg.thresholds]
        else:
            specs.append(ApproachSpec(a, cfg.ties, None, cfg.boundary))
    return specs


def _load(cfg: RunConfig) -> Corpus:
    if cfg.generate is not None:
        try:
            fields, papers = (int(v) for v in cfg.generate.lower().split("x"))
        except ValueError:
            raise ConfigError(f"--generate expects FIELDSxPAPERS, got {cfg.generate!r}") from None
        params = SyntheticParams(
            n_fields=fields,
            papers_per_field=papers,
            horizon=cfg.horizon or 10,
            seed=cfg.seed,
            uncited_share=cfg.uncited_share,
            multi_category_share=cfg.multi_share,
        )
        return generate_synthetic(params)
    return load_corpus(cfg.input, cfg.format, cfg.horizon)


def _write_exclusions(cfg: RunConfig, out: Path, report) -> None:
    rows = [["set", f"{k[0]}/{k[1]}", str(size)] for k, size in report.dropped_sets]
    rows += [["paper", pid, reason] for pid, reason in report.dropped_papers]
    text = _table(_header(cfg, "NA", "NA", report="exclusions"), ["kind", "id", "detail"], rows)
    atomic_write_text(out / "exclusions.tsv", text)


def _cmd_rank(cfg, corpus, sets, out) -> list[Path]:
    year = cfg.year or corpus.horizon
    written = []
    cumulative = corpus.cumulative[:, year - 1]
    n_sets = {}
    for s in sets:
        for pid in s.member_ids:
            n_sets[pid] = n_sets.get(pid, 0) + 1
    for spec in _specs(cfg):
        ids, values = scores_at_year(corpus, sets, spec, year)
        threshold = f"{spec.x:g}" if spec.approach is Approach.CWTS else "NA"
        rows = [
            [pid, str(n_sets[pid]), str(int(cumulative[corpus.index[pid]])), _fmt(v)]
            for pid, v in zip(ids, values.tolist())
        ]
        path = out / f"rank_{spec.label}.tsv"
        col = "mean_p" if spec.approach is Approach.CWTS else "score"
        atomic_write_text(
            path,
            _table(_header(cfg, spec.approach.value, threshold, year=year), ["paper_id", "n_sets", "citations", col], rows),
        )
        written.append(path)
    return written


def _pick_set(cfg: RunConfig, sets: list[ReferenceSet]) -> ReferenceSet:
    if cfg.set is not None:
        for s in sets:
            if s.label == cfg.set:
                return s
        raise ConfigError(f"no surviving reference set {cfg.set!r}")
    return max(sets, key=lambda s: s.size)  # first largest in key order


def _cmd_compare(cfg, corpus, sets, out) -> list[Path]:
    year = cfg.year or corpus.horizon
    refset = _pick_set(cfg, sets)
    rows_idx = member_rows(refset, corpus)
    cites = corpus.cumulative[rows_idx, year - 1]
    keys = corpus.journal_metrics[rows_idx]
    specs = _specs(cfg, score_only=True)
    columns = {spec.label: score_vector(cites, spec, keys) for spec in specs}
    # most cited first, like a rank plot; stable on corpus order
    order = np.argsort(-cites, kind="stable")
    rows = []
    for rank, k in enumerate(order, start=1):
        rows.append([str(rank), refset.member_ids[k], str(int(cites[k]))] + [_fmt(columns[c][k]) for c in columns])
    header = _header(cfg, ",".join(columns), "NA", set=refset.label, year=year)
    path = out / "compare.tsv"
    atomic_write_text(path, _table(header, ["paper_number", "paper_id", "cites", *columns], rows))
    return [path]


def _cmd_timeline(cfg, corpus, sets, out) -> list[Path]:
    written = []
    for spec in _specs(cfg):
        matrix = scores_by_year(corpus, sets, spec)
        xs = [spec.x] if spec.approach is Approach.CWTS else cfg.thresholds
        for x in xs:
            counts = class_count_series(matrix, x)
            p_counts, p_percents = persistence_series(matrix, x)
            columns = ["year", "count", "persist_count", "persist_percent"]
            series = [counts, p_counts, p_percents]
            if spec.approach is Approach.CWTS:
                columns = ["year", "count_sum_p", "count_p_ge_0.5", "persist_count", "persist_percent"]
                series = [counts, cwts_threshold_count_series(matrix, x), p_counts, p_percents]
            rows = [[str(t)] + [_fmt(s[t - 1]) for s in series] for t in matrix.years]
            path = out / f"timeline_{spec.approach.value}_top{x:g}.tsv"
            atomic_write_text(path, _table(_header(cfg, spec.approach.value, f"{x:g}", papers=len(matrix)), columns, rows))
            written.append(path)
    return written


def _cmd_units(cfg, corpus, sets, out) -> list[Path]:
    written = []
    matrices = [scores_by_year(corpus, sets, spec) for spec in _specs(cfg, score_only=True)]
    if not matrices:
        raise ConfigError("units needs at least one score approach (CWTS is excluded)")
    population = matrices[0].paper_ids
    units_by_size = {}
    for k, size in enumerate(cfg.unit_sizes):
        # each size gets its own stream so adding a size leaves the others unchanged
        units_by_size[size] = sample_units(population, size, cfg.samples, seed=[cfg.seed, k])
    for matrix in matrices:
        cols = {size: correlation_series(units, matrix, skip_degenerate=True) for size, units in units_by_size.items()}
        rows = [[str(t)] + [_fmt(cols[s][t - 1]) for s in cfg.unit_sizes] for t in matrix.years]
        path = out / f"units_{matrix.spec.label}.tsv"
        header = _header(cfg, matrix.approach.value, "NA", samples=cfg.samples)
        atomic_write_text(path, _table(header, ["year"] + [f"r_size{s}" for s in cfg.unit_sizes], rows))
        written.append(path)
    return written


def run(cfg: RunConfig) -> list[Path]:
    """Execute one subcommand and return the paths it wrote."""
    cfg.validate()
    out = Path(cfg.out)
    corpus = _load(cfg)
    cfg.horizon = corpus.horizon
    if cfg.year is not None and not 1 <= cfg.year <= corpus.horizon:
        raise ConfigError(f"--year {cfg.year} outside 1..{corpus.horizon}")
    echo = {**asdict(cfg), "config_hash": cfg.digest(), "papers": len(corpus)}
    atomic_write_text(out / "config.json", json.dumps(echo, indent=2, sort_keys=True, default=list) + "\n")

    if cfg.command == "generate":
        path = out / "corpus.csv"
        write_corpus(corpus, path)
        return [out / "config.json", path]

    sets, report = build_reference_sets(corpus, cfg.min_size)
    _write_exclusions(cfg, out, report)
    if not sets:
        raise ConfigError(f"no reference set reaches --min-size {cfg.min_size}")
    log.info("%d papers, %d reference sets, %d papers excluded", len(corpus), len(sets), len(report.dropped_papers))
    handler = {"rank": _cmd_rank, "compare": _cmd_compare, "timeline": _cmd_timeline, "units": _cmd_units}[cfg.command]
    return [out / "config.json", out / "exclusions.tsv"] + handler(cfg, corpus, sets, out)


def _csv_list(cast):
    def parse(text: str):
        try:
            return tuple(cast(v) for v in text.split(",") if v.strip())
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad list {text!r}") from None
    return parse


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_argument_group("corpus")
    src.add_argument("--input", help="corpus file (CSV or JSONL)")
    src.add_argument("--format", choices=["csv", "jsonl"], help="input format; default from extension")
    src.add_argument("--generate", metavar="FxN", help="synthetic corpus with F fields of N papers")
    src.add_argument("--uncited-share", type=float, default=0.3, help="synthetic: share of never-cited papers")
    src.add_argument("--multi-share", type=float, default=0.0, help="synthetic: share of papers with two categories")
    src.add_argument("--horizon", type=int, help="years per paper (default: from input, 10 when generating)")
    run_opts = common.add_argument_group("analysis")
    run_opts.add_argument("--approaches", type=_csv_list(str), default=DEFAULT_APPROACHES,
                          help="comma list of p_low,p_inc,hazen,incites,scimago,p100,cwts")
    run_opts.add_argument("--min-size", type=int, default=100)
    run_opts.add_argument("--thresholds", type=_csv_list(float), default=DEFAULT_THRESHOLDS)
    run_opts.add_argument("--unit-sizes", type=_csv_list(int), default=DEFAULT_UNIT_SIZES)
    run_opts.add_argument("--samples", type=int, default=1000)
    run_opts.add_argument("--seed", type=int)
    run_opts.add_argument("--out", default="out")
    run_opts.add_argument("--boundary", choices=[b.value for b in BoundaryRule], default="inclusive")
    run_opts.add_argument("--ties", choices=[t.value for t in TieRule], default="average")
    run_opts.add_argument("--year", type=int, help="rank/compare: evaluation year (default: horizon)")
    run_opts.add_argument("--set", help="compare: reference set as CATEGORY/DOCTYPE (default: largest)")
    run_opts.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="citerank", description="Percentile and citation-rank normalization.")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", required=True)
    sub.add_parser("rank", parents=[common], help="aggregated per-paper scores at one year")
    sub.add_parser("compare", parents=[common], help="all score approaches side by side on one reference set")
    sub.add_parser("timeline", parents=[common], help="top-x%% class counts and persistence per year")
    sub.add_parser("units", parents=[common], help="research-unit correlation with the final year")
    sub.add_parser("generate", parents=[common], help="write a synthetic corpus as CSV")
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command=ns.command,
        input=ns.input,
        format=ns.format,
        generate=ns.generate,
        uncited_share=ns.uncited_share,
        multi_share=ns.multi_share,
        approaches=tuple(a.lower() for a in ns.approaches),
        min_size=ns.min_size,
        thresholds=ns.thresholds,
        horizon=ns.horizon,
        unit_sizes=ns.unit_sizes,
        samples=ns.samples,
        seed=ns.seed,
        out=ns.out,
        boundary=ns.boundary,
        ties=ns.ties,
        year=ns.year,
        set=ns.set,
    )


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if ns.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        written = run(config_from_args(ns))
    except (ConfigError, CorpusFormatError, CorpusValidationError, ValueError, OSError) as exc:
        print(f"citerank: error: {exc}", file=sys.stderr)
        return 1
    for path in written:
        print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
