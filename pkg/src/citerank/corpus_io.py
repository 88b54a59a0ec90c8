"""Reading and writing corpora as CSV or JSONL."""

from __future__ import annotations

import csv
import io
import json
import os
import re
import tempfile
from pathlib import Path

from .model import Corpus, CorpusValidationError, PaperRecord, validate_record

BASE_COLUMNS = ("paper_id", "doc_type", "subject_categories", "journal_metric")
_YEAR_COLUMN = re.compile(r"^c(\d+)$")


class CorpusFormatError(ValueError):
    """Input file could not be parsed. ``line`` is 1-based, header included."""

    def __init__(self, message: str, line: int | None = None):
        super().__init__(f"line {line}: {message}" if line is not None else message)
        self.line = line


def _split_categories(raw) -> tuple[str, ...]:
    if isinstance(raw, (list, tuple)):
        return tuple(str(c).strip() for c in raw if str(c).strip())
    return tuple(c.strip() for c in str(raw or "").split(";") if c.strip())


def _parse_metric(raw):
    if raw is None or raw == "":
        return None
    return float(raw)


def _parse_count(raw, column: str) -> int:
    if isinstance(raw, bool):
        raise ValueError(f"{column}: not an integer: {raw!r}")
    if isinstance(raw, int):
        return raw
    text = str(raw).strip().replace("−", "-")
    try:
        return int(text)
    except ValueError:
        value = float(text)
        if not value.is_integer():
            raise ValueError(f"{column}: not an integer: {raw!r}") from None
        return int(value)


def _year_columns(names) -> list[str]:
    cols = sorted((int(m.group(1)), name) for name in names if (m := _YEAR_COLUMN.match(name)))
    years = [y for y, _ in cols]
    if years != list(range(1, len(years) + 1)):
        raise CorpusFormatError(f"year columns must be c1..cT without gaps, got {[n for _, n in cols]}", 1)
    return [name for _, name in cols]


def _record_from_mapping(row: dict, year_cols: list[str]) -> PaperRecord:
    if "yearly_citations" in row:
        yearly = [_parse_count(v, "yearly_citations") for v in row["yearly_citations"]]
    else:
        yearly = [_parse_count(row[c], c) for c in year_cols]
    return PaperRecord(
        paper_id=str(row["paper_id"]).strip(),
        doc_type=str(row["doc_type"]).strip(),
        subject_categories=_split_categories(row.get("subject_categories")),
        yearly_citations=tuple(yearly),
        journal_metric=_parse_metric(row.get("journal_metric")),
    )


def _collect(rows, horizon: int | None) -> Corpus:
    """rows yields (line number, PaperRecord); validates each with its line."""
    papers, seen = [], set()
    for line, rec in rows:
        if horizon is None:
            horizon = rec.horizon
        if rec.paper_id in seen:
            raise CorpusFormatError(f"duplicate paper_id {rec.paper_id!r}", line)
        seen.add(rec.paper_id)
        try:
            validate_record(rec, horizon)
        except CorpusValidationError as exc:
            raise CorpusFormatError(str(exc), line) from exc
        papers.append(rec)
    if not papers:
        raise CorpusFormatError("no paper records found")
    return Corpus(tuple(papers), horizon)


def _read_csv(path: Path, horizon: int | None) -> Corpus:
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            raise CorpusFormatError("missing header row", 1)
        missing = [c for c in ("paper_id", "doc_type", "subject_categories") if c not in reader.fieldnames]
        if missing:
            raise CorpusFormatError(f"header lacks columns {missing}", 1)
        year_cols = _year_columns(reader.fieldnames)
        if not year_cols:
            raise CorpusFormatError("header has no c1..cT citation columns", 1)
        if horizon is not None and horizon != len(year_cols):
            raise CorpusFormatError(f"file has {len(year_cols)} year columns, horizon is {horizon}", 1)

        def rows():
            for row in reader:
                line = reader.line_num
                if None in row or any(v is None for v in row.values()):
                    raise CorpusFormatError("wrong number of fields", line)
                try:
                    yield line, _record_from_mapping(row, year_cols)
                except ValueError as exc:
                    raise CorpusFormatError(str(exc), line) from exc

        return _collect(rows(), len(year_cols))


def _read_jsonl(path: Path, horizon: int | None) -> Corpus:
    def rows():
        with open(path, encoding="utf-8") as fh:
            for line, text in enumerate(fh, start=1):
                if not text.strip():
                    continue
                try:
                    obj = json.loads(text)
                    if not isinstance(obj, dict):
                        raise ValueError("expected a JSON object")
                    year_cols = [] if "yearly_citations" in obj else _year_columns(obj.keys())
                    yield line, _record_from_mapping(obj, year_cols)
                except (ValueError, KeyError, CorpusFormatError) as exc:
                    raise CorpusFormatError(str(exc), line) from exc

    return _collect(rows(), horizon)


def load_corpus(path, fmt: str | None = None, horizon: int | None = None) -> Corpus:
    """Load and validate a corpus file.

    ``fmt`` is ``csv`` or ``jsonl``; when omitted it is taken from the file
    extension. CSV needs a header with paper_id, doc_type,
    subject_categories (``;``-separated), journal_metric (may be empty)
    and c1..cT. JSONL objects use the same names, or a ``yearly_citations``
    list instead of the c-columns.
    """
    path = Path(path)
    fmt = (fmt or path.suffix.lstrip(".")).lower()
    if fmt == "csv":
        return _read_csv(path, horizon)
    if fmt in ("jsonl", "ndjson"):
        return _read_jsonl(path, horizon)
    raise ValueError(f"unknown corpus format {fmt!r}")


def atomic_write_text(path, text: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def corpus_to_csv(corpus: Corpus) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(list(BASE_COLUMNS) + [f"c{t}" for t in range(1, corpus.horizon + 1)])
    for p in corpus.papers:
        metric = "" if p.journal_metric is None else repr(float(p.journal_metric))
        writer.writerow([p.paper_id, p.doc_type, ";".join(p.subject_categories), metric, *p.yearly_citations])
    return buf.getvalue()


def corpus_to_jsonl(corpus: Corpus) -> str:
    lines = []
    for p in corpus.papers:
        lines.append(json.dumps({
            "paper_id": p.paper_id,
            "doc_type": p.doc_type,
            "subject_categories": list(p.subject_categories),
            "journal_metric": p.journal_metric,
            "yearly_citations": list(p.yearly_citations),
        }))
    return "\n".join(lines) + "\n"


def write_corpus(corpus: Corpus, path, fmt: str | None = None) -> None:
    path = Path(path)
    fmt = (fmt or path.suffix.lstrip(".")).lower()
    if fmt == "csv":
        atomic_write_text(path, corpus_to_csv(corpus))
    elif fmt in ("jsonl", "ndjson"):
        atomic_write_text(path, corpus_to_jsonl(corpus))
    else:
        raise ValueError(f"unknown corpus format {fmt!r}")
