"""Document records, user profile and corpus-level statistics.

A document is described by its inherent attributes only (what it *is*);
everything derived from user interaction lives in :mod:`refind.events`.
Corpora are exchanged as JSON Lines with a vocabulary header line.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, asdict
from typing import Iterable, Mapping

from .errors import EmptyCorpusError, VocabularyMismatchError

GENDERS = ("male", "female", "unknown")
IMAGE_COLORS = ("monochrome", "colorized", "none")

# Attributes the question catalog and corpus statistics operate on.
# Metadata = supplied by the OS; extended = inherent but extracted.
METADATA_NUMERIC = ("file_size", "created_at", "modified_at", "last_accessed_at")
METADATA_CATEGORICAL = ("file_type",)
EXTENDED_NUMERIC = ("pages", "author_count", "image_count", "table_count", "difficulty_level")
EXTENDED_CATEGORICAL = ("image_color", "content_category", "language")
EXTENDED_BOOLEAN = ("has_bibliography",)

NUMERIC_ATTRIBUTES = METADATA_NUMERIC + EXTENDED_NUMERIC
CATEGORICAL_ATTRIBUTES = METADATA_CATEGORICAL + EXTENDED_CATEGORICAL
BOOLEAN_ATTRIBUTES = EXTENDED_BOOLEAN

_NORM_TOL = 1e-9


@dataclass(frozen=True)
class DocumentRecord:
    """One document's inherent attributes."""

    doc_id: str
    path: str
    file_size: int
    file_type: str
    created_at: int
    modified_at: int
    last_accessed_at: int
    author_count: int
    author_genders: tuple[str, ...]
    pages: int
    image_count: int
    table_count: int
    image_color: str
    content_category: str
    difficulty_level: int
    topic_vector: tuple[float, ...]
    language: str
    has_bibliography: bool

    def to_dict(self) -> dict:
        d = asdict(self)
        d["author_genders"] = list(self.author_genders)
        d["topic_vector"] = list(self.topic_vector)
        return d

    @classmethod
    def from_dict(cls, data: Mapping) -> "DocumentRecord":
        return cls(
            doc_id=data["doc_id"],
            path=data["path"],
            file_size=int(data["file_size"]),
            file_type=data["file_type"],
            created_at=int(data["created_at"]),
            modified_at=int(data["modified_at"]),
            last_accessed_at=int(data["last_accessed_at"]),
            author_count=int(data["author_count"]),
            author_genders=tuple(data["author_genders"]),
            pages=int(data["pages"]),
            image_count=int(data["image_count"]),
            table_count=int(data["table_count"]),
            image_color=data["image_color"],
            content_category=data["content_category"],
            difficulty_level=int(data["difficulty_level"]),
            topic_vector=tuple(float(x) for x in data["topic_vector"]),
            language=data["language"],
            has_bibliography=bool(data["has_bibliography"]),
        )


@dataclass(frozen=True)
class UserProfile:
    """The user's interest vector over the corpus topic vocabulary."""

    interest_vector: tuple[float, ...]

    def to_dict(self) -> dict:
        return {"interest_vector": list(self.interest_vector)}

    @classmethod
    def from_dict(cls, data: Mapping) -> "UserProfile":
        return cls(interest_vector=tuple(float(x) for x in data["interest_vector"]))


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of validate_document: a (possibly empty) list of violations."""

    doc_id: str
    violations: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


@dataclass(frozen=True)
class NumericStats:
    mean: float
    median: float
    min: float
    max: float


@dataclass(frozen=True)
class CorpusStats:
    """Per-attribute summary statistics over one corpus snapshot.

    numeric maps attribute name -> NumericStats; categorical maps attribute
    name -> value histogram (booleans included, keyed by bool).
    """

    numeric: Mapping[str, NumericStats] = field(default_factory=dict)
    categorical: Mapping[str, Mapping] = field(default_factory=dict)


def _norm(vec: Iterable[float]) -> float:
    return math.sqrt(sum(x * x for x in vec))


def _is_zero(vec: Iterable[float]) -> bool:
    return all(x == 0.0 for x in vec)


def validate_document(record: DocumentRecord) -> ValidationReport:
    """Check every admission invariant; report violations, never raise."""
    v: list[str] = []
    if record.pages < 1:
        v.append("pages ≥ 1")
    for name in ("file_size", "author_count", "image_count", "table_count"):
        if getattr(record, name) < 0:
            v.append(f"{name} ≥ 0")
    if record.created_at > record.modified_at:
        v.append("created_at ≤ modified_at")
    norm = _norm(record.topic_vector)
    if not _is_zero(record.topic_vector) and abs(norm - 1.0) > _NORM_TOL:
        v.append("topic_vector norm 1 (or all-zero)")
    if len(record.author_genders) != record.author_count:
        v.append("author_genders length equals author_count")
    if any(g not in GENDERS for g in record.author_genders):
        v.append("author_genders values in {male, female, unknown}")
    if not 1 <= record.difficulty_level <= 5:
        v.append("difficulty_level in 1–5")
    if record.image_color not in IMAGE_COLORS:
        v.append("image_color in {monochrome, colorized, none}")
    return ValidationReport(doc_id=record.doc_id, violations=tuple(v))


def topic_distance(doc: DocumentRecord, profile: UserProfile) -> float:
    """Cosine distance between the document topic and the user interest.

    Returns 1 - cosine, so 0 means identical direction and 2 opposite.
    An all-zero vector on either side carries no information: distance 1.
    """
    a, b = doc.topic_vector, profile.interest_vector
    if len(a) != len(b):
        raise VocabularyMismatchError(
            f"topic vector dimension {len(a)} != profile dimension {len(b)}"
        )
    if _is_zero(a) or _is_zero(b):
        return 1.0
    dot = sum(x * y for x, y in zip(a, b))
    return 1.0 - dot / (_norm(a) * _norm(b))


def _lower_median(values: list[float]) -> float:
    # Lower middle element for even counts: the median doubles as a split
    # threshold and must be an attainable attribute value.
    ordered = sorted(values)
    return ordered[(len(ordered) - 1) // 2]


def compute_corpus_stats(corpus, summaries=None) -> CorpusStats:
    """Summarize every question-relevant attribute of a corpus.

    `summaries` may supply per-document ExperienceSummary objects (any
    iterable); when present, experience attributes (coverage plus the
    experience booleans) are summarized too, so the question catalog can
    cover them.
    """
    corpus = list(corpus)
    if not corpus:
        raise EmptyCorpusError("corpus must contain at least one document")

    numeric: dict[str, NumericStats] = {}
    categorical: dict[str, dict] = {}

    def add_numeric(name: str, values: list[float]) -> None:
        numeric[name] = NumericStats(
            mean=sum(values) / len(values),
            median=_lower_median(values),
            min=min(values),
            max=max(values),
        )

    def add_histogram(name: str, values: list) -> None:
        hist: dict = {}
        for val in values:
            hist[val] = hist.get(val, 0) + 1
        categorical[name] = hist

    for name in NUMERIC_ATTRIBUTES:
        add_numeric(name, [getattr(r, name) for r in corpus])
    for name in CATEGORICAL_ATTRIBUTES + BOOLEAN_ATTRIBUTES:
        add_histogram(name, [getattr(r, name) for r in corpus])

    if summaries is not None:
        summaries = list(summaries)
        if summaries:
            add_numeric("coverage", [s.coverage for s in summaries])
            for name in ("printed", "refound_before", "unusual_time_access",
                         "unusual_location_access"):
                add_histogram(name, [getattr(s, name) for s in summaries])

    return CorpusStats(numeric=numeric, categorical=categorical)


# ---------------------------------------------------------------------------
# JSON Lines corpus files: header line {"vocab": [...]}, one record per line.
# ---------------------------------------------------------------------------

def dumps_corpus(vocab: list[str], records: Iterable[DocumentRecord]) -> str:
    lines = [json.dumps({"vocab": list(vocab)}, separators=(",", ":"))]
    for rec in records:
        lines.append(json.dumps(rec.to_dict(), separators=(",", ":")))
    return "\n".join(lines) + "\n"


def write_corpus(path, vocab: list[str], records: Iterable[DocumentRecord]) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_corpus(vocab, records))


def read_corpus(path) -> tuple[list[str], list[DocumentRecord]]:
    with open(path, "r", encoding="utf-8") as fh:
        lines = [ln for ln in fh.read().splitlines() if ln.strip()]
    if not lines:
        raise EmptyCorpusError(f"{path}: empty corpus file")
    header = json.loads(lines[0])
    if "vocab" not in header:
        raise EmptyCorpusError(f"{path}: first line must be a vocab header")
    vocab = list(header["vocab"])
    records = [DocumentRecord.from_dict(json.loads(ln)) for ln in lines[1:]]
    return vocab, records


def write_profile(path, vocab: list[str], profile: UserProfile) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump({"vocab": list(vocab), "interest_vector": list(profile.interest_vector)}, fh)
        fh.write("\n")


def read_profile(path) -> tuple[list[str], UserProfile]:
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    return list(data["vocab"]), UserProfile.from_dict(data)
