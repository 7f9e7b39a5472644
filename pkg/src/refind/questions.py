"""The question-and-answer wizard: catalog, filtering, session bookkeeping.

Questions are generated from corpus statistics (one binary split per numeric
attribute, thresholded at the corpus mean or median; one categorical/boolean
question per such attribute) in a fixed order: OS metadata, then extended
metadata, then experience attributes. Answers filter the candidate set hard;
a skip is a no-op. Session bookkeeping yields the wizard-behavior metrics
(average answer time, skip fraction, precise-answer fraction) that feed the
target-familiarity model.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from datetime import datetime, timezone
from typing import Mapping, Optional, Sequence

from . import corpus as corpus_mod
from .corpus import CorpusStats
from .errors import (
    EmptySessionError,
    InvalidAnswerError,
    UnknownAttributeError,
    UnknownQuestionError,
)

BINARY_SPLIT = "binary_split"
CATEGORICAL = "categorical"
BOOLEAN = "boolean"
PRECISE_NUMERIC = "precise_numeric_allowed"

OPTION_A = "option_a"
OPTION_B = "option_b"
SKIP = "SKIP"

DEFAULT_REL_TOL = 0.25

_TIMESTAMP_ATTRS = ("created_at", "modified_at", "last_accessed_at")

_PROMPTS = {
    "file_size": "How large is the file?",
    "file_type": "What is the file type?",
    "created_at": "When was the document created?",
    "modified_at": "When was it last modified?",
    "last_accessed_at": "When did you last open it?",
    "pages": "How many pages does the document have?",
    "author_count": "How many authors does it have?",
    "image_count": "How many images does it contain?",
    "table_count": "How many tables does it contain?",
    "difficulty_level": "How difficult is it to understand, on a 1-5 scale?",
    "image_color": "Are its images monochrome or colorized?",
    "content_category": "What kind of content is it?",
    "language": "What language is it written in?",
    "has_bibliography": "Does it contain a bibliography?",
    "coverage": "How much of it have you read?",
    "printed": "Have you printed it before?",
    "refound_before": "Have you retrieved it before?",
    "unusual_time_access": "Did you ever access it at an unusual time?",
    "unusual_location_access": "Did you ever access it from an unusual place?",
}

_UNITS = {
    "file_size": "bytes",
    "pages": "pages",
    "author_count": "authors",
    "image_count": "images",
    "table_count": "tables",
    "difficulty_level": "difficulty",
}

# Catalog order: metadata, then extended metadata, then experience.
_CATALOG_ORDER = (
    ("file_size", BINARY_SPLIT),
    ("file_type", CATEGORICAL),
    ("created_at", BINARY_SPLIT),
    ("modified_at", BINARY_SPLIT),
    ("last_accessed_at", BINARY_SPLIT),
    ("pages", BINARY_SPLIT),
    ("author_count", BINARY_SPLIT),
    ("image_count", BINARY_SPLIT),
    ("table_count", BINARY_SPLIT),
    ("difficulty_level", BINARY_SPLIT),
    ("image_color", CATEGORICAL),
    ("content_category", CATEGORICAL),
    ("language", CATEGORICAL),
    ("has_bibliography", BOOLEAN),
    ("coverage", BINARY_SPLIT),
    ("printed", BOOLEAN),
    ("refound_before", BOOLEAN),
    ("unusual_time_access", BOOLEAN),
    ("unusual_location_access", BOOLEAN),
)


@dataclass(frozen=True)
class Question:
    """One wizard question over a document or experience attribute."""

    question_id: str
    attribute: str
    prompt: str
    kind: str
    split_threshold: Optional[float] = None
    option_a: Optional[str] = None
    option_b: Optional[str] = None
    options: tuple = ()

    @property
    def allows_precise(self) -> bool:
        return self.kind in (BINARY_SPLIT, PRECISE_NUMERIC)


@dataclass(frozen=True)
class Answer:
    """One user reaction to an asked question (including skips)."""

    question_id: str
    value: object
    elapsed_s: float
    is_precise: bool = False

    def __post_init__(self):
        numeric = isinstance(self.value, (int, float)) and not isinstance(self.value, bool)
        if self.is_precise != numeric:
            raise InvalidAnswerError("is_precise must hold exactly for numeric answer values")
        if self.elapsed_s < 0:
            raise InvalidAnswerError("elapsed_s must be non-negative")


def make_answer(question_id: str, value, elapsed_s: float) -> Answer:
    """Build an Answer, deriving is_precise from the value type."""
    numeric = isinstance(value, (int, float)) and not isinstance(value, bool)
    return Answer(question_id=question_id, value=value, elapsed_s=elapsed_s, is_precise=numeric)


@dataclass(frozen=True)
class SessionState:
    """Wizard progress. Immutable: every operation returns a new state."""

    session_id: str
    candidate_ids: tuple[str, ...]
    answers: tuple[Answer, ...] = ()
    asked: tuple[str, ...] = ()


@dataclass(frozen=True)
class SessionMetrics:
    """Wizard-behavior metrics of one session.

    T_a: mean seconds per resolved question; P_s: skipped fraction;
    P_e: precise-answer fraction. P_s + P_e <= 1.
    """

    T_a: float
    P_s: float
    P_e: float

    def as_vector(self) -> tuple[float, float, float]:
        return (self.T_a, self.P_s, self.P_e)


def new_session(session_id: str, candidate_ids: Sequence[str]) -> SessionState:
    return SessionState(session_id=session_id, candidate_ids=tuple(candidate_ids))


def mark_asked(session: SessionState, question_id: str) -> SessionState:
    return replace(session, asked=session.asked + (question_id,))


def _fmt_number(v: float) -> str:
    if float(v).is_integer():
        return str(int(v))
    return f"{v:.2f}".rstrip("0").rstrip(".")


def _split_labels(attribute: str, threshold: float) -> tuple[str, str]:
    if attribute in _TIMESTAMP_ATTRS:
        day = datetime.fromtimestamp(threshold, tz=timezone.utc).date().isoformat()
        return (f"After {day}", f"On or before {day}")
    if attribute == "coverage":
        pct = _fmt_number(threshold * 100)
        return (f"More than {pct}% of pages", f"Less than or equal to {pct}% of pages")
    unit = _UNITS.get(attribute, "")
    v = _fmt_number(threshold)
    suffix = f" {unit}" if unit else ""
    return (f"More than {v}{suffix}", f"Less than or equal to {v}{suffix}")


def build_catalog(stats: CorpusStats, policy: str = "mean") -> tuple[Question, ...]:
    """Generate the fixed-order question list from corpus statistics.

    policy selects the binary-split threshold: the attribute's corpus mean
    (the default) or its median. Attributes with min == max yield no split
    question; a median that does not fall strictly inside (min, max) falls
    back to the mean, which always does for non-constant data.
    """
    if policy not in ("mean", "median"):
        raise ValueError(f"policy must be 'mean' or 'median', got {policy!r}")

    questions: list[Question] = []
    for attribute, kind in _CATALOG_ORDER:
        prompt = _PROMPTS[attribute]
        qid = f"q_{attribute}"
        if kind == BINARY_SPLIT:
            st = stats.numeric.get(attribute)
            if st is None or st.min == st.max:
                continue
            threshold = st.mean if policy == "mean" else st.median
            if not (st.min < threshold < st.max):
                threshold = st.mean
            label_a, label_b = _split_labels(attribute, threshold)
            questions.append(Question(
                question_id=qid, attribute=attribute, prompt=prompt, kind=kind,
                split_threshold=float(threshold), option_a=label_a, option_b=label_b,
            ))
        elif kind == CATEGORICAL:
            hist = stats.categorical.get(attribute)
            if hist is None:
                continue
            options = tuple(sorted(hist, key=lambda tok: (-hist[tok], str(tok))))
            questions.append(Question(
                question_id=qid, attribute=attribute, prompt=prompt, kind=kind,
                options=options,
            ))
        else:
            if attribute in corpus_mod.BOOLEAN_ATTRIBUTES or attribute in stats.categorical:
                questions.append(Question(
                    question_id=qid, attribute=attribute, prompt=prompt, kind=kind,
                    options=(True, False),
                ))
    return tuple(questions)


def catalog_index(catalog: Sequence[Question]) -> dict[str, Question]:
    return {q.question_id: q for q in catalog}


def build_attribute_view(records, summaries=None) -> dict[str, dict]:
    """doc_id -> flat attribute dict merging record and experience fields."""
    by_id: dict[str, dict] = {}
    for rec in records:
        attrs = {
            name: getattr(rec, name)
            for name in (corpus_mod.NUMERIC_ATTRIBUTES
                         + corpus_mod.CATEGORICAL_ATTRIBUTES
                         + corpus_mod.BOOLEAN_ATTRIBUTES)
        }
        by_id[rec.doc_id] = attrs
    if summaries is not None:
        for summary in (summaries.values() if isinstance(summaries, Mapping) else summaries):
            attrs = by_id.get(summary.doc_id)
            if attrs is None:
                continue
            attrs["coverage"] = summary.coverage
            for name in ("printed", "refound_before", "unusual_time_access",
                         "unusual_location_access"):
                attrs[name] = getattr(summary, name)
    return by_id


def _matches(question: Question, value, attr_value, rel_tol: float) -> bool:
    if question.kind in (BINARY_SPLIT, PRECISE_NUMERIC):
        if isinstance(value, (int, float)) and not isinstance(value, bool):
            # Precise recollection: relative tolerance band around the answer.
            v = float(value)
            a = float(attr_value)
            return abs(a - v) <= rel_tol * max(a, v)
        if value == OPTION_A:
            return attr_value > question.split_threshold
        if value == OPTION_B:
            return attr_value <= question.split_threshold
        raise InvalidAnswerError(
            f"{question.question_id}: expected option_a/option_b or a number, got {value!r}"
        )
    if question.kind == BOOLEAN:
        if not isinstance(value, bool):
            raise InvalidAnswerError(f"{question.question_id}: expected a boolean, got {value!r}")
        return attr_value == value
    if question.kind == CATEGORICAL:
        if not isinstance(value, str):
            raise InvalidAnswerError(f"{question.question_id}: expected a token, got {value!r}")
        return attr_value == value
    raise InvalidAnswerError(f"{question.question_id}: unsupported question kind {question.kind}")


def apply_answer(
    session: SessionState,
    answer: Answer,
    catalog: Sequence[Question],
    attrs: Mapping[str, Mapping],
    rel_tol: float = DEFAULT_REL_TOL,
) -> SessionState:
    """Record an answer and hard-filter the candidate set accordingly.

    SKIP leaves candidates untouched. Binary answers keep the chosen side of
    the threshold (ties belong to the less-than-or-equal side); categorical
    and boolean answers keep exact matches; a precise numeric answer v keeps
    documents with |attr - v| <= rel_tol * max(attr, v).
    """
    qmap = catalog_index(catalog)
    question = qmap.get(answer.question_id)
    if question is None:
        raise UnknownQuestionError(f"unknown question {answer.question_id!r}")
    if answer.question_id not in session.asked:
        raise UnknownQuestionError(f"question {answer.question_id!r} was not asked in this session")

    if answer.value == SKIP:
        survivors = session.candidate_ids
    else:
        survivors = []
        for cid in session.candidate_ids:
            doc_attrs = attrs[cid]
            if question.attribute not in doc_attrs:
                raise UnknownAttributeError(
                    f"document {cid!r} has no attribute {question.attribute!r}"
                )
            if _matches(question, answer.value, doc_attrs[question.attribute], rel_tol):
                survivors.append(cid)
        survivors = tuple(survivors)

    return replace(session, candidate_ids=tuple(survivors), answers=session.answers + (answer,))


def session_metrics(session: SessionState) -> SessionMetrics:
    """Reduce a session to its wizard-behavior metrics.

    Raises EmptySessionError when nothing was ever asked. A session with
    asked-but-unresolved questions only yields neutral zeros (results may be
    requested at any time).
    """
    if not session.asked:
        raise EmptySessionError("no question was asked in this session")
    answers = session.answers
    if not answers:
        return SessionMetrics(T_a=0.0, P_s=0.0, P_e=0.0)
    n = len(answers)
    skipped = sum(1 for a in answers if a.value == SKIP)
    precise = sum(1 for a in answers if a.is_precise)
    return SessionMetrics(
        T_a=sum(a.elapsed_s for a in answers) / n,
        P_s=skipped / n,
        P_e=precise / n,
    )


def session_transcript(session: SessionState) -> dict:
    """JSON-ready export of a session (the training-set construction input)."""
    transcript = {
        "session_id": session.session_id,
        "asked": list(session.asked),
        "answers": [
            {
                "question_id": a.question_id,
                "value": a.value,
                "elapsed_s": a.elapsed_s,
                "is_precise": a.is_precise,
            }
            for a in session.answers
        ],
        "candidate_ids": list(session.candidate_ids),
    }
    if session.asked:
        transcript["metrics"] = dict(zip(("T_a", "P_s", "P_e"),
                                         session_metrics(session).as_vector()))
    return transcript
