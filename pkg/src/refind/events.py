"""Append-only experience log and per-document feature derivation.

The log records what the user *did* with each document; from it we derive
the familiarity features (access frequency R, cumulative processing time C
in minutes, interval since last access I in days, topic distance D) and the
experience attributes the wizard can ask about (printed, coverage, ...).
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence

from .corpus import DocumentRecord, UserProfile, topic_distance
from .errors import EventInvariantError

EVENT_KINDS = ("open", "close", "page_view", "print", "refind", "annotate")

SECONDS_PER_DAY = 86400.0

EXPERIENCE_NUMERIC = ("coverage",)
EXPERIENCE_BOOLEAN = ("printed", "refound_before", "unusual_time_access",
                      "unusual_location_access")


@dataclass(frozen=True)
class ExperienceEvent:
    """One logged interaction with a document.

    page and duration_s are page_view-only; location_tag / time_tag mark an
    access as unusual in that dimension (pre-tagged, never inferred here).
    """

    doc_id: str
    kind: str
    timestamp: int
    page: Optional[int] = None
    duration_s: Optional[float] = None
    location_tag: Optional[str] = None
    time_tag: Optional[str] = None

    def check(self) -> None:
        """Raise EventInvariantError if the event is malformed."""
        if self.kind not in EVENT_KINDS:
            raise EventInvariantError(f"unknown event kind {self.kind!r}")
        if self.timestamp <= 0:
            raise EventInvariantError("timestamp must be > 0")
        if self.kind == "page_view":
            if self.page is None or self.duration_s is None:
                raise EventInvariantError("page_view events need page and duration_s")
            if self.page < 1:
                raise EventInvariantError("page must be >= 1")
            if self.duration_s < 0:
                raise EventInvariantError("duration_s must be >= 0")
        else:
            if self.page is not None or self.duration_s is not None:
                raise EventInvariantError(f"{self.kind} events carry no page/duration_s")

    def to_dict(self) -> dict:
        d: dict = {"doc_id": self.doc_id, "kind": self.kind, "timestamp": self.timestamp}
        if self.page is not None:
            d["page"] = self.page
        if self.duration_s is not None:
            d["duration_s"] = self.duration_s
        if self.location_tag is not None:
            d["location_tag"] = self.location_tag
        if self.time_tag is not None:
            d["time_tag"] = self.time_tag
        return d

    @classmethod
    def from_dict(cls, data) -> "ExperienceEvent":
        return cls(
            doc_id=data["doc_id"],
            kind=data["kind"],
            timestamp=int(data["timestamp"]),
            page=data.get("page"),
            duration_s=data.get("duration_s"),
            location_tag=data.get("location_tag"),
            time_tag=data.get("time_tag"),
        )


class ExperienceLog:
    """Append-only, insertion-ordered event log.

    Single-writer: appends are serialized by a lock. Readers iterate over an
    immutable snapshot, so derivation never observes a half-applied append.
    """

    def __init__(self, events: Iterable[ExperienceEvent] = ()):
        self._lock = threading.Lock()
        self._events: tuple[ExperienceEvent, ...] = ()
        for ev in events:
            self.append(ev)

    def append(self, event: ExperienceEvent) -> "ExperienceLog":
        event.check()
        with self._lock:
            self._events = self._events + (event,)
        return self

    def snapshot(self) -> tuple[ExperienceEvent, ...]:
        return self._events

    def events_for(self, doc_id: str) -> tuple[ExperienceEvent, ...]:
        return tuple(ev for ev in self._events if ev.doc_id == doc_id)

    def __len__(self) -> int:
        return len(self._events)

    def __iter__(self) -> Iterator[ExperienceEvent]:
        return iter(self.snapshot())

    def dumps(self) -> str:
        return "".join(
            json.dumps(ev.to_dict(), separators=(",", ":")) + "\n" for ev in self.snapshot()
        )

    def write(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(self.dumps())

    @classmethod
    def read(cls, path) -> "ExperienceLog":
        with open(path, "r", encoding="utf-8") as fh:
            events = [
                ExperienceEvent.from_dict(json.loads(ln))
                for ln in fh.read().splitlines()
                if ln.strip()
            ]
        return cls(events)


@dataclass(frozen=True)
class CandidateFeatures:
    """The familiarity feature vector of one document.

    R: lifetime open count; C: cumulative page-view time in minutes;
    I: days since last event (or since creation when unvisited);
    D: topic distance to the user profile, in [0, 2].
    """

    doc_id: str
    R: float
    C: float
    I: float
    D: float

    def as_vector(self) -> tuple[float, float, float, float]:
        return (self.R, self.C, self.I, self.D)


@dataclass(frozen=True)
class ExperienceSummary:
    """Interaction-derived attributes the wizard can ask about."""

    doc_id: str
    printed: bool
    refound_before: bool
    coverage: float
    unusual_time_access: bool
    unusual_location_access: bool


def features_from_events(
    events: Sequence[ExperienceEvent],
    doc: DocumentRecord,
    profile: UserProfile,
    now: int,
) -> CandidateFeatures:
    """Aggregate one document's events into its familiarity features.

    Requires now >= every event timestamp; I is clamped at 0 so the
    non-negativity invariant survives a violated precondition.
    """
    opens = sum(1 for ev in events if ev.kind == "open")
    minutes = sum(ev.duration_s for ev in events if ev.kind == "page_view") / 60.0
    if events:
        last = max(ev.timestamp for ev in events)
    else:
        last = doc.created_at
    interval_days = max(0.0, (now - last) / SECONDS_PER_DAY)
    return CandidateFeatures(
        doc_id=doc.doc_id,
        R=float(opens),
        C=float(minutes),
        I=interval_days,
        D=topic_distance(doc, profile),
    )


def summary_from_events(
    events: Sequence[ExperienceEvent],
    doc: DocumentRecord,
) -> ExperienceSummary:
    pages_seen = {ev.page for ev in events if ev.kind == "page_view"}
    coverage = min(1.0, len(pages_seen) / doc.pages) if doc.pages else 0.0
    return ExperienceSummary(
        doc_id=doc.doc_id,
        printed=any(ev.kind == "print" for ev in events),
        refound_before=any(ev.kind == "refind" for ev in events),
        coverage=coverage,
        unusual_time_access=any(ev.time_tag is not None for ev in events),
        unusual_location_access=any(ev.location_tag is not None for ev in events),
    )


def derive_features(
    log: ExperienceLog,
    doc: DocumentRecord,
    profile: UserProfile,
    now: int,
) -> CandidateFeatures:
    """Familiarity features of one document from the full log."""
    return features_from_events(log.events_for(doc.doc_id), doc, profile, now)


def summarize_experience(log: ExperienceLog, doc: DocumentRecord) -> ExperienceSummary:
    """Reduce a document's events to its experience attributes."""
    return summary_from_events(log.events_for(doc.doc_id), doc)
