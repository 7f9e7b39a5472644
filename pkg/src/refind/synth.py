"""Seeded synthetic corpora for the simulation harness.

Documents are generated in "families": clusters that share a content
category, file type, language, topic mix and numeric scales, with per-member
jitter. Real personal corpora look like this (project folders, paper
collections, book series), and it is what makes the re-finding problem
interesting: attribute filters cannot separate family members, so the
ranking step has actual work to do. Experience histories are drawn per
member, independently of the family, with a heavy-tailed activity level so
a few documents are read a lot and many not at all.

Everything is driven by one integer seed; the same seed reproduces the
corpus, the event log and the profile byte-for-byte.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .corpus import GENDERS, DocumentRecord, UserProfile
from .events import ExperienceEvent, ExperienceLog

SNAPSHOT_EPOCH = 1_767_225_600  # the corpus snapshot instant all ages are relative to

_DAY = 86400

_CATEGORIES = {
    # Numeric attributes are category-typical and tight: within a category
    # documents look alike, between categories they differ strongly, so the
    # corpus-wide splits the wizard uses land between categories rather than
    # inside them. pages is the ln of the typical page count.
    "research-paper": dict(weight=0.30, pages=np.log(11.0), authors=4,
                           images=6, tables=4, difficulty=4, bib_p=0.97,
                           read_s=45.0, types=(("pdf", 0.92), ("html", 0.05), ("docx", 0.03))),
    "report":         dict(weight=0.20, pages=np.log(15.0), authors=3,
                           images=2, tables=5, difficulty=3, bib_p=0.06,
                           read_s=35.0, types=(("pdf", 0.75), ("docx", 0.20), ("md", 0.05))),
    "news":           dict(weight=0.15, pages=np.log(3.0), authors=1,
                           images=0, tables=0, difficulty=2, bib_p=0.02,
                           read_s=25.0, types=(("html", 0.75), ("pdf", 0.15), ("txt", 0.10))),
    "novel":          dict(weight=0.12, pages=np.log(500.0), authors=1,
                           images=0, tables=0, difficulty=2, bib_p=0.01,
                           read_s=30.0, types=(("epub", 0.70), ("pdf", 0.20), ("txt", 0.10))),
    "manual":         dict(weight=0.13, pages=np.log(300.0), authors=1,
                           images=9, tables=4, difficulty=3, bib_p=0.03,
                           read_s=30.0, types=(("pdf", 0.85), ("html", 0.10), ("docx", 0.05))),
    "slides":         dict(weight=0.10, pages=np.log(15.0), authors=2,
                           images=12, tables=1, difficulty=2, bib_p=0.03,
                           read_s=20.0, types=(("pptx", 0.85), ("pdf", 0.15))),
}

_LANGUAGES = (("en", 0.92), ("zh", 0.03), ("de", 0.03), ("fr", 0.01), ("ja", 0.01))

_BYTES_PER_PAGE = {"pdf": 90_000, "docx": 30_000, "txt": 3_000, "pptx": 160_000,
                   "html": 12_000, "md": 4_000, "epub": 25_000}

_GENDER_P = (0.58, 0.32, 0.10)


@dataclass(frozen=True)
class World:
    """One synthetic snapshot: corpus, experience log, profile, vocabulary."""

    records: tuple[DocumentRecord, ...]
    log: ExperienceLog
    profile: UserProfile
    vocab: tuple[str, ...]
    now: int


def _choice(rng, pairs):
    names = [name for name, _ in pairs]
    weights = np.array([w for _, w in pairs], dtype=float)
    return names[rng.choice(len(names), p=weights / weights.sum())]


def _family_params(rng, vocab_size: int) -> dict:
    names = list(_CATEGORIES)
    weights = np.array([_CATEGORIES[n]["weight"] for n in names])
    category = names[rng.choice(len(names), p=weights / weights.sum())]
    spec = _CATEGORIES[category]
    support = np.sort(rng.choice(vocab_size, size=3, replace=False))
    # Two corpus-age regimes: active project folders vs archived material.
    if rng.random() < 0.82:
        age_days = float(rng.uniform(30.0, 330.0))
    else:
        age_days = float(rng.uniform(700.0, 2900.0))
    return {
        "category": category,
        "file_type": _choice(rng, spec["types"]),
        "language": _choice(rng, _LANGUAGES),
        "pages_center": float(np.exp(spec["pages"] + rng.normal(0.0, 0.18))),
        "created_center": SNAPSHOT_EPOCH - int(age_days * _DAY),
        "topic_support": support,
        "topic_weights": rng.dirichlet(np.ones(3) * 2.0),
        # Family members look alike: same author head-count, difficulty and
        # illustration style, give or take per-member noise.
        "author_count": spec["authors"],
        "difficulty": spec["difficulty"],
        "image_base": max(0, spec["images"] + int(rng.integers(-1, 2))),
        "table_base": max(0, spec["tables"] + int(rng.integers(-1, 2))),
        "colorized": bool(rng.random() < 0.93),
        "has_bibliography": bool(rng.random() < spec["bib_p"]),
    }


def _topic_vector(rng, vocab_size: int, family: dict) -> tuple[float, ...]:
    if rng.random() < 0.10:
        return tuple(0.0 for _ in range(vocab_size))
    vec = np.zeros(vocab_size)
    vec[family["topic_support"]] = family["topic_weights"] + np.abs(rng.normal(0.0, 0.08, 3))
    vec /= np.linalg.norm(vec)
    return tuple(float(x) for x in vec)


def _make_record(rng, doc_id: str, family: dict, vocab_size: int) -> DocumentRecord:
    pages = max(1, int(round(family["pages_center"] * rng.lognormal(0.0, 0.12))))
    file_type = family["file_type"]
    file_size = max(1024, int(pages * _BYTES_PER_PAGE[file_type] * rng.lognormal(0.0, 0.12)))

    created_at = family["created_center"] + int(rng.normal(0.0, 25.0) * _DAY)
    created_at = int(np.clip(created_at, SNAPSHOT_EPOCH - 3600 * _DAY, SNAPSHOT_EPOCH - 30 * _DAY))
    modified_at = created_at + int(rng.exponential(20.0) * _DAY)
    modified_at = min(modified_at, SNAPSHOT_EPOCH - 2 * _DAY)
    modified_at = max(modified_at, created_at)

    author_count = family["author_count"]
    author_genders = tuple(
        GENDERS[rng.choice(3, p=_GENDER_P)] for _ in range(author_count)
    )

    def jitter_count(base: int) -> int:
        # never crosses zero: an illustrated family stays illustrated, so
        # image_color cannot flip to "none" inside a family
        if base == 0:
            return 0
        u = rng.random()
        if u < 0.03:
            return max(1, base - 1)
        if u > 0.97:
            return base + 1
        return base

    image_count = jitter_count(family["image_base"])
    table_count = jitter_count(family["table_base"])
    if image_count == 0:
        image_color = "none"
    elif rng.random() < 0.05:
        image_color = "monochrome" if family["colorized"] else "colorized"
    else:
        image_color = "colorized" if family["colorized"] else "monochrome"

    difficulty = family["difficulty"]
    if rng.random() < 0.02:
        difficulty = int(np.clip(difficulty + rng.choice([-1, 1]), 1, 5))

    has_bibliography = family["has_bibliography"]
    if rng.random() < 0.01:
        has_bibliography = not has_bibliography

    return DocumentRecord(
        doc_id=doc_id,
        path=f"library/{family['category']}/{doc_id}.{file_type}",
        file_size=file_size,
        file_type=file_type,
        created_at=created_at,
        modified_at=modified_at,
        last_accessed_at=modified_at,  # finalized after events exist
        author_count=author_count,
        author_genders=author_genders,
        pages=pages,
        image_count=image_count,
        table_count=table_count,
        image_color=image_color,
        content_category=family["category"],
        difficulty_level=difficulty,
        topic_vector=_topic_vector(rng, vocab_size, family),
        language=family["language"],
        has_bibliography=has_bibliography,
    )


def _make_events(rng, record: DocumentRecord) -> list[ExperienceEvent]:
    if rng.random() < 0.15:
        return []  # never opened since logging began
    spec = _CATEGORIES[record.content_category]
    # Per-document reading propensity: most documents are touched a few
    # times, some are worked with constantly; the count stays bounded so the
    # familiarity scale has a well-defined top end.
    propensity = rng.beta(0.4, 1.0)
    n_sessions = 1 + int(rng.binomial(13, propensity))

    lo = record.created_at + 3600
    hi = SNAPSHOT_EPOCH - _DAY
    if lo >= hi:
        lo = hi - 1
    offsets = rng.beta(1.0, 3.0, size=n_sessions)  # mass near the snapshot
    starts = np.sort(hi - offsets * (hi - lo))

    events: list[ExperienceEvent] = []
    doc_id = record.doc_id
    last_end = 0
    # Unusual access is a per-document habit (a bedtime novel, an on-the-road
    # manual), not an independent coin flip per open.
    night_reader = rng.random() < 0.02
    mobile_reader = rng.random() < 0.015
    for start in starts:
        t = int(start)
        time_tag = None
        location_tag = None
        if night_reader and rng.random() < 0.5:
            time_tag = str(rng.choice(["night", "weekend"]))
        if mobile_reader and rng.random() < 0.5:
            location_tag = str(rng.choice(["travel", "cafe"]))
        events.append(ExperienceEvent(doc_id=doc_id, kind="open", timestamp=t,
                                      time_tag=time_tag, location_tag=location_tag))
        # A sitting covers a handful of page views; short documents get
        # re-read, long ones get sampled.
        n_views = 1 + int(min(rng.poisson(0.9 * record.pages), 24))
        for _ in range(n_views):
            if rng.random() < 0.5:
                page = 1 + int(record.pages * rng.beta(1.0, 3.0))
            else:
                page = int(rng.integers(1, record.pages + 1))
            page = min(page, record.pages)
            duration = round(float(spec["read_s"] * rng.lognormal(0.0, 0.6)), 1)
            t += max(1, int(duration))
            t = min(t, SNAPSHOT_EPOCH - 60)
            events.append(ExperienceEvent(doc_id=doc_id, kind="page_view", timestamp=t,
                                          page=page, duration_s=duration))
        if rng.random() < 0.12:
            events.append(ExperienceEvent(doc_id=doc_id, kind="annotate", timestamp=t))
        t = min(t + 1, SNAPSHOT_EPOCH - 30)
        events.append(ExperienceEvent(doc_id=doc_id, kind="close", timestamp=t))
        last_end = max(last_end, t)
    if rng.random() < 0.025:
        events.append(ExperienceEvent(doc_id=doc_id, kind="print",
                                      timestamp=min(last_end + 2, SNAPSHOT_EPOCH - 10)))
    if rng.random() < 0.02:
        events.append(ExperienceEvent(doc_id=doc_id, kind="refind",
                                      timestamp=min(last_end + 3, SNAPSHOT_EPOCH - 5)))
    return events


def generate_corpus(seed: int, n_docs: int, vocab_size: int = 24) -> World:
    """Generate a reproducible corpus, event log and user profile.

    Same seed, same output, byte for byte once serialized. Heavy-tailed
    pages and sizes, family structure, and event histories whose density
    varies by orders of magnitude across documents.
    """
    if n_docs < 1:
        raise ValueError("n_docs must be >= 1")
    if vocab_size < 3:
        raise ValueError("vocab_size must be >= 3")
    rng = np.random.default_rng(seed)
    vocab = tuple(f"topic{i:02d}" for i in range(vocab_size))

    n_families = max(1, int(round(n_docs / 30)))
    families = [_family_params(rng, vocab_size) for _ in range(n_families)]

    records: list[DocumentRecord] = []
    all_events: list[ExperienceEvent] = []
    for i in range(n_docs):
        if rng.random() < 0.02:
            family = _family_params(rng, vocab_size)  # loner: its own one-off family
        else:
            family = families[int(rng.integers(0, n_families))]
        record = _make_record(rng, f"doc-{i:04d}", family, vocab_size)
        doc_events = _make_events(rng, record)
        if doc_events:
            last_access = max(ev.timestamp for ev in doc_events)
            record = replace(record, last_accessed_at=max(last_access, record.modified_at))
        records.append(record)
        all_events.extend(doc_events)

    all_events.sort(key=lambda ev: (ev.timestamp, ev.doc_id, ev.kind))
    log = ExperienceLog(all_events)

    n_interests = min(vocab_size, 6)
    support = np.sort(rng.choice(vocab_size, size=n_interests, replace=False))
    interest = np.zeros(vocab_size)
    interest[support] = rng.dirichlet(np.ones(n_interests) * 2.0) + 0.05
    interest /= np.linalg.norm(interest)
    profile = UserProfile(interest_vector=tuple(float(x) for x in interest))

    return World(records=tuple(records), log=log, profile=profile,
                 vocab=vocab, now=SNAPSHOT_EPOCH)
