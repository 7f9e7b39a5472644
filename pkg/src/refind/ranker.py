"""Rank surviving candidates by familiarity distance.

The ordering key is |F_i - F_t| ascending: the candidate whose estimated
familiarity is closest to the user's familiarity with the target comes
first. When the user barely knows the target, unfamiliar candidates surface
on top, which is the whole point of ranking by distance rather than score.
Ties break by doc_id ascending for reproducibility.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import EmptyCandidateSetError
from .model import CandidateModel, predict_candidate


@dataclass(frozen=True)
class RankedCandidate:
    doc_id: str
    familiarity: float  # F_i
    distance: float     # |F_i - F_t|
    rank: int           # 1-based


def rank(
    candidates: Iterable[tuple],
    candidate_model: CandidateModel,
    f_target: float,
) -> list[RankedCandidate]:
    """Sort (doc_id, CandidateFeatures) pairs by (distance, doc_id).

    The output is a permutation of the input, deterministic for a given
    model and F_t.
    """
    items = list(candidates)
    if not items:
        raise EmptyCandidateSetError("cannot rank an empty candidate set")
    scored = []
    for doc_id, features in items:
        f_i = predict_candidate(candidate_model, features)
        scored.append((abs(f_i - f_target), doc_id, f_i))
    scored.sort(key=lambda t: (t[0], t[1]))
    return [
        RankedCandidate(doc_id=doc_id, familiarity=f_i, distance=dist, rank=position + 1)
        for position, (dist, doc_id, f_i) in enumerate(scored)
    ]


def ranked_to_json(ranked: Iterable[RankedCandidate]) -> list[dict]:
    """Serialize a ranked list as [{doc_id, F_i, d, rank}]."""
    return [
        {"doc_id": rc.doc_id, "F_i": rc.familiarity, "d": rc.distance, "rank": rc.rank}
        for rc in ranked
    ]
