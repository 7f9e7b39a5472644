"""HTTP session API for the wizard, plus the application state it serves.

The state holds immutable snapshots (corpus, catalog, fitted models) and a
dict of live sessions. Each session is mutated under its own lock; answer
timing is measured server-side from question issuance to answer receipt
with an injectable clock so tests can fake it.
"""

from __future__ import annotations

import threading
import time
import uuid
from dataclasses import dataclass, field
from typing import Callable, Optional

from fastapi import Body, FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware

from .errors import InvalidAnswerError, UnknownAttributeError, UnknownQuestionError
from .model import CandidateModel, TargetModel, predict_target
from .questions import (
    SKIP,
    Question,
    SessionMetrics,
    SessionState,
    apply_answer,
    make_answer,
    mark_asked,
    new_session,
    session_metrics,
)
from .ranker import rank, ranked_to_json
from .simulate import SimulationConfig, WorldView, build_view
from .synth import World

DEFAULT_SESSION_TTL_S = 3600.0


@dataclass
class _LiveSession:
    state: SessionState
    next_index: int
    issued_at: Optional[float]
    last_touch: float
    # Model snapshot captured at session start: retraining never changes the
    # scores an in-flight session sees.
    candidate_model: Optional[CandidateModel] = None
    target_model: Optional[TargetModel] = None
    lock: threading.Lock = field(default_factory=threading.Lock)


class AppState:
    """Corpus snapshot, catalog, models and live sessions."""

    def __init__(self, view: WorldView, catalog: tuple[Question, ...],
                 candidate_model: Optional[CandidateModel] = None,
                 target_model: Optional[TargetModel] = None,
                 rel_tol: float = 0.25,
                 session_ttl_s: float = DEFAULT_SESSION_TTL_S,
                 clock: Callable[[], float] = time.monotonic):
        self.view = view
        self.catalog = tuple(catalog)
        self.candidate_model = candidate_model
        self.target_model = target_model
        self.rel_tol = rel_tol
        self.session_ttl_s = session_ttl_s
        self.clock = clock
        self._sessions: dict[str, _LiveSession] = {}
        self._registry_lock = threading.Lock()

    # -- construction helpers -------------------------------------------

    @classmethod
    def from_world(cls, world: World, catalog, candidate_model=None,
                   target_model=None, **kwargs) -> "AppState":
        return cls(build_view(world), catalog, candidate_model, target_model, **kwargs)

    @classmethod
    def demo(cls, seed: int = 7, n_docs: int = 120, **kwargs) -> "AppState":
        """Self-contained state: synthetic world, trained models."""
        from .corpus import compute_corpus_stats
        from .model import fit_candidate_model, fit_target_model
        from .questions import build_catalog
        from .simulate import (
            ModelBundle,
            build_training_sets,
            generate_tasks,
            _STREAM_TASKS_TRAIN,
        )
        from .synth import generate_corpus

        config = SimulationConfig(seed=seed, n_docs=n_docs, n_training_tasks=40)
        world = generate_corpus(config.seed, config.n_docs, config.vocab_size)
        view = build_view(world)
        stats = compute_corpus_stats(world.records, view.summaries.values())
        catalog = build_catalog(stats, policy=config.policy)
        user = config.make_user()
        train_tasks = generate_tasks(world.records, world.log, config.seed,
                                     config.n_training_tasks,
                                     stream=_STREAM_TASKS_TRAIN, prefix="train")
        cand_ex, targ_ex = build_training_sets(view, train_tasks, user, catalog,
                                               rel_tol=config.rel_tol,
                                               master_seed=config.seed)
        models = ModelBundle(candidate=fit_candidate_model(cand_ex),
                             target=fit_target_model(targ_ex))
        return cls(view, catalog, models.candidate, models.target,
                   rel_tol=config.rel_tol, **kwargs)

    # -- session plumbing ------------------------------------------------

    @property
    def models_ready(self) -> bool:
        return self.candidate_model is not None and self.target_model is not None

    def _question_payload(self, index: int) -> dict:
        q = self.catalog[index]
        return {
            "question_id": q.question_id,
            "attribute": q.attribute,
            "prompt": q.prompt,
            "kind": q.kind,
            "split_threshold": q.split_threshold,
            "option_a": q.option_a,
            "option_b": q.option_b,
            "options": list(q.options),
            "allows_precise": q.allows_precise,
            "index": index + 1,
            "total": len(self.catalog),
        }

    def _live(self, session_id: str) -> _LiveSession:
        now = self.clock()
        with self._registry_lock:
            live = self._sessions.get(session_id)
            if live is not None and now - live.last_touch > self.session_ttl_s:
                del self._sessions[session_id]
                live = None
            if live is None:
                raise HTTPException(status_code=404, detail="unknown session")
            live.last_touch = now
            return live

    def swap_models(self, candidate_model: CandidateModel,
                    target_model: TargetModel) -> None:
        """Atomically install retrained models for future sessions."""
        with self._registry_lock:
            self.candidate_model = candidate_model
            self.target_model = target_model

    def create_session(self) -> dict:
        if not self.models_ready:
            raise HTTPException(status_code=409, detail="models not trained")
        session_id = uuid.uuid4().hex
        state = new_session(session_id, self.view.all_ids)
        live = _LiveSession(state=state, next_index=0, issued_at=None,
                            last_touch=self.clock(),
                            candidate_model=self.candidate_model,
                            target_model=self.target_model)
        payload: Optional[dict] = None
        if self.catalog:
            live.state = mark_asked(live.state, self.catalog[0].question_id)
            live.issued_at = self.clock()
            payload = self._question_payload(0)
        with self._registry_lock:
            self._sessions[session_id] = live
        return {
            "session_id": session_id,
            "candidate_count": len(state.candidate_ids),
            "question": payload,
            "done": payload is None,
        }

    def current_question(self, session_id: str) -> dict:
        live = self._live(session_id)
        with live.lock:
            if live.next_index >= len(self.catalog) or not live.state.candidate_ids:
                return {"done": True, "candidate_count": len(live.state.candidate_ids)}
            return {
                "done": False,
                "candidate_count": len(live.state.candidate_ids),
                "question": self._question_payload(live.next_index),
            }

    def submit(self, session_id: str, question_id: str, value) -> dict:
        live = self._live(session_id)
        with live.lock:
            if live.next_index >= len(self.catalog) or not live.state.candidate_ids:
                raise HTTPException(status_code=409, detail="no pending question")
            pending = self.catalog[live.next_index]
            if question_id != pending.question_id:
                raise HTTPException(
                    status_code=409,
                    detail=f"stale question: pending is {pending.question_id}",
                )
            elapsed = 0.0
            if live.issued_at is not None:
                elapsed = max(0.0, self.clock() - live.issued_at)
            if isinstance(value, int) and not isinstance(value, bool):
                value = float(value)
            answer = make_answer(question_id, value, elapsed)
            try:
                live.state = apply_answer(live.state, answer, self.catalog,
                                          self.view.attrs, rel_tol=self.rel_tol)
            except (InvalidAnswerError, UnknownAttributeError, UnknownQuestionError) as exc:
                raise HTTPException(status_code=422, detail=str(exc)) from exc
            live.next_index += 1
            live.issued_at = None

            remaining = len(live.state.candidate_ids)
            done = live.next_index >= len(self.catalog) or remaining == 0
            payload = None
            if not done:
                live.state = mark_asked(live.state,
                                        self.catalog[live.next_index].question_id)
                live.issued_at = self.clock()
                payload = self._question_payload(live.next_index)
            return {"remaining_count": remaining, "done": done, "question": payload}

    def results(self, session_id: str) -> dict:
        live = self._live(session_id)
        with live.lock:
            state = live.state
            if state.asked:
                metrics = session_metrics(state)
            else:
                metrics = SessionMetrics(T_a=0.0, P_s=0.0, P_e=0.0)
            f_t = predict_target(live.target_model, metrics)
            survivors = state.candidate_ids
            if survivors:
                ranked = rank([(cid, self.view.features[cid]) for cid in survivors],
                              live.candidate_model, f_t)
                results = ranked_to_json(ranked)
            else:
                results = []
            documents = {}
            for cid in survivors:
                rec = self.view.records_by_id[cid]
                documents[cid] = {
                    "path": rec.path,
                    "pages": rec.pages,
                    "file_type": rec.file_type,
                    "content_category": rec.content_category,
                    "last_accessed_at": rec.last_accessed_at,
                }
            return {
                "session_id": session_id,
                "candidate_count": len(survivors),
                "F_t": f_t,
                "metrics": {"T_a": metrics.T_a, "P_s": metrics.P_s, "P_e": metrics.P_e},
                "results": results,
                "documents": documents,
            }


def create_app(state: AppState) -> FastAPI:
    app = FastAPI(title="refind")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    app.state.refind = state

    @app.get("/healthz")
    def healthz():
        return {"status": "ok"}

    @app.post("/sessions")
    def create_session():
        return state.create_session()

    @app.get("/sessions/{session_id}/question")
    def get_question(session_id: str):
        return state.current_question(session_id)

    @app.post("/sessions/{session_id}/answer")
    def post_answer(session_id: str, payload: dict = Body(...)):
        if "question_id" not in payload or "value" not in payload:
            raise HTTPException(status_code=422,
                                detail="body needs question_id and value")
        return state.submit(session_id, payload["question_id"], payload["value"])

    @app.post("/sessions/{session_id}/skip")
    def post_skip(session_id: str, payload: dict = Body(...)):
        if "question_id" not in payload:
            raise HTTPException(status_code=422, detail="body needs question_id")
        return state.submit(session_id, payload["question_id"], SKIP)

    @app.get("/sessions/{session_id}/results")
    def get_results(session_id: str):
        return state.results(session_id)

    return app
