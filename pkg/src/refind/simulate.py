"""Artificial re-finding tasks, a simulated wizard user, and evaluation.

This is the desk-scale stand-in for a human study: tasks are drawn from the
corpus with reading-time preference, a parametric user answers the wizard
(skipping, answering precisely, or erring as a function of how familiar it
"really" is with the target), episodes end in a familiarity-distance
ranking, and the harness reports MRR, success@k, the difficult-task
fraction, and the mean-vs-median split-parameter comparison.

All randomness is derived from (master seed, stream, index) so parallel and
serial runs, and repeated runs, agree bit for bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable, Optional, Sequence

import numpy as np

from .corpus import DocumentRecord, compute_corpus_stats
from .errors import EmptyResultsError, TooFewTasksError
from .events import CandidateFeatures, features_from_events, summary_from_events
from .model import (
    CandidateModel,
    TargetModel,
    TrainingExample,
    fit_candidate_model,
    fit_target_model,
)
from .questions import (
    BINARY_SPLIT,
    BOOLEAN,
    CATEGORICAL,
    OPTION_A,
    OPTION_B,
    SKIP,
    Question,
    SessionMetrics,
    apply_answer,
    build_attribute_view,
    build_catalog,
    make_answer,
    mark_asked,
    new_session,
    session_metrics,
)
from .ranker import rank
from .synth import World, generate_corpus

# RNG stream tags: every stochastic stage owns a (seed, tag[, index]) stream.
_STREAM_TASKS_TRAIN = 3
_STREAM_TASKS_EVAL = 4
_STREAM_TRAIN_WIZARD = 5
_STREAM_EPISODE = 6
_STREAM_BASELINE = 7
_STREAM_SPLITS = 8

PROB_CAP = 0.95


@dataclass(frozen=True)
class RefindingTask:
    """One artificial re-finding task: a designated target document."""

    task_id: str
    target_doc_id: str
    generation_weight: float


@dataclass(frozen=True)
class DifficultyPolicy:
    """When is an episode a difficult re-finding task.

    T is the time budget in seconds; additionally, a target outside the
    top_k final ranks counts as not re-found (a simulated user cannot
    give up, so the scan-and-recognize limit stands in for that).
    """

    T: float = 300.0
    top_k: int = 20

    def __post_init__(self):
        if self.T <= 0:
            raise ValueError("time budget T must be positive")


def _clamp_prob(p: float) -> float:
    return min(max(p, 0.0), PROB_CAP)


@dataclass(frozen=True)
class SimulatedUser:
    """Parametric stand-in for the human in the training / evaluation loop.

    The grade g = true_grade_fn(target features) drives everything: a
    familiar target means fewer skips, more precise answers, more correct
    recollections and faster answers. Derived probabilities are clamped to
    [0, 0.95].
    """

    rng_seed: int
    true_grade_fn: Callable[[CandidateFeatures], float]
    base_time_s: float = 20.0
    time_slope_s: float = 1.5
    skip_base: float = 0.5
    skip_slope: float = 0.05
    precise_slope: float = 0.05
    correct_base: float = 0.5
    correct_slope: float = 0.045
    time_noise_s: float = 1.2
    page_recall_sigma: float = 0.5

    def p_skip(self, g: float) -> float:
        return _clamp_prob(self.skip_base - self.skip_slope * g)

    def p_precise(self, g: float) -> float:
        return _clamp_prob(self.precise_slope * g)

    def p_correct(self, g: float) -> float:
        return _clamp_prob(self.correct_base + self.correct_slope * g)


def planted_linear_grade(
    intercept: float,
    w_r: float,
    w_c: float,
    w_i: float,
    w_d: float,
) -> Callable[[CandidateFeatures], float]:
    """A ground-truth grade function, linear in (R, C, I, D), clipped to [1, 10]."""

    def grade(f: CandidateFeatures) -> float:
        raw = intercept + w_r * f.R + w_c * f.C + w_i * f.I + w_d * f.D
        return min(10.0, max(1.0, raw))

    return grade


@dataclass(frozen=True)
class EpisodeResult:
    """Outcome of one simulated re-finding episode."""

    task_id: str
    survivor_count: int
    target_survived: bool
    target_rank: Optional[int]
    metrics: SessionMetrics
    wall_time_s: float
    target_grade: float = 0.0
    survivor_ids: tuple[str, ...] = ()


@dataclass
class WorldView:
    """Precomputed per-document derivations over one immutable world."""

    world: World
    records_by_id: dict
    all_ids: tuple[str, ...]
    features: dict
    summaries: dict
    attrs: dict


def build_view(world: World) -> WorldView:
    events_by_doc: dict[str, list] = {rec.doc_id: [] for rec in world.records}
    for ev in world.log:
        events_by_doc.setdefault(ev.doc_id, []).append(ev)
    features = {}
    summaries = {}
    for rec in world.records:
        evs = events_by_doc[rec.doc_id]
        features[rec.doc_id] = features_from_events(evs, rec, world.profile, world.now)
        summaries[rec.doc_id] = summary_from_events(evs, rec)
    return WorldView(
        world=world,
        records_by_id={rec.doc_id: rec for rec in world.records},
        all_ids=tuple(rec.doc_id for rec in world.records),
        features=features,
        summaries=summaries,
        attrs=build_attribute_view(world.records, summaries),
    )


@dataclass(frozen=True)
class ModelBundle:
    candidate: CandidateModel
    target: TargetModel


# ---------------------------------------------------------------------------
# Task generation: reading-time-weighted random selection.
# ---------------------------------------------------------------------------

def _cumulative_minutes(log) -> dict[str, float]:
    minutes: dict[str, float] = {}
    for ev in log:
        if ev.kind == "page_view":
            minutes[ev.doc_id] = minutes.get(ev.doc_id, 0.0) + ev.duration_s / 60.0
    return minutes


def _task_weights(corpus: Sequence[DocumentRecord], log) -> np.ndarray:
    minutes = _cumulative_minutes(log)
    # 1 + C_i: documents the user spent a lot of time on are preferred,
    # but never-read documents stay reachable.
    return np.array([1.0 + minutes.get(rec.doc_id, 0.0) for rec in corpus])


def generate_task(corpus: Sequence[DocumentRecord], event_log, seed,
                  task_id: Optional[str] = None) -> RefindingTask:
    """Draw one re-finding task, weighted by cumulative reading time."""
    corpus = list(corpus)
    weights = _task_weights(corpus, event_log)
    rng = np.random.default_rng(seed)
    idx = int(rng.choice(len(corpus), p=weights / weights.sum()))
    return RefindingTask(
        task_id=task_id if task_id is not None else f"task-{seed}",
        target_doc_id=corpus[idx].doc_id,
        generation_weight=float(weights[idx]),
    )


def generate_tasks(corpus: Sequence[DocumentRecord], event_log, master_seed: int,
                   n: int, stream: int = _STREAM_TASKS_EVAL,
                   prefix: str = "task") -> list[RefindingTask]:
    """Draw n tasks from one derived stream (weights computed once)."""
    corpus = list(corpus)
    weights = _task_weights(corpus, event_log)
    probs = weights / weights.sum()
    rng = np.random.default_rng([master_seed, stream])
    indices = rng.choice(len(corpus), size=n, p=probs)
    return [
        RefindingTask(
            task_id=f"{prefix}-{i:05d}",
            target_doc_id=corpus[int(idx)].doc_id,
            generation_weight=float(weights[int(idx)]),
        )
        for i, idx in enumerate(indices)
    ]


# ---------------------------------------------------------------------------
# The simulated wizard run.
# ---------------------------------------------------------------------------

def _decide_value(question: Question, target_attrs, user: SimulatedUser, g: float,
                  u_skip: float, u_precise: float, u_correct: float, rng):
    """Pick the simulated user's answer value for one question."""
    if u_skip < user.p_skip(g):
        return SKIP
    attr_value = target_attrs[question.attribute]
    if question.allows_precise and u_precise < user.p_precise(g):
        return float(attr_value)  # precise recollections are truthful
    correct = u_correct < user.p_correct(g)
    if question.kind == BINARY_SPLIT:
        true_side = OPTION_A if attr_value > question.split_threshold else OPTION_B
        if correct:
            return true_side
        return OPTION_B if true_side == OPTION_A else OPTION_A
    if question.kind == BOOLEAN:
        return bool(attr_value) if correct else not bool(attr_value)
    if question.kind == CATEGORICAL:
        wrong_options = [opt for opt in question.options if opt != attr_value]
        if correct or not wrong_options:
            return attr_value
        return wrong_options[int(rng.integers(0, len(wrong_options)))]
    return SKIP


def _simulate_wizard(view: WorldView, target_id: str, user: SimulatedUser,
                     catalog: Sequence[Question], rng, rel_tol: float,
                     session_id: str = "sim"):
    """Run the full question list against one target. Returns (session, grade)."""
    g = user.true_grade_fn(view.features[target_id])
    target_attrs = view.attrs[target_id]
    session = new_session(session_id, view.all_ids)
    for question in catalog:
        session = mark_asked(session, question.question_id)
        # The three uniforms and the time noise are drawn unconditionally so
        # runs that differ only in g stay coupled draw-for-draw.
        u_skip = float(rng.random())
        u_precise = float(rng.random())
        u_correct = float(rng.random())
        noise = float(rng.normal(0.0, 1.0)) * user.time_noise_s
        elapsed = max(0.0, user.base_time_s - user.time_slope_s * g + noise)
        value = _decide_value(question, target_attrs, user, g,
                              u_skip, u_precise, u_correct, rng)
        answer = make_answer(question.question_id, value, elapsed)
        session = apply_answer(session, answer, catalog, view.attrs, rel_tol=rel_tol)
    return session, g


def simulate_episode(view: WorldView, task: RefindingTask, user: SimulatedUser,
                     catalog: Sequence[Question], models: ModelBundle,
                     policy: DifficultyPolicy, rng,
                     rel_tol: float = 0.25) -> EpisodeResult:
    """One complete episode: wizard, filtering, then NNiGN ranking."""
    from .model import predict_target

    session, g = _simulate_wizard(view, task.target_doc_id, user, catalog, rng,
                                  rel_tol, session_id=task.task_id)
    metrics = session_metrics(session)
    wall_time = sum(a.elapsed_s for a in session.answers)
    survivors = session.candidate_ids

    target_rank: Optional[int] = None
    survived = task.target_doc_id in survivors
    if survivors:
        f_t = predict_target(models.target, metrics)
        ranked = rank([(cid, view.features[cid]) for cid in survivors],
                      models.candidate, f_t)
        if survived:
            target_rank = next(rc.rank for rc in ranked if rc.doc_id == task.target_doc_id)

    return EpisodeResult(
        task_id=task.task_id,
        survivor_count=len(survivors),
        target_survived=survived,
        target_rank=target_rank,
        metrics=metrics,
        wall_time_s=wall_time,
        target_grade=g,
        survivor_ids=survivors,
    )


def build_training_sets(view: WorldView, tasks: Sequence[RefindingTask],
                        user: SimulatedUser, catalog: Sequence[Question],
                        rel_tol: float = 0.25, master_seed: Optional[int] = None
                        ) -> tuple[list[TrainingExample], list[TrainingExample]]:
    """Produce the two training sets.

    Candidate examples pair each document's derived features with the user's
    grade for it; target examples pair each task's wizard-session metrics
    with the grade of that task's target (the grade a user would give after
    locating it).
    """
    tasks = list(tasks)
    if len(tasks) < 2:
        raise TooFewTasksError(f"need at least 2 tasks, got {len(tasks)}")
    seed = user.rng_seed if master_seed is None else master_seed

    candidate_examples = [
        TrainingExample(features=view.features[doc_id].as_vector(),
                        grade=user.true_grade_fn(view.features[doc_id]))
        for doc_id in view.all_ids
    ]

    target_examples = []
    for i, task in enumerate(tasks):
        rng = np.random.default_rng([seed, _STREAM_TRAIN_WIZARD, i])
        session, g = _simulate_wizard(view, task.target_doc_id, user, catalog,
                                      rng, rel_tol, session_id=task.task_id)
        metrics = session_metrics(session)
        target_examples.append(TrainingExample(features=metrics.as_vector(), grade=g))
    return candidate_examples, target_examples


def classify_difficult(result: EpisodeResult, policy: DifficultyPolicy) -> bool:
    """An episode is difficult iff it ran over budget or the target was not
    re-found (eliminated, or ranked below the scan-and-recognize limit)."""
    if result.wall_time_s > policy.T:
        return True
    if not result.target_survived:
        return True
    return result.target_rank > policy.top_k


# ---------------------------------------------------------------------------
# Evaluation.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EvaluationReport:
    n_episodes: int
    mrr: float
    success_at: dict[int, float]
    difficult_fraction: float
    eliminated_fraction: float
    mean_survivor_count: float
    mean_wall_time_s: float
    mean_relative_rank: Optional[float]

    def to_dict(self) -> dict:
        d = {
            "n_episodes": self.n_episodes,
            "mrr": self.mrr,
        }
        for k in sorted(self.success_at):
            d[f"success_at_{k}"] = self.success_at[k]
        d.update({
            "difficult_fraction": self.difficult_fraction,
            "eliminated_fraction": self.eliminated_fraction,
            "mean_survivor_count": self.mean_survivor_count,
            "mean_wall_time_s": self.mean_wall_time_s,
            "mean_relative_rank": self.mean_relative_rank,
        })
        return d


def _relative_rank(rank_1based: int, survivor_count: int) -> float:
    # 0 = first, 1 = last; a singleton list counts as first.
    if survivor_count <= 1:
        return 0.0
    return (rank_1based - 1) / (survivor_count - 1)


def evaluate(results: Sequence[EpisodeResult],
             policy: Optional[DifficultyPolicy] = None,
             ks: Sequence[int] = (1, 5, 10)) -> EvaluationReport:
    """Aggregate episode outcomes. MRR counts an eliminated target as 0."""
    results = list(results)
    if not results:
        raise EmptyResultsError("no episode results to evaluate")
    policy = policy or DifficultyPolicy()
    n = len(results)

    reciprocal = [
        1.0 / r.target_rank if r.target_survived else 0.0 for r in results
    ]
    success_at = {
        int(k): sum(1 for r in results
                    if r.target_survived and r.target_rank <= k) / n
        for k in ks
    }
    relative = [
        _relative_rank(r.target_rank, r.survivor_count)
        for r in results if r.target_survived
    ]
    return EvaluationReport(
        n_episodes=n,
        mrr=sum(reciprocal) / n,
        success_at=success_at,
        difficult_fraction=sum(
            1 for r in results if classify_difficult(r, policy)) / n,
        eliminated_fraction=sum(1 for r in results if not r.target_survived) / n,
        mean_survivor_count=sum(r.survivor_count for r in results) / n,
        mean_wall_time_s=sum(r.wall_time_s for r in results) / n,
        mean_relative_rank=(sum(relative) / len(relative)) if relative else None,
    )


def random_baseline_rank(survivor_ids: Sequence[str], target_id: str, rng) -> Optional[int]:
    """Target's 1-based position after a seeded random shuffle of the survivors."""
    if target_id not in survivor_ids:
        return None
    order = list(survivor_ids)
    perm = rng.permutation(len(order))
    shuffled = [order[int(i)] for i in perm]
    return shuffled.index(target_id) + 1


def _harmonic(m: int) -> float:
    return sum(1.0 / j for j in range(1, m + 1))


def random_baseline_report(results: Sequence[EpisodeResult],
                           policy: Optional[DifficultyPolicy] = None,
                           ks: Sequence[int] = (1, 5, 10)) -> EvaluationReport:
    """The random-shuffle baseline, evaluated in exact expectation.

    A shuffled list puts the surviving target at a uniform rank in 1..m, so
    every metric has a closed form (E[1/rank] = H_m/m, P(rank<=k) = k/m,
    E[relative rank] = 1/2). Using the expectation instead of one sampled
    shuffle keeps the comparison luck-free and deterministic.
    """
    results = list(results)
    if not results:
        raise EmptyResultsError("no episode results to evaluate")
    policy = policy or DifficultyPolicy()
    n = len(results)

    reciprocal = 0.0
    success = {int(k): 0.0 for k in ks}
    difficult = 0.0
    relative = []
    for r in results:
        if not r.target_survived:
            difficult += 1.0
            continue
        m = r.survivor_count
        reciprocal += _harmonic(m) / m
        for k in success:
            success[k] += min(k, m) / m
        if r.wall_time_s > policy.T:
            difficult += 1.0
        else:
            difficult += max(0, m - policy.top_k) / m
        relative.append(0.5 if m > 1 else 0.0)
    return EvaluationReport(
        n_episodes=n,
        mrr=reciprocal / n,
        success_at={k: v / n for k, v in success.items()},
        difficult_fraction=difficult / n,
        eliminated_fraction=sum(1 for r in results if not r.target_survived) / n,
        mean_survivor_count=sum(r.survivor_count for r in results) / n,
        mean_wall_time_s=sum(r.wall_time_s for r in results) / n,
        mean_relative_rank=(sum(relative) / len(relative)) if relative else None,
    )


# ---------------------------------------------------------------------------
# Mean-vs-median split-parameter comparison.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SplitComparison:
    mean_accuracy: float
    median_accuracy: float
    n_answers: int
    mean_threshold: float
    median_threshold: float

    def to_dict(self) -> dict:
        return {
            "mean_accuracy": self.mean_accuracy,
            "median_accuracy": self.median_accuracy,
            "n_answers": self.n_answers,
            "mean_threshold": self.mean_threshold,
            "median_threshold": self.median_threshold,
        }


def recall_answer_model(sigma: float) -> Callable:
    """Multiplicative lognormal page recollection: error grows with the count."""

    def recall(true_pages: float, rng) -> float:
        return true_pages * math.exp(sigma * float(rng.standard_normal()))

    return recall


def perfect_answer_model() -> Callable:
    return recall_answer_model(0.0)


def random_answer_model() -> Callable:
    """Chooses a side uniformly at random, whatever the threshold."""

    def recall(true_pages: float, rng) -> float:
        return math.inf if rng.random() < 0.5 else 0.0

    return recall


def compare_split_parameters(view: WorldView, tasks: Sequence[RefindingTask],
                             user: SimulatedUser, seed: Optional[int] = None,
                             answer_model: Optional[Callable] = None) -> SplitComparison:
    """Accuracy of the page question under the mean vs the median threshold.

    For every non-skipped task the user recalls the target's page count once
    (by default with multiplicative error) and answers both variants of the
    question; an answer is correct when the recalled side of a threshold is
    the target's true side.
    """
    tasks = list(tasks)
    if len(tasks) < 10:
        raise TooFewTasksError(f"need at least 10 tasks, got {len(tasks)}")
    stats = compute_corpus_stats(view.world.records)
    mean_thr = stats.numeric["pages"].mean
    median_thr = stats.numeric["pages"].median

    rng = np.random.default_rng([user.rng_seed if seed is None else seed, _STREAM_SPLITS])
    model = answer_model or recall_answer_model(user.page_recall_sigma)

    answered = 0
    correct_mean = 0
    correct_median = 0
    for task in tasks:
        record = view.records_by_id[task.target_doc_id]
        g = user.true_grade_fn(view.features[task.target_doc_id])
        if rng.random() < user.p_skip(g):
            continue
        answered += 1
        recalled = model(float(record.pages), rng)
        for threshold, bucket in ((mean_thr, "mean"), (median_thr, "median")):
            claims_above = recalled > threshold
            truly_above = record.pages > threshold
            if claims_above == truly_above:
                if bucket == "mean":
                    correct_mean += 1
                else:
                    correct_median += 1
    if answered == 0:
        raise TooFewTasksError("every task was skipped; no answers to score")
    return SplitComparison(
        mean_accuracy=correct_mean / answered,
        median_accuracy=correct_median / answered,
        n_answers=answered,
        mean_threshold=float(mean_thr),
        median_threshold=float(median_thr),
    )


# ---------------------------------------------------------------------------
# The end-to-end benchmark: world -> training -> episodes -> reports.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SimulationConfig:
    """Config surface of the harness; all keys are settable from a key=value file."""

    seed: int = 42
    n_docs: int = 500
    vocab_size: int = 24
    n_tasks: int = 200
    n_training_tasks: int = 60
    policy: str = "mean"
    rel_tol: float = 0.25
    base_time_s: float = 20.0
    time_slope_s: float = 1.5
    skip_base: float = 0.5
    skip_slope: float = 0.05
    precise_slope: float = 0.05
    correct_base: float = 0.5
    correct_slope: float = 0.045
    time_noise_s: float = 1.2
    page_recall_sigma: float = 0.5
    grade_intercept: float = 3.5
    grade_r: float = 0.38
    grade_c: float = 0.006
    grade_i: float = -0.0004
    grade_d: float = -0.5
    time_budget_s: float = 300.0
    top_k: int = 20
    success_ks: tuple[int, ...] = (1, 5, 10)

    def make_user(self) -> SimulatedUser:
        return SimulatedUser(
            rng_seed=self.seed,
            true_grade_fn=planted_linear_grade(
                self.grade_intercept, self.grade_r, self.grade_c,
                self.grade_i, self.grade_d,
            ),
            base_time_s=self.base_time_s,
            time_slope_s=self.time_slope_s,
            skip_base=self.skip_base,
            skip_slope=self.skip_slope,
            precise_slope=self.precise_slope,
            correct_base=self.correct_base,
            correct_slope=self.correct_slope,
            time_noise_s=self.time_noise_s,
            page_recall_sigma=self.page_recall_sigma,
        )

    def make_policy(self) -> DifficultyPolicy:
        return DifficultyPolicy(T=self.time_budget_s, top_k=self.top_k)


@dataclass
class BenchmarkRun:
    """Everything a benchmark run produced, for reporting and inspection."""

    config: SimulationConfig
    nnign: EvaluationReport
    baseline: EvaluationReport
    mrr_ratio: Optional[float]
    episodes: list[EpisodeResult]
    baseline_ranks: list[Optional[int]]
    n_candidate_examples: int
    n_target_examples: int

    def report_dict(self) -> dict:
        from dataclasses import asdict

        cfg = asdict(self.config)
        cfg["success_ks"] = list(self.config.success_ks)
        return {
            "config": cfg,
            "training": {
                "candidate_examples": self.n_candidate_examples,
                "target_examples": self.n_target_examples,
            },
            "nnign": self.nnign.to_dict(),
            "random_baseline": self.baseline.to_dict(),
            "mrr_ratio": self.mrr_ratio,
        }


def run_benchmark(config: SimulationConfig) -> BenchmarkRun:
    """Run the full pipeline once, deterministically for a given config."""
    world = generate_corpus(config.seed, config.n_docs, config.vocab_size)
    view = build_view(world)
    stats = compute_corpus_stats(world.records, view.summaries.values())
    catalog = build_catalog(stats, policy=config.policy)
    user = config.make_user()
    policy = config.make_policy()

    train_tasks = generate_tasks(world.records, world.log, config.seed,
                                 config.n_training_tasks,
                                 stream=_STREAM_TASKS_TRAIN, prefix="train")
    cand_examples, targ_examples = build_training_sets(
        view, train_tasks, user, catalog, rel_tol=config.rel_tol,
        master_seed=config.seed)
    models = ModelBundle(
        candidate=fit_candidate_model(cand_examples),
        target=fit_target_model(targ_examples),
    )

    eval_tasks = generate_tasks(world.records, world.log, config.seed,
                                config.n_tasks, stream=_STREAM_TASKS_EVAL)
    episodes = []
    baseline_ranks: list[Optional[int]] = []
    for i, task in enumerate(eval_tasks):
        rng = np.random.default_rng([config.seed, _STREAM_EPISODE, i])
        result = simulate_episode(view, task, user, catalog, models, policy,
                                  rng, rel_tol=config.rel_tol)
        episodes.append(result)
        # One sampled shuffle per episode, kept for the per-episode CSV; the
        # baseline report itself is the exact shuffle expectation.
        baseline_rng = np.random.default_rng([config.seed, _STREAM_BASELINE, i])
        baseline_ranks.append(
            random_baseline_rank(result.survivor_ids, task.target_doc_id, baseline_rng)
        )

    nnign_report = evaluate(episodes, policy, ks=config.success_ks)
    baseline_report = random_baseline_report(episodes, policy, ks=config.success_ks)
    if baseline_report.mrr > 0:
        ratio = nnign_report.mrr / baseline_report.mrr
    else:
        ratio = None
    return BenchmarkRun(
        config=config,
        nnign=nnign_report,
        baseline=baseline_report,
        mrr_ratio=ratio,
        episodes=episodes,
        baseline_ranks=baseline_ranks,
        n_candidate_examples=len(cand_examples),
        n_target_examples=len(targ_examples),
    )


def run_compare_splits(config: SimulationConfig, n_tasks: Optional[int] = None
                       ) -> SplitComparison:
    """Build a world and run the split-parameter comparison on it."""
    world = generate_corpus(config.seed, config.n_docs, config.vocab_size)
    view = build_view(world)
    tasks = generate_tasks(world.records, world.log, config.seed,
                           n_tasks if n_tasks is not None else config.n_tasks,
                           stream=_STREAM_TASKS_EVAL)
    return compare_split_parameters(view, tasks, config.make_user(), seed=config.seed)
