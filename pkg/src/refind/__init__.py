"""refind: a familiarity-based re-finding engine for personal document corpora.

The pipeline: a question-and-answer wizard filters candidates, two linear
models estimate the user's familiarity with the surviving candidates and
with the target, and candidates are ranked by familiarity distance. A
seeded simulation harness generates artificial re-finding tasks and
evaluates the pipeline end to end.
"""

from .corpus import (
    CorpusStats,
    DocumentRecord,
    UserProfile,
    ValidationReport,
    compute_corpus_stats,
    read_corpus,
    topic_distance,
    validate_document,
    write_corpus,
)
from .events import (
    CandidateFeatures,
    ExperienceEvent,
    ExperienceLog,
    ExperienceSummary,
    derive_features,
    summarize_experience,
)
from .model import (
    CandidateModel,
    FamiliarityModel,
    TargetModel,
    TrainingExample,
    fit,
    fit_candidate_model,
    fit_target_model,
    load_model,
    predict_candidate,
    predict_target,
    save_model,
)
from .questions import (
    SKIP,
    Answer,
    Question,
    SessionMetrics,
    SessionState,
    apply_answer,
    build_attribute_view,
    build_catalog,
    make_answer,
    mark_asked,
    new_session,
    session_metrics,
    session_transcript,
)
from .ranker import RankedCandidate, rank, ranked_to_json
from .simulate import (
    DifficultyPolicy,
    EpisodeResult,
    EvaluationReport,
    RefindingTask,
    SimulatedUser,
    SimulationConfig,
    build_training_sets,
    build_view,
    classify_difficult,
    compare_split_parameters,
    evaluate,
    generate_task,
    generate_tasks,
    planted_linear_grade,
    run_benchmark,
    run_compare_splits,
    simulate_episode,
)
from .synth import World, generate_corpus

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
