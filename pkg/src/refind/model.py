"""Linear familiarity models.

Two models share one implementation: the candidate model maps a document's
behavioral features (R, C, I, D) to a familiarity degree, and the target
model maps wizard-session metrics (T_a, P_s, P_e) to the user's familiarity
with the document being re-found. Features are z-scored with parameters
stored on the model, and coefficients come from normal equations with a tiny
ridge on the slopes so degenerate training sets still fit deterministically.
Predictions are deliberately not clamped to the grade scale: the ranker
consumes distances, and clamping would pile candidates up at the bounds.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import (
    DimensionMismatchError,
    ModelSchemaError,
    TooFewExamplesError,
    UnfittedModelError,
)

CANDIDATE_KIND = "candidate"
TARGET_KIND = "target"
CANDIDATE_FEATURE_NAMES = ("R", "C", "I", "D")
TARGET_FEATURE_NAMES = ("T_a", "P_s", "P_e")

RIDGE_LAMBDA = 1e-8
MODEL_SCHEMA_VERSION = 1

GRADE_MIN = 1.0
GRADE_MAX = 10.0


@dataclass(frozen=True)
class TrainingExample:
    """One (feature vector, subjective 1-10 grade) pair."""

    features: tuple[float, ...]
    grade: float

    def __post_init__(self):
        if not GRADE_MIN <= self.grade <= GRADE_MAX:
            raise ValueError(f"grade must be in [1, 10], got {self.grade}")


@dataclass(frozen=True)
class FamiliarityModel:
    """Fitted linear model: intercept-first coefficients over z-scored features."""

    kind: str
    coef: tuple[float, ...]
    feature_means: tuple[float, ...]
    feature_stds: tuple[float, ...]


# Readability aliases: both kinds share the representation.
CandidateModel = FamiliarityModel
TargetModel = FamiliarityModel


def fit(examples: Sequence[TrainingExample], kind: str = CANDIDATE_KIND) -> FamiliarityModel:
    """Fit coefficients by ridge-stabilized normal equations.

    Features are z-scored with training means/stds (a constant column gets
    std 1, making its z-score 0). The slope penalty is tiny (1e-8) and the
    intercept is unpenalized, so noiseless linear data is recovered to well
    under 1e-6 while singular designs still solve deterministically.
    """
    examples = list(examples)
    if len(examples) < 2:
        raise TooFewExamplesError(
            f"too few examples: got {len(examples)}, need at least 2"
        )
    d = len(examples[0].features)
    for ex in examples:
        if len(ex.features) != d:
            raise DimensionMismatchError(
                f"feature dimension mismatch: expected {d}, got {len(ex.features)}"
            )

    X = np.array([ex.features for ex in examples], dtype=float)
    y = np.array([ex.grade for ex in examples], dtype=float)
    means = X.mean(axis=0)
    stds = X.std(axis=0, ddof=0)
    stds = np.where(stds <= 1e-12, 1.0, stds)

    Z = (X - means) / stds
    A = np.hstack([np.ones((len(examples), 1)), Z])
    penalty = np.eye(d + 1) * RIDGE_LAMBDA
    penalty[0, 0] = 0.0
    coef = np.linalg.solve(A.T @ A + penalty, A.T @ y)

    return FamiliarityModel(
        kind=kind,
        coef=tuple(float(c) for c in coef),
        feature_means=tuple(float(m) for m in means),
        feature_stds=tuple(float(s) for s in stds),
    )


def fit_candidate_model(examples: Sequence[TrainingExample]) -> CandidateModel:
    model = fit(examples, kind=CANDIDATE_KIND)
    _check_dim(model, len(CANDIDATE_FEATURE_NAMES))
    return model


def fit_target_model(examples: Sequence[TrainingExample]) -> TargetModel:
    model = fit(examples, kind=TARGET_KIND)
    _check_dim(model, len(TARGET_FEATURE_NAMES))
    return model


def _check_dim(model: FamiliarityModel, d: int) -> None:
    if len(model.coef) != d + 1:
        raise DimensionMismatchError(
            f"{model.kind} model needs {d} features, got {len(model.coef) - 1}"
        )


def predict(model: FamiliarityModel, features: Sequence[float]) -> float:
    """Intercept plus slope-weighted z-scores. Output is not clamped."""
    if model is None:
        raise UnfittedModelError("model has not been fitted")
    if len(features) != len(model.coef) - 1:
        raise DimensionMismatchError(
            f"model expects {len(model.coef) - 1} features, got {len(features)}"
        )
    total = model.coef[0]
    for w, x, m, s in zip(model.coef[1:], features, model.feature_means, model.feature_stds):
        total += w * (x - m) / s
    return total


def predict_candidate(model: CandidateModel, f) -> float:
    """Familiarity degree of one candidate document from its (R, C, I, D)."""
    if model is None:
        raise UnfittedModelError("candidate model has not been fitted")
    return predict(model, f.as_vector())


def predict_target(model: TargetModel, m) -> float:
    """Familiarity degree toward the target from session metrics (T_a, P_s, P_e)."""
    if model is None:
        raise UnfittedModelError("target model has not been fitted")
    return predict(model, m.as_vector())


def save_model(model: FamiliarityModel, path) -> None:
    doc = {
        "schema_version": MODEL_SCHEMA_VERSION,
        "kind": model.kind,
        "coefficients": list(model.coef),
        "means": list(model.feature_means),
        "stds": list(model.feature_stds),
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh)
        fh.write("\n")


def load_model(path) -> FamiliarityModel:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ModelSchemaError(f"{path}: not valid JSON ({exc})") from exc
    for key in ("schema_version", "kind", "coefficients", "means", "stds"):
        if key not in doc:
            raise ModelSchemaError(f"{path}: missing field {key!r}")
    if doc["schema_version"] != MODEL_SCHEMA_VERSION:
        raise ModelSchemaError(
            f"{path}: unsupported schema_version {doc['schema_version']!r}"
        )
    coef = doc["coefficients"]
    means = doc["means"]
    stds = doc["stds"]
    if len(coef) != len(means) + 1 or len(means) != len(stds):
        raise ModelSchemaError(
            f"{path}: inconsistent dimensions "
            f"(coefficients={len(coef)}, means={len(means)}, stds={len(stds)})"
        )
    if any(s <= 0 for s in stds):
        raise ModelSchemaError(f"{path}: feature stds must be positive")
    return FamiliarityModel(
        kind=doc["kind"],
        coef=tuple(float(c) for c in coef),
        feature_means=tuple(float(m) for m in means),
        feature_stds=tuple(float(s) for s in stds),
    )
