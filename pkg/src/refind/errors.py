"""Exception hierarchy for the refind engine.

Everything raised on purpose derives from RefindError so the CLI can map
data problems to exit code 1 with a one-line diagnostic.
"""


class RefindError(Exception):
    """Base class for all refind-specific errors."""


class VocabularyMismatchError(RefindError):
    """Topic vectors are defined over different vocabularies."""


class EmptyCorpusError(RefindError):
    """An operation that needs at least one document got none."""


class EventInvariantError(RefindError):
    """An experience event violates its structural invariants."""


class UnknownQuestionError(RefindError):
    """Answer references a question that was never asked or does not exist."""


class UnknownAttributeError(RefindError):
    """A question targets an attribute the candidate view does not carry."""


class InvalidAnswerError(RefindError):
    """An answer value does not fit the question it responds to."""


class EmptySessionError(RefindError):
    """Session metrics requested before any question was asked."""


class TooFewExamplesError(RefindError):
    """Model fitting needs at least two training examples."""


class DimensionMismatchError(RefindError):
    """Training examples do not share one feature dimension."""


class UnfittedModelError(RefindError):
    """Prediction requested from a model that has not been fitted."""


class ModelSchemaError(RefindError):
    """A persisted model file is malformed or from an unknown schema."""


class EmptyCandidateSetError(RefindError):
    """Ranking requested for an empty candidate set."""


class TooFewTasksError(RefindError):
    """A simulation operation needs more re-finding tasks than it got."""


class EmptyResultsError(RefindError):
    """Evaluation requested over zero episode results."""


class ConfigError(RefindError):
    """A key=value config file could not be parsed."""
