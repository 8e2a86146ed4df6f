"""Exception hierarchy shared across the engine."""

from __future__ import annotations


class NLComposeError(Exception):
    """Base class for every error raised by this package."""


# --- registry / manifests ---------------------------------------------------


class ManifestSyntaxError(NLComposeError):
    """Manifest text violates the manifest grammar."""

    def __init__(self, line: int, reason: str):
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason


class InvariantError(NLComposeError):
    """A descriptor violates a structural invariant (empty capabilities, ...)."""


class UnknownService(NLComposeError):
    """A service id is not present in the registry snapshot."""


# --- embeddings -------------------------------------------------------------


class FormatError(NLComposeError):
    """Word-vector stream row has the wrong arity."""


class DimensionError(NLComposeError):
    """Word-vector rows disagree on dimensionality."""


class DimensionMismatch(NLComposeError):
    """Two vectors of different dimensions were combined."""


class EmptyInput(NLComposeError):
    """Text tokenized to nothing."""


class EmptyIndex(NLComposeError):
    """Ranking was attempted against an empty corpus index."""


# --- matching ---------------------------------------------------------------


class EmptyCandidates(NLComposeError):
    """Selection was attempted on an empty candidate list."""


# --- rules / composition ----------------------------------------------------


class RuleSyntaxError(NLComposeError):
    """Rule text violates the rule grammar."""

    def __init__(self, line: int, reason: str):
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason


class RuleTypeError(NLComposeError, TypeError):
    """A condition compared incompatible value types."""


class IterationCapExceeded(NLComposeError):
    """Forward chaining did not reach quiescence within the pass cap."""


class NoViableConcrete(NLComposeError):
    """Every concrete candidate was filtered out by QoS requirements."""


class ExecutionError(NLComposeError):
    """A service executor reported a failure."""


class ExecutorTimeout(ExecutionError):
    """A service executor exceeded the per-invocation timeout."""


# --- sessions / engine ------------------------------------------------------


class PendingQuestionOpen(NLComposeError):
    """A new utterance arrived while a question to the user is still open."""


class InvalidAnswer(NLComposeError):
    """An answer did not fit the pending question (bad index, unparseable value)."""


class UnknownSession(NLComposeError):
    """Session id is not registered with the engine."""


# --- metrics ----------------------------------------------------------------


class EmptyCounts(NLComposeError):
    """Confusion counts sum to zero."""


class NonPositiveSample(NLComposeError):
    """A duration sample was zero or negative."""


class NonPositiveInput(NLComposeError):
    """An effort-model input was zero or negative."""
