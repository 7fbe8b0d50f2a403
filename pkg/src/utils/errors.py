# src/utils/errors.py


class SkeletalLearningError(Exception):
    """Base class for every error raised by the learning toolkit."""


class InvalidPositionError(SkeletalLearningError):
    """A position does not belong to Pos(t)."""


class TreeSyntaxError(SkeletalLearningError):
    """Text could not be parsed as a tree or context."""


class GrammarFormatError(SkeletalLearningError):
    """A grammar file does not follow the line-oriented grammar format."""


class GrammarValidationError(SkeletalLearningError):
    """A grammar parsed but violates a Cfg invariant."""


class MalformedDocumentError(SkeletalLearningError):
    """An automaton document is missing fields or has inconsistent content."""


class QueryTooDeepError(SkeletalLearningError):
    """A cover-mode membership query asked about a tree deeper than ell."""


class ClosureViolationError(SkeletalLearningError):
    """Adding a row or column would break subterm or prefix closure."""


class NoRepresentativeError(SkeletalLearningError):
    """No row of S is similar to the requested tree."""


class TableNotClosedError(SkeletalLearningError):
    """The automaton of an observation table was requested while it is not closed."""


class TableNotConsistentError(SkeletalLearningError):
    """The automaton of an observation table was requested while it is not consistent."""


class BoundViolationError(SkeletalLearningError):
    """A session exceeded one of the step-count bounds."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__(f"Bound violation: {', '.join(self.violations)}")


class IterationCeilingError(SkeletalLearningError):
    """The learner main loop ran past its iteration ceiling."""


class GrammarGenerationError(SkeletalLearningError):
    """The random grammar generator could not satisfy its parameters."""
