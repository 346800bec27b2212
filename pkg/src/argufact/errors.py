"""Exception hierarchy shared across the package."""


class ArgufactError(Exception):
    """Base class for all package errors."""


class ValidationError(ArgufactError):
    """A structural or value constraint was violated."""


class DuplicateId(ValidationError):
    pass


class DanglingEdge(ValidationError):
    pass


class DisjointnessViolation(ValidationError):
    """The same ordered pair appears in both the attack and support relations."""


class RangeViolation(ValidationError):
    """A base score or strength fell outside [0, 1]."""


class UnknownId(ValidationError):
    pass


class SchemaError(ValidationError):
    """Malformed serialized document; the message carries the offending path."""


class InvalidParams(ValidationError):
    pass


class PremiseViolation(ValidationError):
    """A property instance does not satisfy its structural premise."""


class NonConvergence(ArgufactError):
    """The solver hit its time horizon before meeting the termination criterion."""


class EmptyCorpus(ArgufactError):
    pass


class DuplicateDocId(ArgufactError):
    pass


class AnnotationError(ArgufactError):
    """Base class for relation-annotation failures."""


class MalformedResponse(AnnotationError):
    """Model output is not the single JSON object the prompt demands."""


class AnnotationMismatch(AnnotationError):
    """Model output references unknown ids, or misses/duplicates known ones."""


class ClientError(AnnotationError):
    """Completion transport failed after bounded retries."""

    def __init__(self, message, status=None):
        super().__init__(message)
        self.status = status


class MissingFixture(AnnotationError):
    """The mock client has no canned response for this prompt."""
