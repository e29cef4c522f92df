# spm/core/errors.py


class SpmError(Exception):
    """Base class for every error raised by the package.

    `exit_code` is the process status the CLI reports for this error.
    """
    exit_code = 1


class ColumnOutOfRangeError(SpmError, ValueError):
    exit_code = 2


class NotAPartitionError(SpmError, ValueError):
    """Raised when a sequence (or a grain addition) is not a valid partition."""
    exit_code = 2


class RuleNotApplicableError(SpmError):
    """The SPM rule cannot fire on the requested column (no cliff there)."""


class GrainCountMismatchError(SpmError, ValueError):
    exit_code = 2


class CharacterizationError(SpmError, ValueError):
    """Input is a partition but not an element of any SPM(n)."""
    exit_code = 2


class NodeNotInDiagramError(SpmError, KeyError):
    exit_code = 2


class InsufficientDepthError(SpmError):
    pass


class UnknownVariantError(SpmError, ValueError):
    exit_code = 2


class BudgetExceededError(SpmError):
    exit_code = 3

    def __init__(self, budget: int, what: str = "nodes"):
        super().__init__(f"budget of {budget} {what} exceeded (raise SPM_BUDGET or --budget)")
        self.budget = budget


class MalformedDocumentError(SpmError, ValueError):
    """A stored diagram document that does not describe a diagram."""
    exit_code = 2
