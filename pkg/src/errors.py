"""Exception hierarchy shared by every workbench module."""

from typing import Optional


class DmpError(Exception):
    """Base exception for workbench errors."""
    pass


class InvalidInputError(DmpError, ValueError):
    """Input violates an operation precondition (including dimension mismatch)."""
    pass


class ParseError(InvalidInputError):
    """Malformed artifact file."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ConfigError(InvalidInputError):
    """Invalid run configuration file."""

    def __init__(self, message: str, key: Optional[str] = None):
        self.key = key
        super().__init__(message)


class NumericalError(DmpError):
    """Numerical failure (non-finite values, singular systems, ...)."""
    pass


class TrainingDivergedError(NumericalError):
    """Training produced a non-finite loss."""

    def __init__(self, epoch: int, loss: float):
        self.epoch = epoch
        self.loss = loss
        super().__init__(f"Training diverged at epoch {epoch}: loss={loss}")


class UndefinedCorrelationError(NumericalError):
    """Correlation requested on a zero-variance column."""
    pass


class StageError(DmpError):
    """A pipeline stage failed; wraps the underlying error."""

    def __init__(self, stage: str, cause: Exception):
        self.stage = stage
        self.cause = cause
        super().__init__(f"Stage '{stage}' failed: {cause}")
