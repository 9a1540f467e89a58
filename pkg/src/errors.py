"""Exception hierarchy shared by the predictors, generators, oracle and CLI."""

from typing import Optional


class FplabError(Exception):
    """Base class for every error raised by this package."""

    exit_code = 1


class ValidationError(FplabError, ValueError):
    """An input vector or sequence violates its invariants."""

    exit_code = 2


class NotAnHVectorError(ValidationError):
    """A sequence is not the first difference of a points-in-P2 Hilbert function."""


class UnsupportedError(FplabError):
    """The request is well-formed but outside what is implemented or tabulated."""

    exit_code = 2


class InconsistencyError(FplabError, RuntimeError):
    """Internal arithmetic or bookkeeping contradiction (signals a bug)."""

    exit_code = 1


class OracleError(InconsistencyError):
    """The oracle hit its degree cap or produced impossible data."""


class DegeneracyError(FplabError):
    """Random generation failed to produce a non-degenerate sample."""

    exit_code = 3

    def __init__(self, message: str, seed: Optional[int] = None):
        if seed is not None:
            message = f"{message} (seed={seed})"
        super().__init__(message)
        self.seed = seed


class SamplingError(DegeneracyError):
    """No support with the requested Hilbert function was found within budget."""


def exit_code_for(exc: BaseException) -> int:
    """Map an exception to the CLI exit-code contract."""
    if isinstance(exc, FplabError):
        return exc.exit_code
    return 1
