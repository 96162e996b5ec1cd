"""Exception hierarchy shared by every unilab module."""

from __future__ import annotations


class UnilabError(Exception):
    """Base class. ``path`` locates the failing node when raised during DSL compilation."""

    def __init__(self, message: str, path: str | None = None):
        super().__init__(message)
        self.message = message
        self.path = path

    def with_path(self, path: str) -> "UnilabError":
        if self.path is None:
            self.path = path
        return self

    def __str__(self) -> str:
        if self.path:
            return f"{self.message} (at {self.path})"
        return self.message


class DomainError(UnilabError, ValueError):
    pass


class NonMonotoneDetected(UnilabError, ValueError):
    pass


class NonConvergence(UnilabError, ArithmeticError):
    pass


class IndeterminateSum(UnilabError, ArithmeticError):
    """Raised for (+inf) + (-inf) when no infinity convention is attached."""


class InvalidGenerator(UnilabError, ValueError):
    def __init__(self, message: str, report=None, path: str | None = None):
        super().__init__(message, path)
        self.report = report


class CarrierError(UnilabError, ValueError):
    pass


class ParameterError(UnilabError, ValueError):
    pass


class AxiomError(UnilabError, ValueError):
    def __init__(self, message: str, report=None, path: str | None = None):
        super().__init__(message, path)
        self.report = report


class PreconditionError(UnilabError, ValueError):
    def __init__(self, message: str, report=None, path: str | None = None):
        super().__init__(message, path)
        self.report = report


class ClassError(UnilabError, ValueError):
    pass
