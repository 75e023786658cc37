"""Errors."""


class NCPSError(Exception):
    """Base error for the series engine."""


class InputError(NCPSError, ValueError):
    """Malformed, mismatched or out-of-cap input."""


class DomainError(NCPSError, ValueError):
    """Operation applied outside the class it is defined on."""


class PostconditionError(NCPSError, ArithmeticError):
    """A computed result violates its stated postcondition."""
