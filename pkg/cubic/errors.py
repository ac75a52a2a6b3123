"""Exception hierarchy for the cubic residue toolkit.

Library code raises these; only the command line catches them, logs the
message and turns ``exit_code`` into the process status.
"""

from __future__ import annotations


class CubicError(Exception):
    """Base class for every error raised by the package."""

    exit_code = 2


class InvalidInputError(CubicError, ValueError):
    exit_code = 2


class NotPrimeError(InvalidInputError):
    exit_code = 2


class ResidueClassError(InvalidInputError):
    """A prime lies in the wrong residue class mod 3 for the request."""

    exit_code = 2


class NotPrimaryError(InvalidInputError):
    exit_code = 2


class ParityError(InvalidInputError):
    exit_code = 2


class DegenerateGammaError(InvalidInputError):
    """Numerator and denominator of a slope function share a zero mod q."""

    exit_code = 2


class DegenerateCubicError(InvalidInputError):
    exit_code = 2


class ConfigError(InvalidInputError):
    exit_code = 2


class OracleLimitError(InvalidInputError):
    exit_code = 2


class FactorizationError(CubicError):
    exit_code = 3

    def __init__(self, message: str, cofactor: int):
        super().__init__(message)
        self.cofactor = cofactor


class NotCoprimeError(CubicError):
    exit_code = 4

    def __init__(self, message: str, divisor: int):
        super().__init__(message)
        self.divisor = divisor


class FallbackExhaustedError(CubicError):
    """No auxiliary prime below the configured bound settled a character value."""

    exit_code = 5


class InternalConsistencyError(CubicError):
    """Two computations that must agree did not."""

    exit_code = 5
