"""Exception hierarchy shared by the domain modules and the CLI.

Every error carries a machine-readable ``code`` (the name used in responses)
and the process ``exit_code`` the command line reports for it.
"""

from __future__ import annotations

from realsurf_app.constants.cli_constants import (
    EXIT_INTERNAL_ERROR,
    EXIT_INVALID_INPUT,
    EXIT_PARSE_ERROR,
    EXIT_SCHEMA_ERROR,
    EXIT_UNSUPPORTED_INPUT,
    EXIT_WITNESS_ERROR,
)


class RealSurfError(Exception):
    """Base class for all errors raised by RealSurf."""

    code: str = "Error"
    exit_code: int = EXIT_INTERNAL_ERROR


class InvalidInputError(RealSurfError, ValueError):
    """Mathematically invalid input to an operation."""

    exit_code = EXIT_INVALID_INPUT


class ZeroPolynomialError(InvalidInputError):
    code = "ZeroPolynomial"


class ZeroFunctionError(InvalidInputError):
    code = "ZeroFunction"


class DegenerateTripleError(InvalidInputError):
    code = "DegenerateTriple"


class EmptyManifoldError(InvalidInputError):
    code = "EmptyManifold"


class BadIndexError(InvalidInputError, IndexError):
    code = "BadIndex"


class RealBlowupOnEmptyLocusError(InvalidInputError):
    code = "RealBlowupOnEmptyLocus"


class InvalidMinimalModelError(InvalidInputError):
    code = "InvalidMinimalModel"


class BadRankError(InvalidInputError):
    code = "BadRank"


class OutOfRangeError(InvalidInputError):
    code = "OutOfRange"


class LengthMismatchError(InvalidInputError):
    code = "LengthMismatch"


class InvalidRadicandError(InvalidInputError):
    code = "InvalidRadicand"


class NonRationalRootError(RealSurfError):
    """An exact decision needs rational roots but an irrational one was found."""

    code = "NonRationalRoot"
    exit_code = EXIT_UNSUPPORTED_INPUT


class WitnessError(RealSurfError, ValueError):
    """The isotropic witness handed to the splitting routine is unusable."""

    exit_code = EXIT_WITNESS_ERROR


class NotAWitnessError(WitnessError):
    code = "NotAWitness"


class DegenerateWitnessError(WitnessError):
    code = "DegenerateWitness"


class SingularRestrictionError(WitnessError):
    code = "SingularRestriction"


class TableConsistencyError(RealSurfError):
    """Two independently stored classification facts disagree."""

    code = "TableConsistency"


class ParseError(RealSurfError):
    code = "ParseError"
    exit_code = EXIT_PARSE_ERROR


class SchemaError(RealSurfError):
    code = "SchemaError"
    exit_code = EXIT_SCHEMA_ERROR


def exit_code_for(code: str) -> int:
    """Process exit code for a machine-readable error code."""
    pending: list[type[RealSurfError]] = [RealSurfError]
    while pending:
        error_class = pending.pop()
        if error_class.code == code:
            return error_class.exit_code
        pending.extend(error_class.__subclasses__())
    return EXIT_INTERNAL_ERROR
