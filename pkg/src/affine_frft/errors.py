"""Exception hierarchy.

Every error carries the CLI exit code it maps to, so the command line
front end never needs its own translation table.
"""

__all__ = [
    "FrftError",
    "InvalidLength",
    "NearSingularAngle",
    "IndexOutOfRange",
    "AllocationFailure",
    "LengthMismatch",
    "BranchUnsupported",
    "SpectralNull",
    "ParseError",
    "IoError",
    "VerificationFailure",
    "EXIT_OK",
    "EXIT_USAGE",
    "EXIT_PARSE",
    "EXIT_LENGTH",
    "EXIT_BRANCH",
    "EXIT_NULL",
    "EXIT_VERIFY",
    "EXIT_IO",
]

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_LENGTH = 3
EXIT_BRANCH = 4
EXIT_NULL = 5
EXIT_VERIFY = 6
EXIT_IO = 7


class FrftError(Exception):
    exit_code = EXIT_USAGE


class InvalidLength(FrftError, ValueError):
    exit_code = EXIT_USAGE


class NearSingularAngle(FrftError, ValueError):
    exit_code = EXIT_USAGE


class IndexOutOfRange(FrftError, IndexError):
    exit_code = EXIT_USAGE


class AllocationFailure(FrftError, MemoryError):
    exit_code = EXIT_USAGE


class LengthMismatch(FrftError, ValueError):
    exit_code = EXIT_LENGTH


class BranchUnsupported(FrftError, ValueError):
    exit_code = EXIT_BRANCH


class SpectralNull(FrftError, ZeroDivisionError):
    """Raised by the equalizer when the channel spectrum has (near) zeros.

    Attributes
    ----------
    indices : list of int
        Every fractional-domain index ``k`` with ``|H[k]| < eps``.
    eps : float
        Threshold that was applied.
    """

    exit_code = EXIT_NULL

    def __init__(self, indices, eps):
        self.indices = [int(k) for k in indices]
        self.eps = float(eps)
        super().__init__(
            f"channel spectrum below {self.eps:.3g} at k = {self.indices}"
        )


class ParseError(FrftError, ValueError):
    exit_code = EXIT_PARSE

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


class IoError(FrftError, OSError):
    exit_code = EXIT_IO


class VerificationFailure(FrftError):
    exit_code = EXIT_VERIFY
