"""Exception types raised across the package."""


class CesError(Exception):
    """Base class for every error this package raises deliberately.

    Errors re-raised by pipeline stages carry a ``stage`` attribute naming
    the step that failed.
    """

    stage: str | None = None


class InvalidInputError(CesError, ValueError):
    """Input violates a structural precondition (shape, finiteness, size)."""


class DegenerateInputError(CesError, ValueError):
    """A correlation coefficient is undefined on the given input.

    Raised instead of silently returning 0 or NaN, e.g. for a constant
    vector where the coefficient's denominator vanishes.
    """


class BracketingError(CesError, RuntimeError):
    """A root solve found no sign change, even after bracket expansion."""

    def __init__(self, message: str, lo: float | None = None, hi: float | None = None):
        super().__init__(message)
        self.lo = lo
        self.hi = hi


class NumericError(CesError, ArithmeticError):
    """A numeric routine produced or received a non-finite value."""


class CampaignError(CesError, RuntimeError):
    """A simulation replicate failed; carries the replicate index and stream key."""

    def __init__(self, message: str, replicate: int | None = None, key: int | None = None):
        super().__init__(message)
        self.replicate = replicate
        self.key = key


class CsvFormatError(CesError, ValueError):
    """A CSV input file does not match the expected two-column schema."""

    def __init__(self, message: str, line: int | None = None):
        super().__init__(message)
        self.line = line
