"""Exception types shared across the package."""


class OdcaError(Exception):
    """Base class for errors raised by this package."""


class DimensionError(OdcaError, ValueError):
    """Vector, matrix or space dimensions do not fit together."""


class AlphabetError(OdcaError, ValueError):
    """Unknown symbol, or two machines over different alphabets."""


class ValidationError(OdcaError, ValueError):
    """A machine or document breaks a structural invariant."""

    def __init__(self, violations):
        if isinstance(violations, str):
            violations = [violations]
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class ResourceLimitError(OdcaError):
    """A computation would exceed a configured size cap."""


class DeadlineExceeded(ResourceLimitError):
    """A cooperative deadline passed before the search finished."""


class NotCounterDeterministic(OdcaError, ValueError):
    """A weighted OCA has two runs on one word with different counter values."""

    def __init__(self, violation):
        self.violation = violation
        super().__init__(
            f"word {violation.word!r} reaches counter values "
            f"{violation.counters[0]} and {violation.counters[1]}"
        )
