"""Exception hierarchy shared by the pricing modules."""


class ExtendoError(Exception):
    """Base class for all errors raised by this package."""


class InputError(ExtendoError, ValueError):
    """Invalid user input: malformed curve, contract or configuration."""


class CurveError(InputError):
    """A term structure violates its invariants."""


class CurveHorizonError(CurveError):
    """A curve was queried beyond its last segment."""


class ContractError(InputError):
    """A contract specification violates its invariants."""


class DomainError(InputError):
    """Argument outside the mathematical domain of a function (NaN, a > b, ...)."""


class UnsupportedSettingError(InputError):
    """Operation only defined for constant curves was given time-dependent ones."""


class ErrataGateError(InputError):
    """An as-published (erroneous) formula was requested without opting in."""


class SolverError(ExtendoError, ArithmeticError):
    """Root finder failed to converge; carries the last bracket."""

    def __init__(self, message, bracket=None):
        super().__init__(message)
        self.bracket = bracket
