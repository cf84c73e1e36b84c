"""Exception types raised by hecke2."""


class Hecke2Error(RuntimeError):
    """Internal consistency failure (a computed identity did not hold)."""


class NotAPolynomial(Hecke2Error):
    """A q-series is not a polynomial in Delta of the requested degree."""


class SolverInconsistent(Hecke2Error):
    """The linear system determining F_p has no consistent solution."""


class PreconditionError(ValueError):
    """An operation was called outside its contract."""


class FormParseError(ValueError):
    """Text could not be parsed as a form in Delta."""
