"""Exception types shared across the package."""


class TricatError(Exception):
    """Base class for all errors raised by this package."""


class FieldMismatch(TricatError):
    pass


class ShapeMismatch(TricatError):
    pass


class NoSolution(TricatError):
    """A linear system has no solution (a universal-property lift failed)."""


class PreconditionViolated(TricatError):
    pass


class NotATriangle(TricatError):
    pass


class NotExact(TricatError):
    pass


class Undecided(TricatError):
    """A bounded search finished without reaching a verdict."""


class SaturationBudgetExceeded(TricatError):
    pass
