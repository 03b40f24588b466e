"""Exception hierarchy shared by every comax module."""


class ComaxError(Exception):
    """Base class for all library errors."""


class RingMismatch(ComaxError, ValueError):
    pass


class InvalidRing(ComaxError, ValueError):
    pass


class MalformedIdeal(ComaxError, ValueError):
    pass


class NotComaximal(ComaxError, ValueError):
    pass


class UnsupportedRing(ComaxError, NotImplementedError):
    pass


class BudgetExceeded(ComaxError, RuntimeError):
    """An enumeration or search hit its configured cap."""


class StabilizationError(BudgetExceeded):
    """The chain l_M(X) <= l_M(X^2) <= ... did not settle within the bound."""


class ConditionNotEstablished(ComaxError):
    """The exponent search ran out of budget before finding a covering
    intersection for some generator.  This is *not* a proof that the
    condition fails."""

    def __init__(self, message, generator=None, annihilator=None):
        super().__init__(message)
        self.generator = generator
        self.annihilator = annihilator


class VerificationError(ComaxError, AssertionError):
    """An internally produced certificate failed its own check."""


class NotTorsion(ComaxError, ValueError):
    """A generator has zero annihilator where a torsion module is required."""
