"""Exception types shared by the engines."""


class NodalGeomError(Exception):
    """Base class for all package errors."""


class InputError(NodalGeomError):
    """Invalid user input (CLI exit code 2)."""


class ConsistencyError(NodalGeomError):
    """Internal cross-check failed (CLI exit code 3)."""


class ColengthMismatch(InputError):
    pass


class NotFiniteColength(InputError):
    pass


class IndexOutOfRange(InputError):
    pass


class InvalidAlgebra(InputError):
    pass


class RelationViolated(InputError):
    pass


class MissingPairing(InputError):
    pass


class MissingInput(InputError):
    pass


class DimensionCap(InputError):
    pass


class BoundExceeded(InputError):
    pass


class AmbientMismatch(InputError):
    pass


class GradingError(InputError):
    pass


class NotDivisible(ConsistencyError):
    pass


class NonPolynomialQuotient(ConsistencyError):
    pass


class NonzeroRemainder(ConsistencyError):
    pass


class NoRuleApplies(ConsistencyError):
    def __init__(self, monomial_text):
        super().__init__(f"no pushforward rule applies to {monomial_text}")
        self.monomial_text = monomial_text


class InconsistentVerdicts(ConsistencyError):
    pass
