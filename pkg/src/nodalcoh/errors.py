"""Exception hierarchy shared by all modules."""


class NodalCohomologyError(Exception):
    """Base class for every error raised by this package."""


class CurveError(NodalCohomologyError, ValueError):
    """A curve description violates the model's invariants."""


class InvalidComponentReference(CurveError):
    pass


class EmptyBounds(CurveError):
    pass


class MultidegreeLengthMismatch(CurveError):
    pass


class EmptyMultidegreeSet(CurveError):
    pass


class NotCompactType(NodalCohomologyError):
    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"curve is not of compact type (witness: {witness})")


class AlgebraError(NodalCohomologyError, ValueError):
    pass


class DuplicateLabel(AlgebraError):
    pass


class InvalidDegree(AlgebraError):
    pass


class OddDegreeForPolynomialGenerator(AlgebraError):
    pass


class MalformedElement(AlgebraError):
    pass


class UnknownGenerator(AlgebraError):
    pass


class NegativeCoefficient(NodalCohomologyError, ArithmeticError):
    pass


class InternalMismatch(NodalCohomologyError, AssertionError):
    pass


class CapTooSmall(NodalCohomologyError, ValueError):
    pass
