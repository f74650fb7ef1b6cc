"""Exception hierarchy shared by every computation module."""


class BSRootsError(Exception):
    """Base class; ``field`` names the offending input when known."""

    def __init__(self, message, field=None):
        super().__init__(message)
        self.field = field


class HypothesisError(BSRootsError):
    """An input violates a mathematical precondition of the requested operation."""


class IrreducibleRemainder(BSRootsError):
    pass


class NoSolution(BSRootsError):
    pass


class VariableMismatch(BSRootsError):
    pass


class BoundsExhausted(BSRootsError):
    def __init__(self, message, bounds=None, field=None):
        super().__init__(message, field)
        self.bounds = bounds


class MissingRootMinusOne(HypothesisError):
    pass


class NonzeroShift(HypothesisError):
    pass


class PreconditionViolated(HypothesisError):
    pass


class HypothesisViolated(HypothesisError):
    pass


class ZeroPolynomial(HypothesisError):
    pass


class NonvanishingAtOrigin(HypothesisError):
    pass


class DegenerateInput(HypothesisError):
    pass


class NonReduced(HypothesisError):
    pass


class ParseError(BSRootsError):
    pass
