"""Exception hierarchy for segcvp."""


class SegCvpError(Exception):
    """Base class for all package errors."""


class InvalidCoefficients(SegCvpError, ValueError):
    pass


class InvalidInstance(SegCvpError, ValueError):
    pass


class InternalError(SegCvpError, RuntimeError):
    """A solver reached a state its invariants rule out."""


class NonConsecutiveGenerator(SegCvpError, ValueError):
    def __init__(self, index):
        super().__init__(f"generator {index} does not have consecutive ones")
        self.index = index


class EmptyGenerator(SegCvpError, ValueError):
    def __init__(self, index):
        super().__init__(f"generator {index} is all-zero")
        self.index = index


class UnbalancedDemands(SegCvpError, ValueError):
    pass


class InvalidLambda(SegCvpError, ValueError):
    pass


class BudgetExceeded(SegCvpError, RuntimeError):
    pass


class TooManyVariables(SegCvpError, ValueError):
    pass


class MalformedFormula(SegCvpError, ValueError):
    pass


class FormatError(SegCvpError, ValueError):
    """Raised when an instance, solution or formula file cannot be parsed."""
