"""Exception hierarchy shared by every module of the package."""


class CurveZetaError(Exception):
    """Base class for all errors raised by curvezeta."""


class DomainError(CurveZetaError):
    """Inputs are well formed but mathematically unacceptable."""


class InvalidPrimePower(DomainError):
    pass


class EmptyCounts(DomainError):
    pass


class LengthMismatch(DomainError):
    pass


class UnsupportedGenus(DomainError):
    pass


class CtxMismatch(DomainError):
    pass


class DivisionByZero(DomainError, ZeroDivisionError):
    pass


class BudgetExceeded(DomainError):
    """Raised when a brute-force enumeration would exceed the work cap."""

    def __init__(self, needed, budget):
        super().__init__(f"enumeration needs {needed} evaluations, budget is {budget}")
        self.needed = needed
        self.budget = budget


class ParseError(CurveZetaError):
    """Malformed polynomial text; ``pos`` is the 0-based offending column."""

    def __init__(self, message, src="", pos=0):
        self.src = src
        self.pos = pos
        pointer = f"\n  {src}\n  {' ' * pos}^" if src else ""
        super().__init__(f"{message} at position {pos}{pointer}")


class NotHomogeneous(ParseError):
    pass


class ZeroPolynomial(ParseError):
    pass
