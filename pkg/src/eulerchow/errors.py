"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class EulerChowError(Exception):
    """Base class for every error raised by the engine."""


class RankMismatch(EulerChowError):
    pass


class DegreeOverflow(EulerChowError):
    """A multidegree component left the signed 64-bit range."""


class NonPositiveMonomial(EulerChowError):
    def __init__(self, monomial, value):
        self.monomial = tuple(monomial)
        self.value = value
        super().__init__(
            f"monomial {self.monomial} has functional value {value} < 1; "
            "expansion would not terminate"
        )


class NoPositiveFunctional(EulerChowError):
    pass


class UnboundedRegion(EulerChowError):
    pass


class ZeroMonomial(EulerChowError):
    pass


class SpecMismatch(EulerChowError):
    pass


class InfiniteFiber(EulerChowError):
    pass


class NotCoordinateSplit(EulerChowError):
    pass


class ZeroImageMonomial(EulerChowError):
    pass
