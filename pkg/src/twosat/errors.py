"""Exception types raised across the package."""


class TwoSatError(Exception):
    """Base class for all errors raised by :mod:`twosat`."""


class NonIntegerCount(TwoSatError):
    """A cleared generating-function coefficient was not an integer polynomial."""


class PoleAtMinusOne(TwoSatError):
    """Evaluation of a ``(1+w)``-denominator element at ``w = -1``."""


class RingMismatch(TwoSatError):
    """Binary series operation on operands from different rings or orders."""


class BadConstantTerm(TwoSatError):
    def __init__(self, kind, constant):
        super().__init__(f"{kind}: inadmissible constant term {constant!r}")
        self.kind = kind
        self.constant = constant


class OrderExceeded(TwoSatError):
    """Coefficient requested beyond the truncation order of a series."""


class TooLarge(TwoSatError):
    """Brute-force enumeration requested beyond its feasible size."""


class InfeasibleExact(TwoSatError):
    """Exact-ring computation requested for too large an ``n``."""


class PrecisionCeiling(TwoSatError):
    """Interval computation could not reach its target width within the precision cap."""


class RankDeficient(TwoSatError):
    """Least-squares design matrix is numerically singular at working precision."""
