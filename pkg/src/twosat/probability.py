"""Satisfiability probabilities in the (n, p) model.

Each of the ``2n(n-1)`` possible clauses is present independently with
probability ``p``. With ``w = p/(1-p)``,

    P(sat) = 2**n * n! * (1-p)**(n(n-1)) * [z^n] SAT_ddot(z, w).
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from .catalog import build_sat, sat_coefficient
from .coeffring import IntervalRing
from .errors import InfeasibleExact, PrecisionCeiling

__all__ = [
    "EXACT_MAX_N",
    "MAX_PRECISION",
    "sat_polynomial",
    "prob_exact",
    "prob_interval",
    "initial_precision",
]

EXACT_MAX_N = 40
MAX_PRECISION = 1 << 20


@lru_cache(maxsize=64)
def sat_polynomial(n):
    """Integer coefficients ``a_{n,m}`` (index ``m``) of satisfiable 2-CNFs on ``n`` variables."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n > EXACT_MAX_N:
        raise InfeasibleExact(f"exact SAT polynomial limited to n <= {EXACT_MAX_N}, got {n}")
    coeff = build_sat(n)[n]
    return coeff.integer_poly(2 ** n * math.factorial(n), n * (n - 1))


def _check_p(p):
    p = Fraction(p)
    if not 0 <= p < 1:
        raise ValueError(f"clause probability must lie in [0, 1), got {p}")
    return p


def prob_exact(n, p):
    """Exact probability that a random ``(n, p)`` formula is satisfiable."""
    p = _check_p(p)
    poly = sat_polynomial(n)
    total = 2 * n * (n - 1)
    if p == 0:
        return Fraction(poly[0]) if poly else Fraction(0)
    q = 1 - p
    return sum((Fraction(a) * p ** m * q ** (total - m) for m, a in enumerate(poly) if a),
               Fraction(0))


def initial_precision(n, target_width):
    """Starting mantissa width for :func:`prob_interval`.

    The interval recurrence for ``1/G`` loses about ``log2(n!) + n/2`` bits,
    so start above that plus the bits the target width asks for.
    """
    lost = math.lgamma(n + 1) / math.log(2) + n
    wanted = max(0.0, -math.log2(float(target_width))) if target_width < 1 else 0.0
    return max(128, 4 * n, int(lost + wanted) + 64)


def _sat_probability_in(ring, n):
    coeff = sat_coefficient(n, ring)
    return ring.onepw(-n * (n - 1), 2 ** n * math.factorial(n)) * coeff


def prob_interval(n, p, target_width, precision=None, max_precision=MAX_PRECISION):
    """Certified enclosure of the satisfiability probability.

    ``p`` is a rational, or a ``(lo, hi)`` pair of rationals when the clause
    probability itself is only known to lie in a range. Precision doubles
    until the enclosure is narrower than ``target_width``.
    """
    if target_width <= 0:
        raise ValueError("target width must be positive")
    if isinstance(p, tuple):
        p_lo, p_hi = _check_p(p[0]), _check_p(p[1])
    else:
        p_lo = p_hi = _check_p(p)
    w0 = (p_lo / (1 - p_lo), p_hi / (1 - p_hi))
    prec = initial_precision(n, target_width) if precision is None else int(precision)
    target = Fraction(target_width)
    previous = None
    while True:
        if prec > max_precision:
            raise PrecisionCeiling(
                f"n={n}: width target {float(target):g} not met below {max_precision} bits")
        ring = IntervalRing(prec, w0)
        result = _sat_probability_in(ring, n)
        width = Fraction(*result.width.as_integer_ratio())
        if width <= target:
            return result
        # a p range (rather than a point) bounds the width from below; stop
        # once extra bits no longer buy anything
        if previous is not None and width * 2 > previous:
            raise PrecisionCeiling(
                f"n={n}: width {float(width):.3g} stalled above target {float(target):g} "
                f"at {prec} bits")
        previous = width
        prec *= 2
