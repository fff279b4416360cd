"""Truncated power series in ``z`` over a coefficient ring.

Coefficient ``c[n]`` stores the *full* EGF coefficient ``a_n(w) / n!``, so the
plain Cauchy product already is the labelled (binomial) product. Graphic and
Implication GFs are obtained from EGFs by coefficient-wise weighting with
powers of ``(1+w)`` (:func:`coeffwise_weight`), not by a separate type.
"""
from __future__ import annotations

import math
from fractions import Fraction

from .coeffring import EXACT
from .errors import BadConstantTerm, OrderExceeded, RingMismatch

__all__ = [
    "TruncatedSeries",
    "series_mul",
    "series_analytic",
    "exp",
    "log",
    "sqrt",
    "inv",
    "hadamard_exp",
    "scale_z",
    "coeffwise_weight",
    "mul_coefficient",
]


class TruncatedSeries:
    """``sum(c[n] z**n for n <= order)`` with coefficients in ``ring``."""

    __slots__ = ("coeffs", "ring")

    def __init__(self, coeffs, ring=EXACT):
        self.coeffs = tuple(coeffs)
        self.ring = ring
        if not self.coeffs:
            raise ValueError("a truncated series needs at least one coefficient")

    # -- constructors ------------------------------------------------------
    @classmethod
    def from_function(cls, order, ring, fn):
        """Series whose ``n``-th stored coefficient is ``fn(n)``."""
        return cls([fn(n) for n in range(order + 1)], ring)

    @classmethod
    def from_rationals(cls, values, ring=EXACT):
        return cls([ring.scalar(v) for v in values], ring)

    @classmethod
    def from_egf(cls, order, ring, scalar, exponent):
        """EGF with ``a_n = scalar(n) * (1+w)**exponent(n)``, i.e. stored ``a_n / n!``."""
        return cls([ring.onepw(exponent(n), Fraction(scalar(n), math.factorial(n)))
                    for n in range(order + 1)], ring)

    @classmethod
    def constant(cls, order, ring, value=1):
        return cls([ring.scalar(value)] + [ring.zero()] * order, ring)

    # -- basic protocol ----------------------------------------------------
    @property
    def order(self):
        return len(self.coeffs) - 1

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, n):
        if n > self.order:
            raise OrderExceeded(f"coefficient {n} requested from a series of order {self.order}")
        return self.coeffs[n]

    def egf_coefficient(self, n):
        """``a_n(w)``, i.e. ``n!`` times the stored coefficient."""
        return self[n] * math.factorial(n)

    def _check(self, other):
        if not isinstance(other, TruncatedSeries):
            raise TypeError(f"expected a TruncatedSeries, got {type(other).__name__}")
        if self.ring != other.ring or self.order != other.order:
            raise RingMismatch(
                f"operands differ: ({self.ring!r}, N={self.order}) vs "
                f"({other.ring!r}, N={other.order})")

    def __add__(self, other):
        self._check(other)
        return TruncatedSeries([a + b for a, b in zip(self.coeffs, other.coeffs)], self.ring)

    def __sub__(self, other):
        self._check(other)
        return TruncatedSeries([a - b for a, b in zip(self.coeffs, other.coeffs)], self.ring)

    def __neg__(self):
        return TruncatedSeries([-a for a in self.coeffs], self.ring)

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return series_mul(self, other)
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return TruncatedSeries([a * q for a in self.coeffs], self.ring)
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.ring == other.ring and self.coeffs == other.coeffs

    __hash__ = None

    def truncate(self, order):
        if order > self.order:
            raise OrderExceeded(f"cannot extend a series of order {self.order} to {order}")
        return TruncatedSeries(self.coeffs[:order + 1], self.ring)

    def __repr__(self):
        return f"TruncatedSeries(order={self.order}, ring={self.ring!r})"


# ---------------------------------------------------------------------------
# products

def series_mul(a, b):
    """Cauchy product truncated at the common order (binomial convolution of EGFs)."""
    a._check(b)
    ring, x, y = a.ring, a.coeffs, b.coeffs
    return TruncatedSeries(
        [ring.dot(x[:n + 1], y[n::-1]) for n in range(a.order + 1)], ring)


def mul_coefficient(a, b, n):
    """Stored coefficient ``n`` of ``a * b`` without forming the whole product."""
    a._check(b)
    if n > a.order:
        raise OrderExceeded(f"coefficient {n} beyond order {a.order}")
    return a.ring.dot(a.coeffs[:n + 1], b.coeffs[n::-1])


def hadamard_exp(a, b):
    """Exponential Hadamard product: ``a_n(w) * b_n(w)`` as EGF coefficient."""
    a._check(b)
    return TruncatedSeries(
        [(x * y) * math.factorial(n) for n, (x, y) in enumerate(zip(a.coeffs, b.coeffs))],
        a.ring)


def scale_z(a, factor):
    """``A(factor * z)``."""
    factor = Fraction(factor)
    if factor == 1:
        return a
    return TruncatedSeries([c * factor ** n for n, c in enumerate(a.coeffs)], a.ring)


def coeffwise_weight(a, g):
    """Multiply stored coefficient ``n`` by ``scalar * (1+w)**k`` where ``(scalar, k) = g(n)``."""
    ring = a.ring
    out = []
    for n, c in enumerate(a.coeffs):
        scalar, k = g(n)
        out.append(ring.weight(c, Fraction(scalar), int(k)))
    return TruncatedSeries(out, ring)


# ---------------------------------------------------------------------------
# analytic operators (first-order recurrences, O(N^2) ring products)

def _is_value(c, ring, value):
    return c == ring.scalar(value) if ring is EXACT else (c.lo == value and c.hi == value)


def _require_constant(kind, a, value):
    c0 = a.coeffs[0]
    if not _is_value(c0, a.ring, value):
        raise BadConstantTerm(kind, c0)


def exp(a):
    """``exp(A)`` for ``A(0) = 0``, from ``n F_n = sum_k k A_k F_{n-k}``."""
    _require_constant("exp", a, 0)
    ring, c = a.ring, a.coeffs
    weighted = [c[k] * k for k in range(len(c))]
    f = [ring.one()]
    for n in range(1, len(c)):
        f.append(ring.dot(weighted[1:n + 1], f[n - 1::-1]) * Fraction(1, n))
    return TruncatedSeries(f, ring)


def log(a):
    """``log(A)`` for ``A(0) = 1``, from ``n L_n = n A_n - sum_{k<n} k L_k A_{n-k}``."""
    _require_constant("log", a, 1)
    ring, c = a.ring, a.coeffs
    out = [ring.zero()]
    weighted = [ring.zero()]
    for n in range(1, len(c)):
        s = ring.dot(weighted[1:n], c[n - 1:0:-1]) if n > 1 else ring.zero()
        ln = c[n] - s * Fraction(1, n)
        out.append(ln)
        weighted.append(ln * n)
    return TruncatedSeries(out, ring)


def inv(a):
    """``1 / A`` for ``A(0) = 1``."""
    _require_constant("inv", a, 1)
    ring, c = a.ring, a.coeffs
    h = [ring.one()]
    for n in range(1, len(c)):
        h.append(-ring.dot(c[1:n + 1], h[n - 1::-1]))
    return TruncatedSeries(h, ring)


def sqrt(a):
    """Square root with ``S(0) = 1`` for ``A(0) = 1``, from ``S^2 = A``."""
    _require_constant("sqrt", a, 1)
    ring, c = a.ring, a.coeffs
    s = [ring.one()]
    half = Fraction(1, 2)
    for n in range(1, len(c)):
        # sum_{k=1}^{n-1} s_k s_{n-k}, folded by symmetry
        m = (n - 1) // 2
        acc = ring.dot(s[1:m + 1], s[n - 1:n - m - 1:-1]) * 2 if m else ring.zero()
        if n % 2 == 0:
            acc = acc + s[n // 2] * s[n // 2]
        s.append((c[n] - acc) * half)
    return TruncatedSeries(s, ring)


_ANALYTIC = {"exp": exp, "log": log, "sqrt": sqrt, "inv": inv}


def series_analytic(kind, a):
    try:
        fn = _ANALYTIC[kind]
    except KeyError:
        raise ValueError(f"unknown analytic operator {kind!r}") from None
    return fn(a)
