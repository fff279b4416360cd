"""Coefficient rings for the generating-function series.

Two rings are provided:

* :class:`ExactCoeff` -- exact elements of ``Q[w, (1+w)^-1]``, stored as an
  integer polynomial in ``w`` over ``den * (1+w)**e``.
* :class:`IntervalCoeff` -- outward-rounded MPFR intervals, the value of a
  coefficient at one fixed numeric ``w``.

A *ring* object (:data:`EXACT` or an :class:`IntervalRing`) builds constants
and reduces dot products; series code only talks to rings and coefficients
through that small surface.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

import gmpy2
from gmpy2 import mpfr, mpq, mpz

from .errors import NonIntegerCount, PoleAtMinusOne

__all__ = [
    "ExactCoeff",
    "ExactRing",
    "EXACT",
    "IntervalCoeff",
    "IntervalRing",
    "exact_arith",
    "shift_power_1pw",
    "to_integer_poly",
    "eval_exact",
    "interval_arith",
]


# ---------------------------------------------------------------------------
# integer polynomials: tuples of ints, lowest degree first, no trailing zeros

def _trim(c):
    n = len(c)
    while n and not c[n - 1]:
        n -= 1
    return tuple(c[:n])


def _poly_add(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] += x
    return _trim(out)


def _poly_scale(a, k):
    if k == 1:
        return a
    if not k:
        return ()
    return tuple(x * k for x in a)


_KRONECKER_MIN = 24


def _schoolbook(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _offset(half, slot, length):
    return int.from_bytes(half.to_bytes(slot, "little") * length, "little")


def _pack(a, half, slot):
    raw = b"".join((x + half).to_bytes(slot, "little") for x in a)
    return int.from_bytes(raw, "little") - _offset(half, slot, len(a))


def _kronecker(a, b):
    # evaluate both at 2**(8*slot), multiply once, read signed digits back
    bound = (max(map(abs, a)).bit_length() + max(map(abs, b)).bit_length()
             + min(len(a), len(b)).bit_length())
    slot = (bound + 8) // 8
    half = 1 << (8 * slot - 1)
    x = gmpy2.mpz(_pack(a, half, slot))
    y = gmpy2.mpz(_pack(b, half, slot))
    length = len(a) + len(b) - 1
    prod = int(x * y) + _offset(half, slot, length)
    raw = prod.to_bytes(slot * length, "little")
    return [int.from_bytes(raw[i:i + slot], "little") - half
            for i in range(0, slot * length, slot)]


def _poly_mul(a, b):
    if not a or not b:
        return ()
    if min(len(a), len(b)) < _KRONECKER_MIN:
        return _trim(_schoolbook(a, b))
    return _trim(_kronecker(a, b))


@lru_cache(maxsize=4096)
def _binomial_row(k):
    """Coefficients of ``(1+w)**k`` for ``k >= 0``."""
    return tuple(math.comb(k, i) for i in range(k + 1))


def _times_1pw_power(a, k):
    if k == 0 or not a:
        return a
    if k == 1:
        out = list(a) + [0]
        for i in range(len(a) - 1, -1, -1):
            out[i + 1] += a[i]
        return tuple(out)
    return _poly_mul(a, _binomial_row(k))


def _at_minus_one(a):
    return sum(a[0::2]) - sum(a[1::2])


def _divide_1pw(a):
    """Exact quotient of ``a`` by ``(1+w)``; caller guarantees divisibility."""
    q = [0] * (len(a) - 1)
    prev = 0
    for i in range(len(a) - 1):
        prev = a[i] - prev
        q[i] = prev
    return tuple(q)


# ---------------------------------------------------------------------------
# exact ring

class ExactCoeff:
    """Element ``num(w) / (den * (1+w)**e)`` of ``Q[w, (1+w)^-1]``.

    Instances are immutable and always canonical: ``num`` has no trailing
    zeros and its content is coprime to ``den > 0``; when ``e > 0`` the
    numerator does not vanish at ``w = -1``. Zero is ``((), 1, 0)``.
    """

    __slots__ = ("num", "den", "e")

    def __init__(self, num=(), den=1, e=0):
        num, den, e = _canonical(_trim(tuple(int(x) for x in num)), int(den), int(e))
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)
        object.__setattr__(self, "e", e)

    @classmethod
    def _raw(cls, num, den, e):
        self = object.__new__(cls)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)
        object.__setattr__(self, "e", e)
        return self

    @classmethod
    def _make(cls, num, den, e):
        return cls._raw(*_canonical(num, den, e))

    @classmethod
    def from_rational(cls, q):
        q = Fraction(q)
        if not q:
            return ZERO
        return cls._raw((q.numerator,), q.denominator, 0)

    @classmethod
    def from_fraction_poly(cls, coeffs, e=0):
        """Build from a sequence of rational ``w``-coefficients."""
        coeffs = [Fraction(c) for c in coeffs]
        den = math.lcm(1, *(c.denominator for c in coeffs))
        return cls([c.numerator * (den // c.denominator) for c in coeffs], den, e)

    def __setattr__(self, name, value):
        raise AttributeError("ExactCoeff is immutable")

    # -- views -------------------------------------------------------------
    @property
    def numerator(self):
        """Rational ``w``-coefficients of the numerator polynomial."""
        return tuple(Fraction(x, self.den) for x in self.num)

    @property
    def denom_exp(self):
        return self.e

    def is_zero(self):
        return not self.num

    def degree(self):
        return len(self.num) - 1

    # -- arithmetic --------------------------------------------------------
    def __neg__(self):
        return ExactCoeff._raw(tuple(-x for x in self.num), self.den, self.e)

    def __add__(self, other):
        if not isinstance(other, ExactCoeff):
            if not isinstance(other, (int, Fraction)):
                return NotImplemented
            other = ExactCoeff.from_rational(other)
        if not other.num:
            return self
        if not self.num:
            return other
        e = max(self.e, other.e)
        den = math.lcm(self.den, other.den)
        a = _poly_scale(_times_1pw_power(self.num, e - self.e), den // self.den)
        b = _poly_scale(_times_1pw_power(other.num, e - other.e), den // other.den)
        return ExactCoeff._make(_poly_add(a, b), den, e)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ExactCoeff.from_rational(other)
        if not isinstance(other, ExactCoeff):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, ExactCoeff):
            if not self.num or not other.num:
                return ZERO
            return ExactCoeff._make(_poly_mul(self.num, other.num),
                                    self.den * other.den, self.e + other.e)
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            if not other or not self.num:
                return ZERO
            return ExactCoeff._make(_poly_scale(self.num, other.numerator),
                                    self.den * other.denominator, self.e)
        return NotImplemented

    __rmul__ = __mul__

    def shift(self, k):
        """Multiply by ``(1+w)**k``; ``k`` may be negative."""
        if not self.num or k == 0:
            return self
        if k < 0:
            return ExactCoeff._make(self.num, self.den, self.e - k)
        cancel = min(k, self.e)
        return ExactCoeff._raw(_times_1pw_power(self.num, k - cancel), self.den,
                               self.e - cancel)

    def evaluate(self, w0):
        w0 = Fraction(w0)
        if w0 == -1:
            raise PoleAtMinusOne("cannot evaluate a (1+w)-denominator element at w = -1")
        acc = Fraction(0)
        for c in reversed(self.num):
            acc = acc * w0 + c
        return acc / (self.den * (1 + w0) ** self.e)

    def integer_poly(self, scalar=1, shift=0):
        """Integer ``w``-coefficients of ``self * scalar * (1+w)**shift``."""
        v = (self * Fraction(scalar)).shift(shift)
        if v.e or v.den != 1:
            raise NonIntegerCount(
                f"cleared coefficient is not an integer polynomial: {v!r}")
        return v.num

    # -- comparison / display ----------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ExactCoeff.from_rational(other)
        if not isinstance(other, ExactCoeff):
            return NotImplemented
        return self.num == other.num and self.den == other.den and self.e == other.e

    def __hash__(self):
        return hash((self.num, self.den, self.e))

    def __repr__(self):
        return f"ExactCoeff(num={self.num!r}, den={self.den}, e={self.e})"


def _canonical(num, den, e):
    if not num:
        return (), 1, 0
    if den < 0:
        num, den = tuple(-x for x in num), -den
    g = math.gcd(den, *num)
    if g != 1:
        num = tuple(x // g for x in num)
        den //= g
    while e > 0 and _at_minus_one(num) == 0:
        num = _divide_1pw(num)
        e -= 1
    return num, den, e


ZERO = ExactCoeff._raw((), 1, 0)
ONE = ExactCoeff._raw((1,), 1, 0)


class ExactRing:
    """The exact ring ``Q[w, (1+w)^-1]`` (a singleton, see :data:`EXACT`)."""

    tag = ("exact",)

    def zero(self):
        return ZERO

    def one(self):
        return ONE

    def scalar(self, q):
        return ExactCoeff.from_rational(q)

    def onepw(self, k, scalar=1):
        """``scalar * (1+w)**k``."""
        return ExactCoeff.from_rational(scalar).shift(k)

    def weight(self, c, scalar, k):
        return (c * scalar).shift(k) if scalar != 1 else c.shift(k)

    def dot(self, xs, ys):
        """``sum(x * y)`` with a single canonicalization at the end."""
        terms = [(x, y) for x, y in zip(xs, ys) if x.num and y.num]
        if not terms:
            return ZERO
        if len(terms) == 1:
            return terms[0][0] * terms[0][1]
        e = max(x.e + y.e for x, y in terms)
        den = math.lcm(*(x.den * y.den for x, y in terms))
        acc = ()
        for x, y in terms:
            p = _poly_mul(x.num, y.num)
            p = _times_1pw_power(p, e - x.e - y.e)
            acc = _poly_add(acc, _poly_scale(p, den // (x.den * y.den)))
        return ExactCoeff._make(acc, den, e)

    def __eq__(self, other):
        return isinstance(other, ExactRing)

    def __hash__(self):
        return hash(self.tag)

    def __repr__(self):
        return "EXACT"


EXACT = ExactRing()


# ---------------------------------------------------------------------------
# interval ring

@lru_cache(maxsize=64)
def _contexts(prec):
    down = gmpy2.context(precision=prec, round=gmpy2.RoundDown)
    up = gmpy2.context(precision=prec, round=gmpy2.RoundUp)
    return down, up


def _as_mpq(q):
    q = Fraction(q)
    return mpq(q.numerator, q.denominator)


class IntervalCoeff:
    """Closed interval ``[lo, hi]`` with MPFR endpoints at ``prec`` bits.

    Every operation rounds ``lo`` toward -inf and ``hi`` toward +inf, so the
    exact result of the same expression on exact inputs stays inside.
    """

    __slots__ = ("lo", "hi", "prec")

    def __init__(self, lo, hi, prec):
        if lo > hi:
            raise ValueError(f"empty interval [{lo}, {hi}]")
        self.lo = lo
        self.hi = hi
        self.prec = prec

    @classmethod
    def from_rational(cls, q, prec):
        down, up = _contexts(prec)
        v = _as_mpq(q)
        return cls(mpfr(v, prec, down), mpfr(v, prec, up), prec)

    @classmethod
    def from_bounds(cls, lo, hi, prec):
        """Outward rounding of rational (or float) bounds ``lo <= hi``."""
        down, up = _contexts(prec)
        return cls(mpfr(_as_mpq(lo), prec, down), mpfr(_as_mpq(hi), prec, up), prec)

    @property
    def precision_bits(self):
        return self.prec

    @property
    def width(self):
        return _contexts(self.prec)[1].sub(self.hi, self.lo)

    @property
    def mid(self):
        ctx = gmpy2.context(precision=self.prec + 1)
        return ctx.div_2exp(ctx.add(self.lo, self.hi), 1)

    def contains(self, q):
        """True when the exact rational ``q`` lies in the interval."""
        v = _as_mpq(q)
        return self.lo <= v <= self.hi

    def is_zero(self):
        return self.lo == 0 and self.hi == 0

    def _coerce(self, other):
        if isinstance(other, IntervalCoeff):
            return other
        if isinstance(other, (int, Fraction)):
            return IntervalCoeff.from_rational(other, self.prec)
        return None

    def __neg__(self):
        # gmpy2's unary minus rounds to the global context; negate at our precision
        down, up = _contexts(self.prec)
        return IntervalCoeff(down.minus(self.hi), up.minus(self.lo), self.prec)

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        prec = max(self.prec, other.prec)
        down, up = _contexts(prec)
        return IntervalCoeff(down.add(self.lo, other.lo), up.add(self.hi, other.hi), prec)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        prec = max(self.prec, other.prec)
        lo, hi = _imul(self.lo, self.hi, other.lo, other.hi, *_contexts(prec))
        return IntervalCoeff(lo, hi, prec)

    __rmul__ = __mul__

    def reciprocal(self):
        if self.lo <= 0 <= self.hi:
            raise ZeroDivisionError("interval contains zero")
        down, up = _contexts(self.prec)
        return IntervalCoeff(down.div(1, self.hi), up.div(1, self.lo), self.prec)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.reciprocal()

    def __pow__(self, k):
        return _ipow(self, k)

    def hull(self, other):
        return IntervalCoeff(min(self.lo, other.lo), max(self.hi, other.hi),
                             max(self.prec, other.prec))

    def __repr__(self):
        return f"IntervalCoeff([{self.lo}, {self.hi}], prec={self.prec})"


def _imul(a, b, c, d, down, up):
    if a >= 0:
        if c >= 0:
            return down.mul(a, c), up.mul(b, d)
        if d <= 0:
            return down.mul(b, c), up.mul(a, d)
        return down.mul(b, c), up.mul(b, d)
    if b <= 0:
        if c >= 0:
            return down.mul(a, d), up.mul(b, c)
        if d <= 0:
            return down.mul(b, d), up.mul(a, c)
        return down.mul(a, d), up.mul(a, c)
    if c >= 0:
        return down.mul(a, d), up.mul(b, d)
    if d <= 0:
        return down.mul(b, c), up.mul(a, c)
    return (min(down.mul(a, d), down.mul(b, c)),
            max(up.mul(a, c), up.mul(b, d)))


def _ipow(x, k):
    if k < 0:
        return _ipow(x, -k).reciprocal()
    down, up = _contexts(x.prec)
    if k == 0:
        return IntervalCoeff(mpfr(1), mpfr(1), x.prec)
    if x.lo >= 0:
        return IntervalCoeff(down.pow(x.lo, k), up.pow(x.hi, k), x.prec)
    if x.hi <= 0:
        if k % 2:
            return IntervalCoeff(down.pow(x.lo, k), up.pow(x.hi, k), x.prec)
        return IntervalCoeff(down.pow(x.hi, k), up.pow(x.lo, k), x.prec)
    if k % 2:
        return IntervalCoeff(down.pow(x.lo, k), up.pow(x.hi, k), x.prec)
    return IntervalCoeff(mpfr(0), up.pow(max(up.minus(x.lo), x.hi), k), x.prec)


class IntervalRing:
    """Coefficients evaluated at a numeric ``w0`` with ``prec``-bit intervals.

    ``w0`` is a rational or a pair ``(lo, hi)`` of rationals; the ring then
    encloses every ``w`` in that range. ``1 + w0`` must be positive.
    """

    def __init__(self, prec, w0):
        if prec < 32:
            raise ValueError("interval precision must be at least 32 bits")
        self.prec = int(prec)
        if isinstance(w0, tuple):
            lo, hi = Fraction(w0[0]), Fraction(w0[1])
        else:
            lo = hi = Fraction(w0)
        if lo > hi or lo <= -1:
            raise ValueError(f"invalid w0 range [{lo}, {hi}]")
        self.w0 = (lo, hi)
        self.w = IntervalCoeff.from_bounds(lo, hi, self.prec)
        self.q = IntervalCoeff.from_bounds(1 + lo, 1 + hi, self.prec)
        self.tag = ("interval", self.prec, self.w0)
        self._down, self._up = _contexts(self.prec)

    def zero(self):
        return IntervalCoeff(mpfr(0), mpfr(0), self.prec)

    def one(self):
        return IntervalCoeff(mpfr(1), mpfr(1), self.prec)

    def scalar(self, q):
        return IntervalCoeff.from_rational(q, self.prec)

    def onepw(self, k, scalar=1):
        """``scalar * (1+w0)**k`` enclosed with one rounding per endpoint."""
        v = _ipow(self.q, k)
        if scalar != 1:
            v = v * self.scalar(scalar)
        return v

    def weight(self, c, scalar, k):
        return c * self.onepw(k, scalar)

    def evaluate(self, a):
        """Enclose the exact element ``a`` at ``w0`` (Horner in intervals)."""
        if isinstance(a, IntervalCoeff):
            return a
        acc = self.zero()
        for c in reversed(a.num):
            acc = acc * self.w + c
        return acc * self.onepw(-a.e, Fraction(1, a.den))

    def dot(self, xs, ys):
        """``sum(x * y)``: products rounded outward, then one correctly rounded sum per endpoint."""
        down, up = self._down, self._up
        los = []
        his = []
        for x, y in zip(xs, ys):
            lo, hi = _imul(x.lo, x.hi, y.lo, y.hi, down, up)
            los.append(lo)
            his.append(hi)
        if not los:
            return self.zero()
        return IntervalCoeff(down.fsum(los), up.fsum(his), self.prec)

    def __eq__(self, other):
        return isinstance(other, IntervalRing) and self.tag == other.tag

    def __hash__(self):
        return hash(self.tag)

    def __repr__(self):
        return f"IntervalRing(prec={self.prec}, w0={self.w0})"


# ---------------------------------------------------------------------------
# functional surface

def exact_arith(op, a, b=None):
    """Apply ``op`` in {'add', 'mul', 'neg', 'scalarMul'} to exact operands."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "neg":
        return -a
    if op == "scalarMul":
        return a * Fraction(b)
    raise ValueError(f"unknown exact op {op!r}")


def shift_power_1pw(a, k):
    return a.shift(k)


def to_integer_poly(a, clear_factor=1, shift=0):
    """Integer coefficients of ``a * clear_factor * (1+w)**shift``.

    Raises :class:`NonIntegerCount` unless the product is an integer polynomial.
    """
    return a.integer_poly(clear_factor, shift)


def eval_exact(a, w0):
    return a.evaluate(w0)


def interval_arith(op, operands, precision_bits):
    """Interval evaluation of ``op`` in {'add', 'mul', 'neg', 'powInt', 'evalPoly'}.

    Rational operands are first rounded outward to ``precision_bits``.
    ``powInt`` takes ``(x, k)``; ``evalPoly`` takes ``(exact_coeff, w0)``
    where ``w0`` is a rational or a rational pair.
    """
    if precision_bits < 32:
        raise ValueError("precision_bits must be >= 32")

    def lift(x):
        if isinstance(x, IntervalCoeff):
            return x
        return IntervalCoeff.from_rational(x, precision_bits)

    if op == "add":
        a, b = operands
        return lift(a) + lift(b)
    if op == "mul":
        a, b = operands
        return lift(a) * lift(b)
    if op == "neg":
        (a,) = operands
        return -lift(a)
    if op == "powInt":
        a, k = operands
        return lift(a) ** int(k)
    if op == "evalPoly":
        a, w0 = operands
        return IntervalRing(precision_bits, w0).evaluate(a)
    raise ValueError(f"unknown interval op {op!r}")
