from fractions import Fraction

import pytest

from twosat.errors import InfeasibleExact, PrecisionCeiling
from twosat.probability import (
    EXACT_MAX_N,
    initial_precision,
    prob_exact,
    prob_interval,
    sat_polynomial,
)

P_GRID = [Fraction(k, 20) for k in (0, 1, 2, 3, 5, 7, 10, 13, 16, 19)]


def as_fraction(x):
    return Fraction(*x.as_integer_ratio())


def test_exact_examples():
    assert prob_exact(1, Fraction(1, 3)) == 1
    assert prob_exact(2, Fraction(1, 2)) == Fraction(15, 16)
    for p in P_GRID:
        assert prob_exact(2, p) == 1 - p ** 4


def test_exact_matches_clause_sum():
    n, p = 3, Fraction(2, 9)
    poly = sat_polynomial(n)
    assert sum(poly) == 2397
    expect = sum(a * p ** m * (1 - p) ** (12 - m) for m, a in enumerate(poly))
    assert prob_exact(n, p) == expect


def test_exact_limits():
    with pytest.raises(InfeasibleExact):
        prob_exact(EXACT_MAX_N + 1, Fraction(1, 2))
    with pytest.raises(ValueError):
        prob_exact(3, 1)
    with pytest.raises(ValueError):
        prob_exact(3, Fraction(-1, 2))


def test_interval_examples():
    iv = prob_interval(5, Fraction(1, 10), 1e-30)
    assert iv.contains(prob_exact(5, Fraction(1, 10)))
    assert iv.contains(Fraction(15, 16)) is False
    assert prob_interval(2, Fraction(1, 2), 1e-25).contains(Fraction(15, 16))
    iv = prob_interval(1, Fraction(1, 3), 1e-20)
    assert iv.contains(1)
    assert as_fraction(iv.width) <= Fraction(1, 10 ** 20)


@pytest.mark.parametrize("n", range(1, 8))
def test_interval_contains_exact_on_grid(n):
    for p in P_GRID:
        exact = prob_exact(n, p)
        for width in (1e-10, 1e-30):
            iv = prob_interval(n, p, width)
            assert iv.contains(exact), (n, p, width)
            assert as_fraction(iv.width) <= Fraction(width)


def test_bounds_and_monotonicity():
    for n in range(1, 8):
        values = [prob_exact(n, p) for p in P_GRID]
        assert all(0 <= v <= 1 for v in values)
        assert all(b <= a for a, b in zip(values, values[1:]))
        for p in P_GRID[1:4]:
            iv = prob_interval(n, p, 1e-20)
            w = as_fraction(iv.width)
            assert as_fraction(iv.lo) >= -w and as_fraction(iv.hi) <= 1 + w


def test_interval_for_p_range():
    # a p enclosure as narrow as the window points use
    eps = Fraction(1, 10 ** 40)
    p = Fraction(1, 10)
    iv = prob_interval(4, (p - eps, p + eps), 1e-20)
    assert iv.contains(prob_exact(4, p))
    assert as_fraction(iv.width) <= Fraction(1, 10 ** 20)
    # a wide range bounds the width from below, so the retry loop gives up
    with pytest.raises(PrecisionCeiling):
        prob_interval(4, (Fraction(1, 11), Fraction(1, 9)), 1e-3)


def test_precision_ceiling():
    with pytest.raises(PrecisionCeiling):
        prob_interval(30, Fraction(1, 60), 1e-40, precision=64, max_precision=100)


def test_precision_doubles_until_met():
    # starting far too low still reaches the target
    iv = prob_interval(12, Fraction(1, 24), 1e-20, precision=40)
    assert as_fraction(iv.width) <= Fraction(1, 10 ** 20)
    assert iv.precision_bits > 40
    assert iv.contains(prob_exact(12, Fraction(1, 24)))


def test_initial_precision_grows():
    assert initial_precision(1, 1e-20) >= 128
    assert initial_precision(200, 1e-20) > initial_precision(100, 1e-20)
    assert initial_precision(100, 1e-40) > initial_precision(100, 1e-20)
