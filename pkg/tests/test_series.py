import math
import random
from fractions import Fraction

import pytest

from twosat.catalog import build_base, graphic_to_egf, to_graphic
from twosat.coeffring import EXACT, ExactCoeff, IntervalRing
from twosat.errors import BadConstantTerm, OrderExceeded, RingMismatch
from twosat.series import (
    TruncatedSeries,
    coeffwise_weight,
    exp,
    hadamard_exp,
    inv,
    log,
    scale_z,
    series_analytic,
    series_mul,
    sqrt,
)

N = 7


def rseries(rng, order=N, c0=None, max_deg=3, e_max=3):
    coeffs = []
    for n in range(order + 1):
        if n == 0 and c0 is not None:
            coeffs.append(EXACT.scalar(c0))
            continue
        cs = [Fraction(rng.randint(-6, 6), rng.randint(1, 5)) for _ in range(rng.randint(0, max_deg))]
        coeffs.append(ExactCoeff.from_fraction_poly(cs, rng.randint(0, e_max)))
    return TruncatedSeries(coeffs)


def egf(values):
    return TruncatedSeries.from_rationals([Fraction(v, math.factorial(n)) for n, v in enumerate(values)])


def test_product_of_two_singletons():
    z = TruncatedSeries.from_rationals([0, 1, 0])
    assert (z * z)[2] == 1
    assert (z * z).egf_coefficient(2) == 2


def test_identity_product():
    a = rseries(random.Random(1))
    assert a * TruncatedSeries.constant(N, EXACT) == a


def test_graphic_product_of_singletons():
    # two labelled vertices with an optional arc between the two parts
    one = TruncatedSeries.from_rationals([0, 1, 0])
    prod = graphic_to_egf(to_graphic(one) * to_graphic(one))
    assert list(prod.egf_coefficient(2).integer_poly()) == [2, 2]


def test_exp_of_zero():
    assert exp(TruncatedSeries.constant(5, EXACT, 0)) == TruncatedSeries.constant(5, EXACT)


def test_log_of_graphs_counts_connected():
    g = build_base(4).G
    assert list(log(g).egf_coefficient(3).integer_poly()) == [0, 0, 3, 1]


def test_sqrt_of_one_plus_z():
    a = TruncatedSeries.from_rationals([1, 1, 0, 0, 0, 0])
    r = sqrt(a)
    assert r * r == a


def test_inv_geometric():
    r = inv(TruncatedSeries.from_rationals([1, -1, 0, 0, 0]))
    assert all(c == 1 for c in r.coeffs)


def test_bad_constant_terms():
    one = TruncatedSeries.from_rationals([1, 1, 0])
    two = TruncatedSeries.from_rationals([2, 1, 0])
    with pytest.raises(BadConstantTerm):
        exp(one)
    for fn in (log, sqrt, inv):
        with pytest.raises(BadConstantTerm):
            fn(two)
    with pytest.raises(BadConstantTerm) as info:
        series_analytic("log", two)
    assert info.value.kind == "log"


def test_mismatch_errors():
    a = TruncatedSeries.from_rationals([1, 1, 0])
    with pytest.raises(RingMismatch):
        a + TruncatedSeries.from_rationals([1, 1])
    ring = IntervalRing(64, Fraction(1, 3))
    b = TruncatedSeries([ring.one(), ring.one(), ring.zero()], ring)
    with pytest.raises(RingMismatch):
        series_mul(a, b)
    with pytest.raises(OrderExceeded):
        a[3]


@pytest.mark.parametrize("seed", range(6))
def test_analytic_round_trips(seed):
    rng = random.Random(seed)
    a0 = rseries(rng, c0=0)
    a1 = rseries(rng, c0=1)
    assert log(exp(a0)) == a0
    assert exp(log(a1)) == a1
    r = sqrt(a1)
    assert r * r == a1
    assert sqrt(a1 * a1) == a1
    assert a1 * inv(a1) == TruncatedSeries.constant(N, EXACT)


def test_hadamard_examples():
    e = egf([1] * 6)
    assert hadamard_exp(e, e) == e
    assert hadamard_exp(egf([2 ** n for n in range(6)]), egf([3 ** n for n in range(6)])) \
        == egf([6 ** n for n in range(6)])
    base = build_base(6)
    assert hadamard_exp(base.G, base.SetHat) == egf([1] * 7)


@pytest.mark.parametrize("seed", range(4))
def test_hadamard_algebra(seed):
    rng = random.Random(100 + seed)
    a, b, c = rseries(rng), rseries(rng), rseries(rng)
    e = egf([1] * (N + 1))
    assert hadamard_exp(a, b) == hadamard_exp(b, a)
    assert hadamard_exp(hadamard_exp(a, b), c) == hadamard_exp(a, hadamard_exp(b, c))
    assert hadamard_exp(a, e) == a


@pytest.mark.parametrize("seed", range(4))
def test_hadamard_scaling_identity(seed):
    rng = random.Random(200 + seed)
    f, g = rseries(rng), rseries(rng)
    assert hadamard_exp(scale_z(f, 2), g) == hadamard_exp(f, scale_z(g, 2))


@pytest.mark.parametrize("seed", range(3))
def test_scale_is_homomorphism(seed):
    rng = random.Random(300 + seed)
    a, b = rseries(rng), rseries(rng)
    for t in (Fraction(1, 2), 2, Fraction(-3, 5)):
        assert scale_z(a * b, t) == scale_z(a, t) * scale_z(b, t)
    assert scale_z(a, 1) == a


def test_scale_of_d_is_implication_normalised():
    d = build_base(5).D
    half = scale_z(d, Fraction(1, 2))
    for n in range(6):
        expect = EXACT.onepw(n * (n - 1), Fraction(1, 2 ** n * math.factorial(n)))
        assert half[n] == expect


def test_weightings():
    base = build_base(6)
    e = egf([1] * 7)
    assert coeffwise_weight(base.G, lambda n: (1, -math.comb(n, 2))) == e
    ddot = coeffwise_weight(base.D, lambda n: (Fraction(1, 2 ** n), -n * (n - 1)))
    assert ddot == coeffwise_weight(e, lambda n: (Fraction(1, 2 ** n), 0))


@pytest.mark.parametrize("seed", range(5))
def test_graphic_convolution_rule(seed):
    # c_n = sum_k C(n,k) (1+w)^(k(n-k)) a_k b_(n-k) on random integer polynomials
    rng = random.Random(400 + seed)
    order = 6

    def rand_poly():
        return ExactCoeff([rng.randint(-5, 5) for _ in range(rng.randint(0, 4))])

    a = [rand_poly() for _ in range(order + 1)]
    b = [rand_poly() for _ in range(order + 1)]

    def series_of(vals):
        return TruncatedSeries([v * Fraction(1, math.factorial(n)) for n, v in enumerate(vals)])

    prod = graphic_to_egf(to_graphic(series_of(a)) * to_graphic(series_of(b)))
    for n in range(order + 1):
        expect = ExactCoeff()
        for k in range(n + 1):
            expect = expect + (a[k] * b[n - k]).shift(k * (n - k)) * math.comb(n, k)
        assert prod.egf_coefficient(n) == expect


def test_interval_series_matches_exact():
    w0 = Fraction(2, 7)
    ring = IntervalRing(128, w0)
    rng = random.Random(5)
    a = rseries(rng, order=5, c0=1)
    ai = TruncatedSeries([ring.evaluate(c) for c in a.coeffs], ring)
    for fn in (log, sqrt, inv):
        exact, approx = fn(a), fn(ai)
        for n in range(6):
            assert approx[n].contains(exact[n].evaluate(w0))
