"""Named generating functions of the 2-SAT calculus, built from series primitives.

Conventions (``w`` marks arcs for digraphs, clauses for implication digraphs):

* Exponential GF: stored ``a_n(w) / n!``.
* Graphic GF (hat): stored ``a_n(w) / ((1+w)**C(n,2) n!)``.
* Implication GF (ddot): stored ``b_n(w) / ((1+w)**(n(n-1)) 2**n n!)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

from .coeffring import EXACT
from .series import (
    TruncatedSeries,
    coeffwise_weight,
    exp,
    hadamard_exp,
    inv,
    log,
    mul_coefficient,
    scale_z,
    sqrt,
)

__all__ = [
    "GFBundle",
    "build_base",
    "build_scc",
    "build_sat",
    "build_cscc",
    "build_cnf_restricted",
    "build_cnf_marked",
    "negative_scc_exp",
    "sat_coefficient",
    "to_graphic",
    "to_implication",
    "graphic_to_egf",
    "implication_to_egf",
]


@dataclass(frozen=True)
class GFBundle:
    """Closed-form base series at a shared order and ring."""

    G: TruncatedSeries
    D: TruncatedSeries
    SetHat: TruncatedSeries
    SetDdot: TruncatedSeries
    CNF: TruncatedSeries

    @property
    def order(self):
        return self.G.order

    @property
    def ring(self):
        return self.G.ring


def _one(n):
    return 1


def _make_base(order, ring):
    egf = TruncatedSeries.from_egf
    return GFBundle(
        G=egf(order, ring, _one, lambda n: comb(n, 2)),
        D=egf(order, ring, _one, lambda n: n * (n - 1)),
        SetHat=egf(order, ring, _one, lambda n: -comb(n, 2)),
        SetDdot=egf(order, ring, lambda n: Fraction(1, 2 ** n), lambda n: -n * (n - 1)),
        CNF=egf(order, ring, _one, lambda n: 2 * n * (n - 1)),
    )


def build_base(order, ring=EXACT):
    """``G``, ``D``, ``SetHat``, ``SetDdot`` and ``CNF`` truncated at ``order``."""
    if order < 0:
        raise ValueError("order must be non-negative")
    if ring is EXACT:
        return _exact_base(order)
    return _make_base(order, ring)


@lru_cache(maxsize=32)
def _exact_base(order):
    return _make_base(order, EXACT)


# -- type conversions --------------------------------------------------------

def to_graphic(a):
    return coeffwise_weight(a, lambda n: (1, -comb(n, 2)))


def graphic_to_egf(a):
    return coeffwise_weight(a, lambda n: (1, comb(n, 2)))


def to_implication(a):
    return coeffwise_weight(a, lambda n: (Fraction(1, 2 ** n), -n * (n - 1)))


def implication_to_egf(a):
    return coeffwise_weight(a, lambda n: (2 ** n, n * (n - 1)))


# -- strongly connected digraphs ------------------------------------------------

def negative_scc_exp(order, ring=EXACT):
    """``exp(-SCC) = G (.)_z 1/G``."""
    g = build_base(order, ring).G
    return hadamard_exp(g, inv(g))


def build_scc(order, ring=EXACT):
    """EGF of strongly connected labelled digraphs, ``w`` marking arcs."""
    return -log(negative_scc_exp(order, ring))


# -- satisfiable formulae and contradictory components ----------------------------

def build_sat(order, ring=EXACT):
    """Implication GF of satisfiable 2-CNFs: ``G * (sqrt(G (.) 1/G) (.) SetDdot(2z))``."""
    base = build_base(order, ring)
    root = sqrt(negative_scc_exp(order, ring))
    return base.G * hadamard_exp(root, scale_z(base.SetDdot, 2))


def build_cscc(order, ring=EXACT):
    """EGF of contradictory strongly connected implication digraphs."""
    base = build_base(order, ring)
    scc = build_scc(order, ring)
    inner = base.D * inv(scale_z(base.G, 2))
    return scale_z(scc, 2) * Fraction(1, 2) + log(hadamard_exp(base.D, inner))


def build_cnf_restricted(scc, cscc, order=None, ring=None):
    """Implication GF of 2-CNFs whose ordinary SCCs come from ``scc`` and
    contradictory SCCs from ``cscc`` (both EGFs with zero constant term)."""
    order = scc.order if order is None else order
    ring = scc.ring if ring is None else ring
    scc, cscc = scc.truncate(order), cscc.truncate(order)
    base = build_base(order, ring)
    half_scc_2z = scale_z(scc, 2) * Fraction(1, 2)
    numerator = hadamard_exp(exp(cscc - half_scc_2z), base.SetDdot)
    denominator = hadamard_exp(exp(-scc), base.SetHat)
    return numerator * inv(denominator)


def build_cnf_marked(u, v, s, order, ring=EXACT, scc=None, cscc=None):
    """EGF of implication digraphs with rational markers.

    ``u`` marks non-isolated source-like ordinary SCCs, ``v`` pairs of isolated
    ordinary SCCs and ``s`` contradictory SCCs. Precomputed ``scc``/``cscc``
    series of the same order and ring may be passed in.
    """
    u, v, s = Fraction(u), Fraction(v), Fraction(s)
    base = build_base(order, ring)
    scc = build_scc(order, ring) if scc is None else scc
    cscc = build_cscc(order, ring) if cscc is None else cscc
    half_scc_2z = scale_z(scc, 2) * Fraction(1, 2)
    marked_sources = hadamard_exp(exp(scc * (u - 1)), base.SetHat)
    contradictory = hadamard_exp(exp(cscc * s - half_scc_2z), base.SetDdot)
    denominator = hadamard_exp(exp(-scc), base.SetHat)
    body = marked_sources * contradictory * inv(denominator)
    return exp(half_scc_2z * (v + 1 - 2 * u)) * hadamard_exp(scale_z(base.D, 2), body)


def sat_coefficient(n, ring=EXACT):
    """Stored coefficient ``[z^n]`` of the satisfiable Implication GF.

    Same composition as :func:`build_sat`, but the outer product is reduced
    to the single coefficient that is needed.
    """
    base = build_base(n, ring)
    root = sqrt(negative_scc_exp(n, ring))
    inner = hadamard_exp(root, scale_z(base.SetDdot, 2))
    return mul_coefficient(base.G, inner, n)
