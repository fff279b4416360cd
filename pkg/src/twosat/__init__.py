"""Exact enumeration of 2-SAT formulae through generating functions.

Counts of satisfiable formulae, contradictory strongly connected implication
digraphs and strongly connected digraphs, exact and certified satisfiability
probabilities, and extrapolation of the limiting probability inside the
critical window.
"""
from .catalog import (
    build_base,
    build_cnf_marked,
    build_cnf_restricted,
    build_cscc,
    build_sat,
    build_scc,
)
from .coeffring import EXACT, ExactCoeff, IntervalCoeff, IntervalRing
from .counting import CountTable, emit_table, extract_count, variant_sat_count
from .probability import prob_exact, prob_interval
from .series import TruncatedSeries

__version__ = "0.1.0"

__all__ = [
    "EXACT",
    "ExactCoeff",
    "IntervalCoeff",
    "IntervalRing",
    "TruncatedSeries",
    "build_base",
    "build_scc",
    "build_sat",
    "build_cscc",
    "build_cnf_restricted",
    "build_cnf_marked",
    "CountTable",
    "emit_table",
    "extract_count",
    "variant_sat_count",
    "prob_exact",
    "prob_interval",
]
