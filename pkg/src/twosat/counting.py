"""Exact integer counts read off catalog series, and the count tables built from them."""
from __future__ import annotations

import io
import json
import math
from dataclasses import dataclass, field
from functools import lru_cache

from .catalog import build_base, build_cscc, build_sat, build_scc, negative_scc_exp
from .errors import NonIntegerCount
from .series import coeffwise_weight, mul_coefficient, sqrt

__all__ = [
    "CountTable",
    "KINDS",
    "extract_count",
    "extract_row",
    "variant_sat_count",
    "variant_sat_row",
    "emit_table",
    "table_csv",
    "table_json",
    "totals_csv",
    "totals_json",
    "counts_from_map",
]

EXPONENTIAL = "exponential"
IMPLICATION = "implication"

SAT = "satByClauses"
CSCC = "csccByExcess"
SCC = "sccByArcs"
KINDS = (SAT, CSCC, SCC)


def _clearing(gf_type, n):
    """``(scalar, power of (1+w))`` that turns stored coefficient ``n`` into counts."""
    if gf_type == IMPLICATION:
        return 2 ** n * math.factorial(n), n * (n - 1)
    if gf_type == EXPONENTIAL:
        return math.factorial(n), 0
    raise ValueError(f"unknown GF type {gf_type!r}")


def extract_row(series, gf_type, n):
    """All integer counts ``[c_{n,0}, c_{n,1}, ...]`` of stored coefficient ``n``."""
    scalar, k = _clearing(gf_type, n)
    return list(series[n].integer_poly(scalar, k))


def extract_count(series, gf_type, n, m):
    """Number of objects of size ``n`` with ``m`` marked items (arcs or clauses)."""
    if m < 0:
        return 0
    row = extract_row(series, gf_type, n)
    return int(row[m]) if m < len(row) else 0


def _row_total(series, gf_type, n):
    # independent of the extracted coefficients: evaluate at w = 1
    scalar, k = _clearing(gf_type, n)
    total = series[n].evaluate(1) * scalar * 2 ** k
    if total.denominator != 1:
        raise NonIntegerCount(f"row total at n={n} is not an integer: {total}")
    return int(total)


@lru_cache(maxsize=32)
def variant_sat_row(n):
    """Satisfiable 2-CNF counts on ``n`` variables by clause number, through the
    substituted set series ``SetHat((1+w)^(2(n-1)) z)`` rather than ``build_sat``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return (1,)
    root = sqrt(negative_scc_exp(n))
    shifted = coeffwise_weight(build_base(n).SetHat, lambda k: (1, 2 * (n - 1) * k))
    coeff = mul_coefficient(shifted, root, n)
    return tuple(int(a) for a in coeff.integer_poly(2 ** n * math.factorial(n)))


def variant_sat_count(n, m):
    if m < 0:
        return 0
    row = variant_sat_row(n)
    return row[m] if m < len(row) else 0


@dataclass
class CountTable:
    """``rows[(n, j)] -> count``; ``j`` is the excess ``m - n`` for the CSCC table."""

    kind: str
    n_max: int
    rows: dict = field(default_factory=dict)
    totals: dict = field(default_factory=dict)
    by_excess: bool = True

    @property
    def index_name(self):
        return "k" if self.kind == CSCC and self.by_excess else "m"

    def row(self, n):
        return [c for (nn, _), c in sorted(self.rows.items()) if nn == n]

    def __getitem__(self, key):
        return self.rows.get(key, 0)


def emit_table(kind, n_max, by_excess=True):
    """Fully populated count table for ``n = 1..n_max``.

    ``by_excess=False`` keys the CSCC table by clause number ``m`` instead of
    the excess ``m - n``.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    table = CountTable(kind, n_max, by_excess=by_excess)
    if kind == SAT:
        series, gf_type = build_sat(n_max), IMPLICATION
        span = lambda n: range(0, 2 * n * (n - 1) + 1)
        offset = 0
    elif kind == CSCC:
        series, gf_type = build_cscc(n_max), EXPONENTIAL
        span = lambda n: range(1, 2 * n * (n - 1) - n + 1)
        offset = 1
    elif kind == SCC:
        series, gf_type = build_scc(n_max), EXPONENTIAL
        span = lambda n: range(0, n * (n - 1) + 1)
        offset = 0
    else:
        raise ValueError(f"unknown table kind {kind!r}; expected one of {KINDS}")
    for n in range(1, n_max + 1):
        counts = extract_row(series, gf_type, n)
        shift = n if offset else 0
        for j in span(n):
            m = j + shift
            key = j if by_excess else m
            table.rows[(n, key)] = int(counts[m]) if m < len(counts) else 0
        table.totals[n] = _row_total(series, gf_type, n)
    return table


# ---------------------------------------------------------------------------
# serialization

def table_csv(table):
    out = io.StringIO()
    out.write(f"n,{table.index_name},count\n")
    for (n, j), c in sorted(table.rows.items()):
        out.write(f"{n},{j},{c}\n")
    return out.getvalue()


def table_json(table):
    key = table.index_name
    rows = [{"n": n, key: j, "count": str(c)} for (n, j), c in sorted(table.rows.items())]
    return json.dumps(rows, indent=1) + "\n"


def totals_csv(table):
    lines = ["n,total"] + [f"{n},{t}" for n, t in sorted(table.totals.items())]
    return "\n".join(lines) + "\n"


def totals_json(table):
    rows = [{"n": n, "total": str(t)} for n, t in sorted(table.totals.items())]
    return json.dumps(rows, indent=1) + "\n"


def counts_from_map(kind, n, counts, by_excess=True):
    """Wrap a ``{m: count}`` map (as returned by the oracle) in a one-row table."""
    table = CountTable(kind, n, by_excess=by_excess)
    offset = n if kind == CSCC and by_excess else 0
    for m, c in sorted(counts.items()):
        table.rows[(n, m - offset)] = int(c)
    table.totals[n] = sum(int(c) for c in counts.values())
    return table
