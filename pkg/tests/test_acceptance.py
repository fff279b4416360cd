"""Acceptance suite: one test per criterion, each reported as PASS/FAIL in the summary.

Run on its own with ``pytest tests/test_acceptance.py -v``; the centre-of-window
regression dominates the runtime (a few minutes).
"""
import json
import math
import random
import time
from fractions import Fraction

import mpmath
import pytest

from twosat import catalog, counting
from twosat.catalog import (
    build_base,
    build_cnf_marked,
    build_cscc,
    build_sat,
    build_scc,
    graphic_to_egf,
    to_graphic,
)
from twosat.cli import run
from twosat.coeffring import EXACT, ExactCoeff
from twosat.oracle import (
    brute_cscc_counts,
    brute_sat_counts,
    brute_scc_digraph_counts,
    brute_scc_digraph_counts_by_arcs,
    check_structure,
    iter_formulas,
)
from twosat.probability import prob_exact, prob_interval
from twosat.scalingwindow import (
    WindowConfig,
    default_mu_grid,
    default_n_grid,
    fit_expansion,
    window_curve,
)
from twosat.series import TruncatedSeries, exp, hadamard_exp, inv, log, scale_z, sqrt

from known_counts import (
    C1_CENTER,
    CSCC_BY_EXCESS,
    CSCC_TOTALS,
    P_INF_CENTER,
    SAT_BY_CLAUSES,
    SAT_TOTALS,
    SCC_TOTALS,
)


def report(name, ok, detail=""):
    print(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}".rstrip())
    return ok


def cli_rows(capsys, *argv):
    assert run(list(argv)) == 0
    out = capsys.readouterr().out
    lines = out.splitlines()
    return lines[0], [tuple(int(x) for x in line.split(",")) for line in lines[1:]]


def gf_row(series, gf_type, n):
    return counting.extract_row(series, gf_type, n)


# ---------------------------------------------------------------------------

@pytest.mark.criterion("C1 table reproduction (n <= 7, exact, < 10 s)")
def test_table_reproduction(capsys):
    catalog._exact_base.cache_clear()
    t0 = time.perf_counter()
    head, sat_rows = cli_rows(capsys, "count", "sat", "--n-max", "7")
    _, sat_totals = cli_rows(capsys, "count", "sat", "--n-max", "7", "--totals")
    chead, cscc_rows = cli_rows(capsys, "count", "cscc", "--n-max", "7", "--by-excess")
    _, cscc_totals = cli_rows(capsys, "count", "cscc", "--n-max", "7", "--by-excess", "--totals")
    elapsed = time.perf_counter() - t0
    assert head == "n,m,count" and chead == "n,k,count"
    sat = {(n, m): c for n, m, c in sat_rows}
    cscc = {(n, k): c for n, k, c in cscc_rows}
    mismatches = 0
    for n, row in SAT_BY_CLAUSES.items():
        mismatches += sum(sat.get((n, m), 0) != c for m, c in enumerate(row))
        mismatches += len([m for (nn, m) in sat if nn == n]) != 2 * n * (n - 1) + 1
    for n, row in CSCC_BY_EXCESS.items():
        mismatches += sum(cscc.get((n, k), 0) != c for k, c in enumerate(row, start=1))
    mismatches += dict(sat_totals) != SAT_TOTALS
    mismatches += {n: t for n, t in cscc_totals if n >= 2} != CSCC_TOTALS
    ok = (mismatches == 0 and sat[(7, 12)] == 84253905879486
          and dict(sat_totals)[7] == 1115068294703296663717 and cscc[(7, 1)] == 1209600
          and elapsed < 10)
    assert report("C1 table reproduction", ok, f"mismatches={mismatches} time={elapsed:.2f}s")


@pytest.mark.criterion("C2 oracle equivalence (brute force = GF)")
def test_oracle_equivalence():
    brute_sat_counts(2)  # compile the sweep kernel outside the timed region
    sat = build_sat(4)
    t0 = time.perf_counter()
    small_ok = True
    for n in (1, 2, 3):
        row = gf_row(sat, "implication", n)
        want = {m: (row[m] if m < len(row) else 0) for m in range(2 * n * (n - 1) + 1)}
        small_ok &= brute_sat_counts(n) == want
    fast = time.perf_counter() - t0
    row4 = gf_row(sat, "implication", 4)
    t0 = time.perf_counter()
    got4 = brute_sat_counts(4)
    slow = time.perf_counter() - t0
    n4_ok = got4 == {m: (row4[m] if m < len(row4) else 0) for m in range(25)}
    cscc3 = brute_cscc_counts(3)
    crow = gf_row(build_cscc(3), "exponential", 3)
    cscc_ok = sum(cscc3.values()) == 1606 and cscc3 == {m: c for m, c in enumerate(crow) if c}
    scc = build_scc(4)
    scc_counts = tuple(brute_scc_digraph_counts(k) for k in range(1, 5))
    scc_ok = scc_counts == (1, 1, 18, 1606) == tuple(SCC_TOTALS.values()) and all(
        brute_scc_digraph_counts_by_arcs(k)
        == {m: c for m, c in enumerate(gf_row(scc, "exponential", k)) if c}
        for k in range(1, 5))
    ok = small_ok and fast < 1 and n4_ok and cscc_ok and scc_ok
    assert report("C2 oracle equivalence", ok,
                  f"n<=3 {fast:.2f}s, n=4 {slow:.1f}s, scc={scc_counts}")


@pytest.mark.criterion("C3 dual-formula consistency (n <= 10)")
def test_dual_formula():
    sat = build_sat(10)
    bad = 0
    for n in range(11):
        primary = gf_row(sat, "implication", n)
        for m in range(2 * n * (n - 1) + 1):
            want = primary[m] if m < len(primary) else 0
            bad += counting.variant_sat_count(n, m) != want
    assert report("C3 dual-formula consistency", bad == 0, f"mismatches={bad}")


@pytest.mark.criterion("C4 marked-GF specializations")
def test_marked_specializations():
    order = 8
    base = build_base(order)
    scc, cscc = build_scc(order), build_cscc(order)
    all_cnf = build_cnf_marked(1, 1, 1, order, scc=scc, cscc=cscc) == base.CNF
    sat_egf = hadamard_exp(build_sat(order), scale_z(base.D, 2))
    sat_ok = build_cnf_marked(1, 1, 0, order, scc=scc, cscc=cscc) == sat_egf
    lemma_ok = True
    s6, c6 = scc.truncate(6), cscc.truncate(6)
    for v in (0, 1, 2):
        lhs = build_cnf_marked(0, v, 1, 6, scc=s6, cscc=c6)
        lemma_ok &= lhs == exp(c6 + scale_z(s6, 2) * Fraction(v, 2))
    ok = all_cnf and sat_ok and lemma_ok
    assert report("C4 marked-GF specializations", ok,
                  f"all-CNF={all_cnf} SAT={sat_ok} no-source-like={lemma_ok}")


@pytest.mark.criterion("C5 interval soundness (n <= 7, widths to 1e-30)")
def test_interval_soundness():
    grid = [Fraction(k, 23) for k in (0, 1, 2, 3, 5, 8, 11, 15, 19, 22)]
    failures = 0
    narrowest = None
    for n in range(1, 8):
        for p in grid:
            exact = prob_exact(n, p)
            for width in (Fraction(1, 10 ** 10), Fraction(1, 10 ** 20), Fraction(1, 10 ** 30)):
                iv = prob_interval(n, p, width)
                w = Fraction(*iv.width.as_integer_ratio())
                failures += not (iv.contains(exact) and w <= width)
                narrowest = w if narrowest is None else min(narrowest, w)
    assert report("C5 interval soundness", failures == 0,
                  f"failures={failures} narrowest width={float(narrowest):.1e}")


@pytest.mark.criterion("C6 phase-transition constant at mu = 0")
def test_center_constant():
    t0 = time.perf_counter()
    config = WindowConfig(mu_grid=[Fraction(0)], n_grid=default_n_grid(100, 1000, 30), degree=7,
                          target_width=1e-20, jobs=1)
    (point,) = window_curve(config)
    elapsed = time.perf_counter() - t0
    widths_ok = all(Fraction(*iv.width.as_integer_ratio()) <= Fraction(1, 10 ** 20)
                    for _, iv in point.points)
    fits = {7: point.fit, 6: fit_expansion(point.points, 6), 8: fit_expansion(point.points, 8)}
    ok = widths_ok and elapsed < 15 * 60 and len(point.points) == 30
    lines = []
    for d in (6, 7):
        c0, c1 = fits[d].coefficients[0], fits[d].coefficients[1]
        ok &= abs(c0 - P_INF_CENTER) < 1e-6 and abs(c1 - C1_CENTER) < 1e-3
        ok &= 0 <= c0 <= 1
        # stability: the next degree moves c_0 by less than the reported error
        ok &= abs(fits[d + 1].coefficients[0] - c0) < fits[d].errors[0]
        lines.append(f"d={d}: c0={mpmath.nstr(c0, 12)} c1={mpmath.nstr(c1, 10)}"
                     f" err0={mpmath.nstr(fits[d].errors[0], 2)}")
    assert report("C6 phase-transition constant", ok, f"{'; '.join(lines)}; {elapsed:.0f}s")


@pytest.mark.criterion("C7 curve sanity over mu in [-4, 4]")
def test_curve_sanity(capsys):
    argv = ["window", "--mu-min", "-4", "--mu-max", "4", "--mu-step", "1/2",
            "--n-min", "100", "--n-max", "400", "--n-points", "13", "--degree", "7",
            "--format", "json"]
    assert run(argv) == 0
    rows = json.loads(capsys.readouterr().out)
    mus = [Fraction(r["mu"]) for r in rows]
    values = [float(r["p_infinity"]) for r in rows]
    inside = all(0 <= v <= 1 for v in values)
    monotone = all(b <= a for a, b in zip(values, values[1:]))
    ok = mus == default_mu_grid(-4, 4, Fraction(1, 2)) and inside and monotone
    assert report("C7 curve sanity", ok,
                  f"P(-4)={values[0]:.6f} P(0)={values[len(values) // 2]:.8f} P(4)={values[-1]:.2e}")


# -- C8 -------------------------------------------------------------------------

def _random_series(rng, order, c0=None):
    coeffs = []
    for n in range(order + 1):
        if n == 0 and c0 is not None:
            coeffs.append(EXACT.scalar(c0))
            continue
        coeffs.append(ExactCoeff.from_fraction_poly(
            [Fraction(rng.randint(-7, 7), rng.randint(1, 6)) for _ in range(rng.randint(0, 3))],
            rng.randint(0, 3)))
    return TruncatedSeries(coeffs)


@pytest.mark.criterion("C8 algebraic property suite")
def test_algebraic_suite():
    rng = random.Random(8)
    order = 7
    one = TruncatedSeries.constant(order, EXACT)
    checks = {"exp/log": True, "sqrt/square": True, "inv/mul": True, "hadamard scaling": True,
              "graphic convolution": True, "structure n<=3": True}
    for _ in range(10):
        a0, a1 = _random_series(rng, order, 0), _random_series(rng, order, 1)
        checks["exp/log"] &= log(exp(a0)) == a0 and exp(log(a1)) == a1
        r = sqrt(a1)
        checks["sqrt/square"] &= r * r == a1
        checks["inv/mul"] &= a1 * inv(a1) == one
        f, g = _random_series(rng, order), _random_series(rng, order)
        checks["hadamard scaling"] &= hadamard_exp(scale_z(f, 2), g) == hadamard_exp(f, scale_z(g, 2))

    for _ in range(10):
        a = [ExactCoeff([rng.randint(-4, 4) for _ in range(rng.randint(0, 4))]) for _ in range(7)]
        b = [ExactCoeff([rng.randint(-4, 4) for _ in range(rng.randint(0, 4))]) for _ in range(7)]
        sa = TruncatedSeries([x * Fraction(1, math.factorial(n)) for n, x in enumerate(a)])
        sb = TruncatedSeries([x * Fraction(1, math.factorial(n)) for n, x in enumerate(b)])
        prod = graphic_to_egf(to_graphic(sa) * to_graphic(sb))
        for n in range(7):
            want = ExactCoeff()
            for k in range(n + 1):
                want = want + (a[k] * b[n - k]).shift(k * (n - k)) * math.comb(n, k)
            checks["graphic convolution"] &= prod.egf_coefficient(n) == want

    failures = 0
    for n in (1, 2, 3):
        for formula in iter_formulas(n):
            failures += not check_structure(formula.digraph()).passed
    checks["structure n<=3"] = failures == 0
    ok = all(checks.values())
    assert report("C8 algebraic property suite", ok,
                  ", ".join(f"{k}={'ok' if v else 'FAIL'}" for k, v in checks.items()))
