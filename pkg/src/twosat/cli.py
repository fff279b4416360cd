"""Command-line front end.

    twosat count sat|cscc|scc --n-max K [--format csv|json] [--by-excess] [--totals]
    twosat oracle sat|cscc|scc --n N [--slow]
    twosat verify --n-max K [--slow]
    twosat prob --n N --p NUM/DEN [--exact | --width W]
    twosat window --mu-min A --mu-max B --mu-step S --n-min L --n-max U
                  --n-points P --degree D [--width W]

Exit status: 0 on success, 1 on a mismatch or failed computation, 2 on bad usage.
"""
from __future__ import annotations

import argparse
import json
import logging
import math
import sys
from fractions import Fraction

from . import counting, oracle, probability
from . import _kernels
from .errors import TwoSatError

log = logging.getLogger(__name__)

KIND_TABLES = {"sat": counting.SAT, "cscc": counting.CSCC, "scc": counting.SCC}


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# rendering

def render_rational(q):
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}" if q.denominator != 1 else str(q.numerator)


def decimal_bound(q, digits, up):
    """Scientific-notation decimal with ``digits`` significant digits, rounded
    toward +oo (``up``) or -oo, so that printed bounds still enclose."""
    q = Fraction(q)
    if q == 0:
        return "0"
    sign = "-" if q < 0 else ""
    a = abs(q)
    e = len(str(a.numerator)) - len(str(a.denominator))
    if Fraction(10) ** e > a:
        e -= 1
    scaled = a * Fraction(10) ** (digits - 1 - e)
    # rounding away from zero for the upper bound of a positive value and the
    # lower bound of a negative one
    away = up != (q < 0)
    mant = math.ceil(scaled) if away else math.floor(scaled)
    if mant >= 10 ** digits:
        mant //= 10
        e += 1
    s = str(mant)
    body = s[0] + ("." + s[1:] if len(s) > 1 else "")
    return f"{sign}{body}e{e:+d}"


def _as_fraction(x):
    return Fraction(*x.as_integer_ratio())


def _interval_digits(iv):
    width = _as_fraction(iv.width)
    if width == 0:
        return 30
    # enough digits to resolve the width, never more than the mantissa carries
    need = max(20, int(-math.log10(float(width))) + 6) if width < 1 else 20
    return min(need, int(iv.precision_bits * 0.30103) + 1)


def _write(args, text):
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_table(args, table):
    if getattr(args, "totals", False):
        text = counting.totals_json(table) if args.format == "json" else counting.totals_csv(table)
    else:
        text = counting.table_json(table) if args.format == "json" else counting.table_csv(table)
    _write(args, text)


# ---------------------------------------------------------------------------
# argument types

def _positive_int(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def _nonneg_int(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {v}")
    return v


def _rational(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected a rational NUM/DEN, got {text!r}")


def _width(text):
    try:
        v = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected a positive width, got {text!r}")
    if v <= 0:
        raise argparse.ArgumentTypeError(f"width must be positive, got {text}")
    return v


# ---------------------------------------------------------------------------
# commands

def cmd_count(args):
    kind = KIND_TABLES[args.kind]
    if args.by_excess and args.kind != "cscc":
        raise UsageError("--by-excess only applies to 'count cscc'")
    by_excess = args.by_excess or args.kind != "cscc"
    if args.n_max > probability.EXACT_MAX_N:
        raise UsageError(f"--n-max is limited to {probability.EXACT_MAX_N}")
    _emit_table(args, counting.emit_table(kind, args.n_max, by_excess=by_excess))
    return 0


def _oracle_counts(kind, n, slow, progress=None):
    if kind == "sat":
        limit = oracle.SAT_MAX_N if slow else oracle.SAT_MAX_N - 1
        if n > limit:
            raise UsageError(f"oracle sat needs n <= {limit}" + ("" if slow else " (use --slow for n = 4)"))
        return oracle.brute_sat_counts(n, progress=progress)
    if kind == "cscc":
        if n > oracle.CSCC_MAX_N:
            raise UsageError(f"oracle cscc needs n <= {oracle.CSCC_MAX_N}")
        return oracle.brute_cscc_counts(n)
    if n > oracle.SCC_MAX_K:
        raise UsageError(f"oracle scc needs n <= {oracle.SCC_MAX_K}")
    return oracle.brute_scc_digraph_counts_by_arcs(n)


def _stderr_progress(done, total):
    print(f"  {done}/{total} masks", file=sys.stderr)


def cmd_oracle(args):
    _kernels.set_threads(args.jobs)
    progress = _stderr_progress if args.slow else None
    counts = _oracle_counts(args.kind, args.n, args.slow, progress)
    table = counting.counts_from_map(KIND_TABLES[args.kind], args.n, counts,
                                     by_excess=args.by_excess)
    _emit_table(args, table)
    return 0


def _compare(label, got, want, out):
    keys = sorted(set(got) | set(want))
    bad = [k for k in keys if got.get(k, 0) != want.get(k, 0)]
    if bad:
        out.append(f"FAIL {label}: {len(bad)} mismatching entries, first at {bad[0]}: "
                   f"{got.get(bad[0], 0)} != {want.get(bad[0], 0)}")
    else:
        out.append(f"ok   {label}")
    return not bad


def cmd_verify(args):
    _kernels.set_threads(args.jobs)
    k = args.n_max
    lines = []
    ok = True
    sat = counting.emit_table(counting.SAT, max(k, 1))
    sat_limit = min(k, oracle.SAT_MAX_N if args.slow else oracle.SAT_MAX_N - 1)
    for n in range(1, sat_limit + 1):
        want = {m: c for (nn, m), c in sat.rows.items() if nn == n}
        ok &= _compare(f"sat n={n} (oracle vs GF)", oracle.brute_sat_counts(n), want, lines)
    cscc = counting.emit_table(counting.CSCC, max(k, 1), by_excess=False)
    for n in range(1, min(k, oracle.CSCC_MAX_N) + 1):
        want = {m: c for (nn, m), c in cscc.rows.items() if nn == n and c}
        ok &= _compare(f"cscc n={n} (oracle vs GF)", oracle.brute_cscc_counts(n), want, lines)
    scc = counting.emit_table(counting.SCC, max(k, 1))
    for n in range(1, min(k, oracle.SCC_MAX_K) + 1):
        want = {m: c for (nn, m), c in scc.rows.items() if nn == n and c}
        ok &= _compare(f"scc k={n} (oracle vs GF)", oracle.brute_scc_digraph_counts_by_arcs(n),
                       want, lines)
    for n in range(1, k + 1):
        want = {m: c for (nn, m), c in sat.rows.items() if nn == n}
        got = dict(enumerate(counting.variant_sat_row(n)))
        ok &= _compare(f"sat n={n} (variant vs primary)", got, want, lines)
    sys.stdout.write("\n".join(lines) + "\n")
    return 0 if ok else 1


def cmd_prob(args):
    if args.exact and args.width is not None:
        raise UsageError("--exact and --width are mutually exclusive")
    if not 0 <= args.p < 1:
        raise UsageError(f"--p must lie in [0, 1), got {render_rational(args.p)}")
    p = render_rational(args.p)
    if args.exact:
        if args.n > probability.EXACT_MAX_N:
            raise UsageError(f"--exact is limited to n <= {probability.EXACT_MAX_N}; use --width")
        value = probability.prob_exact(args.n, args.p)
        record = {"n": args.n, "p": p, "lo": render_rational(value),
                  "hi": render_rational(value), "precisionBits": None, "mode": "exact"}
        text_line = render_rational(value)
    else:
        width = args.width if args.width is not None else Fraction(1, 10 ** 30)
        iv = probability.prob_interval(args.n, args.p, width)
        digits = _interval_digits(iv)
        record = {"n": args.n, "p": p,
                  "lo": decimal_bound(_as_fraction(iv.lo), digits, up=False),
                  "hi": decimal_bound(_as_fraction(iv.hi), digits, up=True),
                  "precisionBits": iv.precision_bits, "mode": "interval"}
        text_line = f"[{record['lo']}, {record['hi']}]"
    if args.format == "json":
        _write(args, json.dumps(record) + "\n")
    elif args.format == "csv":
        header = "n,p,lo,hi,precision_bits,mode"
        bits = "" if record["precisionBits"] is None else str(record["precisionBits"])
        _write(args, f"{header}\n{args.n},{p},{record['lo']},{record['hi']},{bits},{record['mode']}\n")
    else:
        _write(args, text_line + "\n")
    return 0


def cmd_window(args):
    from . import scalingwindow as sw
    import mpmath

    if args.mu_max < args.mu_min:
        raise UsageError("--mu-max must be >= --mu-min")
    if args.n_max < args.n_min:
        raise UsageError("--n-max must be >= --n-min")
    try:
        config = sw.WindowConfig(
            mu_grid=sw.default_mu_grid(args.mu_min, args.mu_max, args.mu_step),
            n_grid=sw.default_n_grid(args.n_min, args.n_max, args.n_points),
            degree=args.degree,
            regression_precision_bits=args.regression_bits,
            target_width=args.width,
            n_min=args.n_min,
            jobs=args.jobs,
        )
    except ValueError as exc:
        raise UsageError(str(exc))
    progress = None
    if args.verbose:
        def progress(n, mu, value):
            print(f"  n={n} mu={render_rational(mu)} bits={value.precision_bits}", file=sys.stderr)
    curve = sw.window_curve(config, progress)
    rows = [(render_rational(pt.mu), mpmath.nstr(pt.p_infinity, args.digits, strip_zeros=False),
             mpmath.nstr(pt.error, 3)) for pt in curve]
    if args.format == "json":
        # same three fields as the CSV, plus the whole fitted expansion
        records = []
        for (m, v, e), pt in zip(rows, curve):
            records.append({
                "mu": m, "p_infinity": v, "error": e,
                "coefficients": [mpmath.nstr(c, args.digits) for c in pt.fit.coefficients],
                "coefficient_errors": [mpmath.nstr(c, 3) for c in pt.fit.errors],
            })
        text = json.dumps(records, indent=1) + "\n"
    else:
        text = "mu,p_infinity,error\n" + "".join(f"{m},{v},{e}\n" for m, v, e in rows)
    _write(args, text)
    return 0


# ---------------------------------------------------------------------------
# parser

def build_parser():
    parser = argparse.ArgumentParser(prog="twosat", description="Exact 2-SAT enumeration.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def output_opts(p, formats=("csv", "json"), default="csv"):
        p.add_argument("--format", choices=formats, default=default)
        p.add_argument("--output", "-o", metavar="PATH", help="write to PATH instead of stdout")

    def jobs_opt(p):
        p.add_argument("--jobs", type=_positive_int, default=None,
                       help="worker cap (default: all cores)")

    p = sub.add_parser("count", help="exact count tables from the generating functions")
    p.add_argument("kind", choices=sorted(KIND_TABLES))
    p.add_argument("--n-max", type=_positive_int, required=True)
    p.add_argument("--by-excess", action="store_true",
                   help="index the cscc table by excess k = m - n")
    p.add_argument("--totals", action="store_true", help="emit row totals only")
    output_opts(p)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("oracle", help="brute-force counts by exhaustive enumeration")
    p.add_argument("kind", choices=sorted(KIND_TABLES))
    p.add_argument("--n", type=_nonneg_int, required=True)
    p.add_argument("--slow", action="store_true", help="allow the n = 4 SAT sweep")
    p.add_argument("--by-excess", action="store_true")
    output_opts(p)
    jobs_opt(p)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("verify", help="cross-check generating functions against brute force")
    p.add_argument("--n-max", type=_positive_int, required=True)
    p.add_argument("--slow", action="store_true", help="include the n = 4 SAT sweep")
    jobs_opt(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("prob", help="probability that a random (n, p) 2-CNF is satisfiable")
    p.add_argument("--n", type=_nonneg_int, required=True)
    p.add_argument("--p", type=_rational, required=True)
    p.add_argument("--exact", action="store_true")
    p.add_argument("--width", type=_width, default=None,
                   help="target enclosure width (default 1e-30)")
    output_opts(p, ("text", "csv", "json"), "text")
    p.set_defaults(func=cmd_prob)

    p = sub.add_parser("window", help="limiting probability across the critical window")
    p.add_argument("--mu-min", type=_rational, default=Fraction(-4))
    p.add_argument("--mu-max", type=_rational, default=Fraction(4))
    p.add_argument("--mu-step", type=_width, default=Fraction(1, 4))
    p.add_argument("--n-min", type=_positive_int, default=100)
    p.add_argument("--n-max", type=_positive_int, default=1000)
    p.add_argument("--n-points", type=_positive_int, default=30)
    p.add_argument("--degree", type=_positive_int, default=7)
    p.add_argument("--width", type=_width, default=Fraction(1, 10 ** 20))
    p.add_argument("--regression-bits", type=_positive_int, default=512)
    p.add_argument("--digits", type=_positive_int, default=15,
                   help="significant digits printed for p_infinity")
    output_opts(p)
    jobs_opt(p)
    p.set_defaults(func=cmd_window)
    return parser


def run(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"twosat {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except (TwoSatError, ValueError, ArithmeticError) as exc:
        print(f"twosat {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


def main():
    sys.exit(run())
