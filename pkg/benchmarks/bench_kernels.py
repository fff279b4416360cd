"""Time the brute-force sweep kernels: numba bitsets vs batched numpy closure.

    python benchmarks/bench_kernels.py [--n 3] [--repeat 3]

Both back ends must agree on every popcount bucket; the script exits 1 if
they do not. With ``TWOSAT_DISABLE_NUMBA=1`` only the numpy column is timed.
"""
import argparse
import sys
import time

import numpy as np

from twosat import _kernels
from twosat.oracle import _clause_arcs, _digraph_arcs


def _best(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=3, help="variables for the SAT sweep (<= 4)")
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    cases = []
    src, dst = _clause_arcs(args.n)
    cases.append((f"sat n={args.n}", src, dst, 2 * args.n, args.n, _kernels.MODE_SAT))
    cases.append((f"cscc n={args.n}", src, dst, 2 * args.n, args.n, _kernels.MODE_CSCC))
    src4, dst4 = _digraph_arcs(4)
    cases.append(("strong k=4", src4, dst4, 4, 0, _kernels.MODE_STRONG))

    print(f"backend: {_kernels.backend()}")
    print(f"{'case':<14}{'masks':>10}{'numba s':>12}{'numpy s':>12}{'speedup':>10}")
    ok = True
    for name, s, d, nv, nvars, mode in cases:
        hi = 1 << s.shape[0]
        t_np, ref = _best(lambda: _kernels.tally_numpy(s, d, nv, nvars, mode, 0, hi), args.repeat)
        if _kernels.HAVE_NUMBA:
            _kernels.tally(s, d, nv, nvars, mode, 0, min(hi, 64))  # compile outside the timing
            t_nb, got = _best(lambda: _kernels.tally(s, d, nv, nvars, mode, 0, hi), args.repeat)
            ok &= bool(np.array_equal(got, ref))
            print(f"{name:<14}{hi:>10}{t_nb:>12.4f}{t_np:>12.4f}{t_np / t_nb:>9.1f}x")
        else:
            print(f"{name:<14}{hi:>10}{'-':>12}{t_np:>12.4f}{'-':>10}")
    if not ok:
        print("MISMATCH between numba and numpy back ends", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
