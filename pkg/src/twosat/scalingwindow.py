"""Finite-n probabilities inside the critical window and extrapolation to n -> oo.

Inside the window ``p = (1 + mu * n**(-1/3)) / (2n)`` the probability is
modelled as ``c_0 + c_1 n^(-1/3) + ... + c_d n^(-d/3)``; ``c_0`` estimates
the limiting probability ``P_oo(mu)``.
"""
from __future__ import annotations

import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from .coeffring import IntervalCoeff, _contexts
from .errors import RankDeficient
from .probability import initial_precision, prob_interval

__all__ = [
    "WindowConfig",
    "FitResult",
    "CurvePoint",
    "window_probability",
    "prob_at_mu",
    "fit_expansion",
    "window_curve",
    "default_mu_grid",
    "default_n_grid",
]

log = logging.getLogger(__name__)


def default_mu_grid(lo=-4, hi=4, step=Fraction(1, 4)):
    lo, hi, step = Fraction(lo), Fraction(hi), Fraction(step)
    if step <= 0:
        raise ValueError("mu step must be positive")
    out = []
    mu = lo
    while mu <= hi:
        out.append(mu)
        mu += step
    return out


def default_n_grid(n_min=100, n_max=1000, points=30):
    """``points`` integers spread evenly over ``[n_min, n_max]`` (duplicates dropped)."""
    if points < 2:
        return [n_min]
    span = n_max - n_min
    return sorted({n_min + round(i * span / (points - 1)) for i in range(points)})


@dataclass
class WindowConfig:
    mu_grid: list = field(default_factory=default_mu_grid)
    n_grid: list = field(default_factory=default_n_grid)
    degree: int = 7
    regression_precision_bits: int = 512
    target_width: float = 1e-20
    n_min: int = 100
    jobs: int = 1

    def __post_init__(self):
        self.mu_grid = [Fraction(m) for m in self.mu_grid]
        grid = [int(n) for n in self.n_grid]
        if any(b <= a for a, b in zip(grid, grid[1:])):
            raise ValueError("n grid must be strictly increasing")
        self.n_grid = [n for n in grid if n >= self.n_min]
        if self.n_grid and self.n_grid[0] < 8:
            raise ValueError("n grid values must be >= 8")
        if self.degree < 1:
            raise ValueError("degree must be >= 1")
        if self.degree + 1 > len(self.n_grid):
            raise ValueError(
                f"degree {self.degree} needs at least {self.degree + 1} grid points "
                f"(have {len(self.n_grid)} with n >= {self.n_min})")
        if self.target_width <= 0:
            raise ValueError("target width must be positive")


@dataclass
class FitResult:
    coefficients: list
    errors: list
    residual: object
    degree: int
    precision_bits: int

    @property
    def p_infinity(self):
        return self.coefficients[0]


@dataclass
class CurvePoint:
    mu: Fraction
    p_infinity: object
    error: object
    fit: FitResult
    points: list = field(default_factory=list)


def window_probability(n, mu, prec):
    """Rational bounds ``(lo, hi)`` enclosing ``(1 + mu n^(-1/3)) / (2n)``."""
    mu = Fraction(mu)
    down, up = _contexts(prec)
    root_lo, root_hi = down.cbrt(n), up.cbrt(n)
    inv_lo = Fraction(*down.div(1, root_hi).as_integer_ratio())
    inv_hi = Fraction(*up.div(1, root_lo).as_integer_ratio())
    shift = (mu * inv_lo, mu * inv_hi) if mu >= 0 else (mu * inv_hi, mu * inv_lo)
    return (1 + shift[0]) / (2 * n), (1 + shift[1]) / (2 * n)


def prob_at_mu(n, mu, target_width=1e-20):
    """Certified satisfiability probability at the window point ``(n, mu)``."""
    prec = initial_precision(n, target_width)
    p_lo, p_hi = window_probability(n, mu, prec)
    if not (0 < p_lo and p_hi < 1):
        raise ValueError(f"window point n={n}, mu={mu} gives p outside (0, 1)")
    return prob_interval(n, (p_lo, p_hi), target_width)


def _mpf(x):
    man, exp = x.as_mantissa_exp()
    return mpmath.mpf((int(man), int(exp)))


def _design(ns, degree):
    third = mpmath.mpf(1) / 3
    return mpmath.matrix([[mpmath.mpf(n) ** (-k * third) for k in range(degree + 1)]
                          for n in ns])


def _solve(ns, ys, degree):
    """Least squares on the column-normalised design; returns (coeffs, solution operator, residual)."""
    a = _design(ns, degree)
    rows, cols = a.rows, a.cols
    norms = [mpmath.norm(a.column(k)) for k in range(cols)]
    for k in range(cols):
        for i in range(rows):
            a[i, k] /= norms[k]
    q, r = mpmath.qr(a, mode="skinny")
    diag = [abs(r[k, k]) for k in range(cols)]
    if min(diag) <= max(diag) * mpmath.mpf(2) ** (-mpmath.mp.prec // 2):
        raise RankDeficient(f"design matrix of degree {degree} is singular at "
                            f"{mpmath.mp.prec} bits")
    # solution operator M = diag(1/norms) R^-1 Q^T, so that c = M y
    rinv = mpmath.inverse(r)
    m = rinv * q.T
    for k in range(cols):
        for j in range(rows):
            m[k, j] /= norms[k]
    y = mpmath.matrix(ys)
    c = m * y
    resid = mpmath.norm(_design(ns, degree) * c - y)
    return [c[k] for k in range(cols)], m, resid


def fit_expansion(points, degree, precision_bits=512):
    """Fit ``sum_k c_k n^(-k/3)`` to ``points`` of ``(n, value)``.

    ``value`` may be an :class:`IntervalCoeff` (its midpoint is fitted and its
    width propagated through the linear solution operator) or any real
    number. The error estimate of ``c_k`` is the change under a degree
    ``d - 1`` refit plus the propagated half-widths.
    """
    points = list(points)
    if len(points) < degree + 1:
        raise ValueError(f"need at least {degree + 1} points for degree {degree}")
    with mpmath.workprec(precision_bits):
        ns, ys, radii = [], [], []
        for n, value in points:
            ns.append(int(n))
            if isinstance(value, IntervalCoeff):
                ys.append(_mpf(value.mid))
                radii.append(_mpf(value.width) / 2)
            else:
                ys.append(mpmath.mpf(value) if not isinstance(value, Fraction)
                          else mpmath.mpf(value.numerator) / value.denominator)
                radii.append(mpmath.mpf(0))
        coeffs, m, resid = _solve(ns, ys, degree)
        if degree >= 1:
            lower, _, _ = _solve(ns, ys, degree - 1)
            lower = lower + [mpmath.mpf(0)]
        else:
            lower = [mpmath.mpf(0)] * (degree + 1)
        errors = []
        for k in range(degree + 1):
            propagated = mpmath.fsum(abs(m[k, j]) * radii[j] for j in range(len(ns)))
            errors.append(abs(coeffs[k] - lower[k]) + propagated)
        return FitResult(coefficients=[+c for c in coeffs], errors=[+e for e in errors],
                         residual=+resid, degree=degree, precision_bits=precision_bits)


def _window_job(args):
    n, mu, width = args
    return prob_at_mu(n, mu, width)


def _imap(fn, jobs, workers):
    if workers <= 1 or len(jobs) <= 1:
        yield from map(fn, jobs)
        return
    with ProcessPoolExecutor(max_workers=workers) as pool:
        yield from pool.map(fn, jobs, chunksize=1)


def window_curve(config, progress=None):
    """``[CurvePoint]`` over ``config.mu_grid``; ``c_0`` of each fit estimates ``P_oo(mu)``."""
    workers = config.jobs or os.cpu_count() or 1
    # largest n first so long jobs do not trail at the end of the pool
    jobs = [(n, mu, config.target_width)
            for mu in config.mu_grid for n in sorted(config.n_grid, reverse=True)]
    results = {}
    for (n, mu, _), value in zip(jobs, _imap(_window_job, jobs, workers)):
        results[(mu, n)] = value
        if progress is not None:
            progress(n, mu, value)
    curve = []
    for mu in config.mu_grid:
        points = [(n, results[(mu, n)]) for n in config.n_grid]
        fit = fit_expansion(points, config.degree, config.regression_precision_bits)
        log.info("mu=%s: P_oo=%s +/- %s", mu, mpmath.nstr(fit.p_infinity, 15),
                 mpmath.nstr(fit.errors[0], 3))
        curve.append(CurvePoint(mu, fit.p_infinity, fit.errors[0], fit, points))
    return curve

