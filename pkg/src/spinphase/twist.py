"""Locate the twisting times that minimize the squeezing parameters.

Both squeezing curves are smooth and unimodal near their first dip, so a
coarse log-spaced scan followed by derivative-free golden-section
refinement is enough; nothing is differentiated through the matrix
exponential.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .algebra import SpinQuantum
from .errors import InsufficientData, NoInteriorMinimum
from .metrics import xi_squared, zeta_squared
from .states import _evolver

METRICS = ("xi", "zeta")

COARSE_POINTS = 200
NU_FLOOR = 1e-4
BRACKET_FACTOR = 4.0  # upper bound 4 log2(N)/N, ~3x the expected first dip
NU_TOL = 1e-8

_INV_GOLDEN = (math.sqrt(5) - 1) / 2


def _metric_fn(j: SpinQuantum, metric: str):
    if metric not in METRICS:
        raise ValueError(f"metric must be one of {METRICS}, got {metric!r}")
    ev = _evolver(j.two_j)
    if metric == "xi":
        return lambda nu: xi_squared(ev.state(nu))
    return lambda nu: zeta_squared(ev.state(nu))


@dataclass(frozen=True)
class TwistCurve:
    """Both squeezing parameters sampled along the twisting evolution."""

    j: SpinQuantum
    nu: np.ndarray = field(repr=False)
    xi_sq: np.ndarray = field(repr=False)
    zeta_sq: np.ndarray = field(repr=False)


@dataclass(frozen=True)
class TwistOptimum:
    nu_star: float
    value_at_star: float
    metric: str
    bracket: tuple[float, float]
    iterations: int


@dataclass(frozen=True)
class ScalingFit:
    """Least-squares fit of nu*(N) = c log2(N)/N.

    For the phase-squeezing metric no scaling law is established; the fit
    is still reported but flagged exploratory, alongside the raw table.
    """

    metric: str
    coefficient: float
    residuals: np.ndarray
    n_particles: np.ndarray
    nu_star: np.ndarray
    exploratory: bool


def sweep(j: SpinQuantum, nu_max: float, n_samples: int) -> TwistCurve:
    """Evaluate both squeezing parameters on a uniform grid over [0, nu_max]."""
    if nu_max <= 0:
        raise ValueError("nu_max must be positive")
    if n_samples < 16:
        raise ValueError("need at least 16 samples")
    ev = _evolver(j.two_j)
    nu = np.linspace(0.0, nu_max, n_samples)
    states = [ev.state(v) for v in nu]
    xi = np.array([xi_squared(s) for s in states])
    zeta = np.array([zeta_squared(s) for s in states])
    return TwistCurve(j, nu, xi, zeta)


def _first_local_min(grid: np.ndarray, vals: np.ndarray) -> int:
    """Index of the first interior local minimum, else NoInteriorMinimum."""
    for i in range(1, len(grid) - 1):
        if vals[i] <= vals[i - 1] and vals[i] <= vals[i + 1] \
                and (vals[i] < vals[i - 1] or vals[i] < vals[i + 1]):
            return i
    raise NoInteriorMinimum(
        "coarse scan is monotone over the bracket; no interior minimum found")


def _golden(f, lo: float, hi: float, tol: float) -> tuple[float, float, int]:
    """Golden-section search; returns the best evaluated point."""
    x1 = hi - _INV_GOLDEN * (hi - lo)
    x2 = lo + _INV_GOLDEN * (hi - lo)
    f1, f2 = f(x1), f(x2)
    best_x, best_f = (x1, f1) if f1 <= f2 else (x2, f2)
    iterations = 0
    while hi - lo > tol:
        if f1 < f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - _INV_GOLDEN * (hi - lo)
            f1 = f(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + _INV_GOLDEN * (hi - lo)
            f2 = f(x2)
        for x, fx in ((x1, f1), (x2, f2)):
            if fx < best_f:
                best_x, best_f = x, fx
        iterations += 1
    return best_x, best_f, iterations


def bracket_max(j: SpinQuantum) -> float:
    """Upper end of the coarse-scan bracket, 4 log2(N)/N."""
    n = j.n_particles
    return BRACKET_FACTOR * math.log2(max(n, 2)) / n


def minimize(j: SpinQuantum, metric: str) -> TwistOptimum:
    """Twisting time of the first dip of the chosen squeezing parameter.

    A 200-point log-spaced scan over [1e-4, 4 log2(N)/N] brackets the
    first interior local minimum, which golden-section search then
    refines to |delta nu| < 1e-8.  Deterministic: repeated calls return
    bit-identical results.
    """
    f = _metric_fn(j, metric)
    grid = np.logspace(math.log10(NU_FLOOR), math.log10(bracket_max(j)), COARSE_POINTS)
    vals = np.array([f(nu) for nu in grid])
    i = _first_local_min(grid, vals)
    lo, hi = float(grid[i - 1]), float(grid[i + 1])
    nu_star, value, iterations = _golden(f, lo, hi, NU_TOL)
    return TwistOptimum(nu_star, value, metric, (lo, hi), iterations)


def scaling_fit(n_values, metric: str) -> ScalingFit:
    """Fit nu*(N) = c log2(N)/N over a set of particle numbers.

    Requires at least 5 distinct even N >= 10 so there is something to
    fit; returns the coefficient and per-point residuals.
    """
    ns = sorted(set(int(n) for n in n_values))
    if len(ns) < 5 or any(n < 10 or n % 2 for n in ns):
        raise InsufficientData("need at least 5 distinct even particle numbers >= 10")
    if metric not in METRICS:
        raise ValueError(f"metric must be one of {METRICS}, got {metric!r}")
    nu_star = np.array([minimize(SpinQuantum(n), metric).nu_star for n in ns])
    n_arr = np.array(ns, dtype=float)
    x = np.log2(n_arr) / n_arr
    coefficient = float(np.dot(x, nu_star) / np.dot(x, x))
    residuals = nu_star - coefficient * x
    return ScalingFit(metric, coefficient, residuals, np.array(ns), nu_star,
                      exploratory=(metric == "zeta"))
