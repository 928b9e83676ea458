"""Scalar optimization helpers: grid-seeded golden-section search and bisection.

All protocol objectives in this package are smooth and unimodal on their
feasible intervals, so a dense grid to localize the optimum followed by
golden-section refinement is both robust and fast.
"""

from __future__ import annotations

from math import sqrt
from typing import Callable

import numpy as np

from .errors import InfeasibleVariantError

_INV_PHI = (sqrt(5.0) - 1.0) / 2.0


def maximize_unimodal(
    f: Callable[[float], float],
    lo: float = 0.0,
    hi: float = 1.0,
    grid_points: int = 10_000,
    tol: float = 1e-12,
) -> tuple[float, float]:
    """Maximize a unimodal function on [lo, hi].

    Seeds with a uniform grid of `grid_points` samples, then refines the
    bracketing interval around the best sample by golden-section search
    until its width falls below `tol`. Returns (argmax, max).
    """
    xs = np.linspace(lo, hi, grid_points)
    vals = np.array([f(x) for x in xs])
    i = int(np.argmax(vals))  # lowest index wins ties: deterministic
    a = xs[max(i - 1, 0)]
    b = xs[min(i + 1, grid_points - 1)]

    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = f(d)
    x = 0.5 * (a + b)
    return x, f(x)


def bisect_root(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    tol: float = 1e-12,
    max_iter: int = 200,
) -> float:
    """Find a root of f on [lo, hi] by bracketing bisection.

    Raises InfeasibleVariantError when f(lo) and f(hi) have the same sign.
    """
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if flo * fhi > 0.0:
        raise InfeasibleVariantError(
            f"no sign change on [{lo}, {hi}]: f(lo)={flo:.6g}, f(hi)={fhi:.6g}"
        )
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        fmid = f(mid)
        if fmid == 0.0 or hi - lo < tol:
            return mid
        if flo * fmid < 0.0:
            hi = mid
        else:
            lo, flo = mid, fmid
    return 0.5 * (lo + hi)
