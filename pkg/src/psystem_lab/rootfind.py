"""Root finding for strictly increasing scalar functions on (0, inf)."""

from __future__ import annotations

import math
from typing import Callable

from .errors import ConvergenceError

_MAX_DOUBLINGS = 64
_MAX_ITERS = 260


def solve_increasing(
    fn: Callable[[float], float],
    target: float,
    dfn: Callable[[float], float] | None = None,
    x0: float = 1.0,
    res_tol: float = 1e-12,
    overflow_sign: float = 1.0,
) -> float:
    """Solve fn(x) = target for a strictly increasing fn, x > 0.

    Brackets the root by geometric expansion from ``x0`` (factor 2 each
    way, at most 2**64), then iterates bracket-safeguarded Newton steps,
    falling back to bisection whenever a step leaves the bracket or fails
    to shrink it, until |fn(x) - target| <= res_tol. Monotonicity makes
    the bracket bookkeeping safe; an OverflowError raised by ``fn`` is
    read as a value of sign ``overflow_sign``.
    """

    def value(x: float) -> float:
        try:
            return fn(x) - target
        except OverflowError:
            return math.inf if overflow_sign > 0 else -math.inf

    f0 = value(x0)
    if f0 == 0.0:
        return x0
    if f0 < 0.0:
        lo, flo = x0, f0
        hi = x0
        for _ in range(_MAX_DOUBLINGS):
            hi *= 2.0
            fhi = value(hi)
            if fhi >= 0.0:
                break
            lo, flo = hi, fhi
        else:
            raise ConvergenceError(f"no upper bracket within {x0}*2**{_MAX_DOUBLINGS}")
    else:
        hi, fhi = x0, f0
        lo = x0
        for _ in range(_MAX_DOUBLINGS):
            lo *= 0.5
            flo = value(lo)
            if flo <= 0.0:
                break
            hi, fhi = lo, flo
        else:
            raise ConvergenceError(f"no lower bracket within {x0}/2**{_MAX_DOUBLINGS}")

    x, fx = (lo, flo) if abs(flo) <= abs(fhi) else (hi, fhi)
    width = hi - lo
    for it in range(_MAX_ITERS):
        if abs(fx) <= res_tol:
            return x
        if fx < 0.0:
            lo, flo = x, fx
        else:
            hi, fhi = x, fx
        if not hi > lo:
            break
        xn = math.inf
        if dfn is not None:
            d = dfn(x)
            if math.isfinite(d) and d > 0.0:
                xn = x - fx / d
        # force a bisection when Newton leaves the bracket or every fourth
        # iteration in which the bracket has not kept halving
        if not (lo < xn < hi) or (it % 4 == 3 and hi - lo > 0.5 * width):
            xn = 0.5 * (lo + hi)
        if it % 4 == 3:
            width = hi - lo
        if xn == x:
            break
        x = xn
        fx = value(x)
    if abs(fx) <= res_tol:
        return x
    raise ConvergenceError(f"residual {fx:.3e} above tolerance {res_tol:.3e} at x={x}")
